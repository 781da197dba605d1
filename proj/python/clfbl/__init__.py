"""Closed-loop finite-blocklength reliability: UL/DL blocklength allocation
under a frame-time and UL energy budget."""

from ._clfbl import *  # noqa: F401,F403
from ._clfbl import __doc__  # noqa: F401

__version__ = "0.1.0"
