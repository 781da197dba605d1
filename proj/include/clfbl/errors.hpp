#pragma once

#include <stdexcept>
#include <string>

namespace clfbl {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Zero SNR: the dispersion vanishes and the normal approximation is undefined.
class DegenerateChannelError : public DomainError {
public:
    explicit DegenerateChannelError(const std::string& what) : DomainError(what) {}
};

/// Blocklength shorter than the payload (n < d).
class LosslessCodingError : public DomainError {
public:
    explicit LosslessCodingError(const std::string& what) : DomainError(what) {}
};

/// Invalid SystemConfig; the message lists every violated constraint.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when numerical results contradict a structural property the model
/// guarantees (e.g. a derivative sign pattern impossible under convexity).
class ModelConsistencyError : public std::logic_error {
public:
    explicit ModelConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace clfbl
