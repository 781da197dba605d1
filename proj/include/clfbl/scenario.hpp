#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "clfbl/fbl_model.hpp"

namespace clfbl {

/// Malformed scenario text: unknown or duplicate keys, unparsable values,
/// missing required keys. The message names every offending key.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct RunParams {
    std::size_t case_study_points = 500;
    std::size_t sweep_points = 50;
    std::size_t scan_points = 200;
    std::optional<double> noise_min;  // sweep range, W; default p_DL * 1e-4
    std::optional<double> noise_max;  // default p_DL * (1 - 1e-3)
    std::uint64_t mc_trials = 1'000'000;
    std::uint64_t seed = 1;
    std::string output_dir = ".";
};

struct Scenario {
    SystemConfig config;
    RunParams run;
    bool has_noise = true;     // N given explicitly
    bool noise_sweep = false;  // N may be omitted: the run sweeps it
};

/// Flat `key = value` text, one pair per line, `#` starts a comment.
///
/// System keys: d f_s M B n_max T E p_DL N g_UL g_DL eps_max
/// Run keys:    case_study_points sweep_points scan_points noise_sweep
///              noise_min noise_max mc_trials seed output_dir
/// `preset = table1` (first line) seeds every system key from the preset.
///
/// Required unless a preset supplies them: E, N (or noise_sweep = true),
/// p_DL, d, n_max (or T), f_s, M. Defaults: B = 1, g_UL = g_DL = 1,
/// eps_max = 1e-5.
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::string& path);

/// Named preset; only "table1" exists. Includes the N = 3 mW case-study noise.
Scenario preset_scenario(std::string_view name);

/// Applies one key/value pair on top of a parsed scenario (CLI --set).
void apply_override(Scenario& sc, std::string_view key, std::string_view value);

/// Canonical key = value text of the system keys, 17 significant digits.
std::string canonical_text(const Scenario& sc);

/// FNV-1a 64 of canonical_text, as 16 hex digits.
std::string scenario_hash(const Scenario& sc);

}  // namespace clfbl
