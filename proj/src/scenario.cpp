#include "clfbl/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace clfbl {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
    double out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ScenarioError("key '" + std::string(key) + "': not a number: '" + std::string(v) + "'");
    return out;
}

std::uint64_t parse_count(std::string_view key, std::string_view v) {
    // Accept integral doubles such as 1e6.
    const double d = parse_double(key, v);
    if (!(d >= 0) || d != static_cast<double>(static_cast<std::uint64_t>(d)))
        throw ScenarioError("key '" + std::string(key) + "': not a non-negative integer: '" + std::string(v) + "'");
    return static_cast<std::uint64_t>(d);
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ScenarioError("key '" + std::string(key) + "': expected true or false, got '" + std::string(v) + "'");
}

using Setter = std::function<void(Scenario&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        auto num = [&t](const char* name, double SystemConfig::*field) {
            t[name] = [field](Scenario& s, std::string_view k, std::string_view v) {
                s.config.*field = parse_double(k, v);
            };
        };
        num("d", &SystemConfig::payload_bits);
        num("f_s", &SystemConfig::sample_rate);
        num("M", &SystemConfig::bits_per_symbol);
        num("B", &SystemConfig::bandwidth);
        num("n_max", &SystemConfig::max_blocklength);
        num("E", &SystemConfig::energy_budget);
        num("p_DL", &SystemConfig::dl_power);
        num("N", &SystemConfig::noise_power);
        num("g_UL", &SystemConfig::ul_gain);
        num("g_DL", &SystemConfig::dl_gain);
        num("eps_max", &SystemConfig::max_error);
        t["T"] = [](Scenario& s, std::string_view k, std::string_view v) { s.config.frame_length = parse_double(k, v); };

        t["case_study_points"] = [](Scenario& s, std::string_view k, std::string_view v) {
            s.run.case_study_points = parse_count(k, v);
        };
        t["sweep_points"] = [](Scenario& s, std::string_view k, std::string_view v) { s.run.sweep_points = parse_count(k, v); };
        t["scan_points"] = [](Scenario& s, std::string_view k, std::string_view v) { s.run.scan_points = parse_count(k, v); };
        t["noise_sweep"] = [](Scenario& s, std::string_view k, std::string_view v) { s.noise_sweep = parse_bool(k, v); };
        t["noise_min"] = [](Scenario& s, std::string_view k, std::string_view v) { s.run.noise_min = parse_double(k, v); };
        t["noise_max"] = [](Scenario& s, std::string_view k, std::string_view v) { s.run.noise_max = parse_double(k, v); };
        t["mc_trials"] = [](Scenario& s, std::string_view k, std::string_view v) { s.run.mc_trials = parse_count(k, v); };
        t["seed"] = [](Scenario& s, std::string_view k, std::string_view v) { s.run.seed = parse_count(k, v); };
        t["output_dir"] = [](Scenario& s, std::string_view, std::string_view v) { s.run.output_dir = std::string(v); };
        return t;
    }();
    return table;
}

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Reconciles n_max with T, then checks the config. An explicit T without an
// explicit n_max defines n_max; an explicit n_max, f_s or M without an
// explicit T drops a preset's T.
void finish(Scenario& sc, const std::set<std::string, std::less<>>& seen,
            const std::set<std::string, std::less<>>& explicit_keys) {
    const bool own_t = explicit_keys.count("T") > 0;
    const bool own_nmax = explicit_keys.count("n_max") > 0;
    if (!own_t && (own_nmax || explicit_keys.count("f_s") || explicit_keys.count("M")))
        sc.config.frame_length.reset();
    if (sc.config.frame_length && (own_t || !seen.count("n_max")) && !own_nmax)
        sc.config.max_blocklength = sc.config.sample_rate * sc.config.bits_per_symbol * *sc.config.frame_length;
    sc.has_noise = seen.count("N") > 0;
    sc.config.validate();
    if (sc.noise_sweep) {
        const double lo = sc.run.noise_min.value_or(sc.config.dl_power * 1e-4);
        const double hi = sc.run.noise_max.value_or(sc.config.dl_power * (1 - 1e-3));
        if (!(lo > 0 && hi > lo)) throw ScenarioError("noise sweep range needs 0 < noise_min < noise_max");
    }
}

const char* const kSystemKeys[] = {"d", "f_s", "M", "B", "n_max", "E", "p_DL", "N", "g_UL", "g_DL", "eps_max"};

}  // namespace

Scenario preset_scenario(std::string_view name) {
    if (name != "table1") throw ScenarioError("unknown preset '" + std::string(name) + "'");
    Scenario sc;
    SystemConfig& c = sc.config;
    c.sample_rate = 250e3;
    c.bits_per_symbol = 1;
    c.bandwidth = 1;
    c.max_blocklength = 2500;
    c.frame_length = 10e-3;
    c.ul_gain = 1;
    c.dl_gain = 1;
    c.dl_power = 10e-3;
    c.payload_bits = 8;
    c.energy_budget = 0.65e-6;
    c.noise_power = 3e-3;
    c.max_error = 1e-5;
    sc.has_noise = true;
    return sc;
}

Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    std::set<std::string, std::less<>> seen;
    std::set<std::string, std::less<>> explicit_keys;
    std::vector<std::string> errors;
    bool first_pair = true;

    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "preset") {
            if (!first_pair) {
                errors.push_back("line " + std::to_string(line_no) + ": preset must come first");
                continue;
            }
            try {
                sc = preset_scenario(value);
            } catch (const ScenarioError& e) {
                errors.emplace_back(e.what());
                continue;
            }
            for (const char* k : kSystemKeys) seen.insert(k);
            seen.insert("T");
            first_pair = false;
            continue;
        }
        first_pair = false;

        const auto it = setters().find(key);
        if (it == setters().end()) {
            errors.push_back("unknown key '" + std::string(key) + "'");
            continue;
        }
        if (!explicit_keys.insert(std::string(key)).second) {
            errors.push_back("duplicate key '" + std::string(key) + "'");
            continue;
        }
        try {
            it->second(sc, key, value);
        } catch (const ScenarioError& e) {
            errors.emplace_back(e.what());
        }
        seen.insert(std::string(key));
    }

    std::vector<std::string> missing;
    auto require = [&](const char* k) {
        if (!seen.count(k)) missing.emplace_back(k);
    };
    require("E");
    if (!seen.count("N") && !sc.noise_sweep) missing.emplace_back("N");
    require("p_DL");
    require("d");
    if (!seen.count("n_max") && !seen.count("T")) missing.emplace_back("n_max");
    require("f_s");
    require("M");
    if (!missing.empty()) {
        std::string msg = "missing required keys:";
        for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : " ") + missing[i];
        errors.push_back(msg);
    }
    if (!errors.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw ScenarioError(msg);
    }
    finish(sc, seen, explicit_keys);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot read scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

void apply_override(Scenario& sc, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ScenarioError("unknown key '" + std::string(key) + "'");
    it->second(sc, key, value);
    if (key == "N") sc.has_noise = true;
    if (key == "T") {
        sc.config.max_blocklength = sc.config.sample_rate * sc.config.bits_per_symbol * *sc.config.frame_length;
    } else if (key == "n_max" || key == "f_s" || key == "M") {
        // An explicit n_max (or a change to f_s / M) drops the frame-length cross-check.
        sc.config.frame_length.reset();
    }
    sc.config.validate();
}

std::string canonical_text(const Scenario& sc) {
    const SystemConfig& c = sc.config;
    std::ostringstream os;
    os << "d = " << format17(c.payload_bits) << '\n'
       << "f_s = " << format17(c.sample_rate) << '\n'
       << "M = " << format17(c.bits_per_symbol) << '\n'
       << "B = " << format17(c.bandwidth) << '\n'
       << "n_max = " << format17(c.max_blocklength) << '\n';
    if (c.frame_length) os << "T = " << format17(*c.frame_length) << '\n';
    os << "E = " << format17(c.energy_budget) << '\n'
       << "p_DL = " << format17(c.dl_power) << '\n';
    if (sc.has_noise) os << "N = " << format17(c.noise_power) << '\n';
    os << "g_UL = " << format17(c.ul_gain) << '\n'
       << "g_DL = " << format17(c.dl_gain) << '\n'
       << "eps_max = " << format17(c.max_error) << '\n';
    return os.str();
}

std::string scenario_hash(const Scenario& sc) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical_text(sc)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace clfbl
