#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "edsp/curve.hpp"
#include "edsp/eds.hpp"

namespace edsp {

/// One job as read from a JSON config file. Big numbers travel as decimal
/// strings ("-7", "3/4").
struct JobConfig {
    std::array<std::string, 5> coefficients{"0", "0", "0", "0", "0"};  // a1 a2 a3 a4 a6
    std::string point_x, point_y;
    std::optional<unsigned> ell;
    std::optional<std::set<Index>> power_set;
    bool assume_complete = false;
    std::optional<Index> scan_bound;
    std::uint64_t budget = 1'000'000;
    std::uint64_t sieve_limit = PrimeTable::default_limit;
    std::uint64_t horizon = 100'000;
    std::optional<Index> max_index;
    std::string format = "text";
};

/// Throws ConfigError on malformed documents.
JobConfig parse_config(const nlohmann::json& doc);
JobConfig load_config(const std::filesystem::path& path);

/// "p" or "p/q" in lowest terms. Throws ConfigError.
Rational parse_rational(const std::string& text);

/// "1,2,3,4,7,12". Throws ConfigError.
std::set<Index> parse_index_list(const std::string& text);

Curve make_curve(const JobConfig& cfg);
Point make_point(const JobConfig& cfg);

/// The power set described by the config (explicit list or scan).
PowerSet make_power_set(const JobConfig& cfg, const EdsSequence& seq);

}  // namespace edsp
