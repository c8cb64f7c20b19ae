#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edsp/arith.hpp"
#include "edsp/eds.hpp"

namespace edsp {

struct Violation {
    std::string identity;
    std::string detail;
};

struct VerifyOptions {
    Index max_n = 60;
    std::uint64_t max_p = 50;
    /// Rosser-Schoenfeld is checked for every integer in [17, rs_max]; 0 skips it.
    std::uint64_t rs_max = 100'000;
    bool lemma2 = true;
};

struct VerifyReport {
    std::map<std::string, std::uint64_t> checks;  // per identity
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    std::uint64_t total_checks() const;
    bool passed() const { return violations.empty(); }
    std::size_t violations_of(const std::string& identity) const;
};

namespace identity {
inline constexpr const char* denominator_shape = "denominator shape";
inline constexpr const char* cache_consistency = "cached term equals recomputed B_n";
inline constexpr const char* strong_divisibility = "strong divisibility gcd(B_m, B_n) = B_gcd(m,n)";
inline constexpr const char* divisibility = "divisibility m | n => B_m | B_n";
inline constexpr const char* valuation_formula = "valuation formula nu_p(B_n) = nu_p(n/r_p) + nu_p(B_r_p)";
inline constexpr const char* rank_bound = "rank bound r_p <= p + 1 + 2 sqrt(p)";
inline constexpr const char* quotient_gcd = "quotient gcd gcd(B_m, B_n/B_m) | n/m";
inline constexpr const char* rough_part_coprime = "rough-part term coprime to the rest of the block";
inline constexpr const char* rough_part_quotient = "gcd(B_x, B_(m+id)/B_x) divides a";
inline constexpr const char* rosser_schoenfeld = "Rosser-Schoenfeld bounds for pi(x)";
}  // namespace identity

/// Checks the divisibility identities of the sequence on indices <= max_n and
/// primes <= max_p, the block coprimality lemma on all blocks with indices
/// <= max_n, and the prime-counting bounds.
VerifyReport run_property_suite(const EdsSequence& seq, const PrimeTable& table,
                                const VerifyOptions& options = {});

}  // namespace edsp
