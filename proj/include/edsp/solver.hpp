#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edsp/bounds.hpp"
#include "edsp/eds.hpp"

namespace edsp {

/// B_m B_{m+d} ... B_{m+(k-1)d} = y^ell.
struct Solution {
    std::uint64_t m = 0, d = 0, k = 0;
    Integer y;
    unsigned ell = 2;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Orders by (k, d, m).
bool solution_less(const Solution& lhs, const Solution& rhs);

struct SearchStats {
    std::uint64_t candidates = 0;
    std::uint64_t pruned_coprime = 0;
    std::uint64_t pruned_w0 = 0;
    std::uint64_t pruned_valuation = 0;
    std::uint64_t products_tested = 0;
    /// Values of k for which the W0 rule was switched off because some rank
    /// of apparition r_p (p <= k) has no prime factor <= k + 1 + 2 sqrt(k).
    std::vector<std::uint64_t> w0_rule_disabled;
};

struct SearchReport {
    std::vector<Solution> solutions;
    BoundCertificate certificate;
    bool truncated = false;
    std::string truncation;  // why, when truncated
    bool conditional = false;  // the power set is not asserted complete
    bool normalized = false;   // terms were divided by B_1
    PowerSet::Provenance provenance = PowerSet::Provenance::asserted_complete;
    std::optional<std::uint64_t> max_index;
    SearchStats stats;
};

struct SolverOptions {
    /// Candidates allowed in the k > 48 regime before the search truncates.
    std::uint64_t budget = 1'000'000;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Restrict the search to blocks with m + (k - 1) d <= max_index.
    std::optional<std::uint64_t> max_index;
    /// Ranks of apparition are precomputed for primes up to this bound and
    /// feed the valuation pre-check.
    std::uint64_t rank_prime_limit = 100;
    std::uint64_t horizon = default_horizon;
};

enum class PruneVerdict { reject, pass };

/// Rejects when a term coprime to all others has its index outside P_ell(B).
PruneVerdict prune_coprime_term(std::uint64_t m, std::uint64_t d, std::uint64_t k, const PowerSet& ps);

/// Rejects when some i in W0 has x_i outside P_ell(B), or when w0 > N_ell.
PruneVerdict prune_w0(const PrimeTable& table, std::uint64_t m, std::uint64_t d, std::uint64_t k,
                      const PowerSet& ps);

/// Necessary condition from ranks of apparition only: for every known,
/// certified rank the summed valuation of the block must be divisible by ell.
/// Returns the first prime that fails, if any.
std::optional<std::uint64_t> valuation_obstruction(std::span<const RankRecord> ranks, std::uint64_t m,
                                                   std::uint64_t d, std::uint64_t k, unsigned ell);

/// y with prod B_{m+id} = y^ell, or nothing. Runs the valuation pre-check on
/// the ranks already known to seq before computing any term.
std::optional<Integer> product_is_power(const EdsSequence& seq, std::uint64_t m, std::uint64_t d,
                                        std::uint64_t k, unsigned ell);

/// All solutions inside the certified search box.
SearchReport solve(const EdsSequence& seq, const PowerSet& ps, const PrimeTable& table,
                   const SolverOptions& options = {});

}  // namespace edsp
