#include "edsp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

#include "edsp/apblocks.hpp"
#include "edsp/errors.hpp"

namespace edsp {

bool solution_less(const Solution& lhs, const Solution& rhs) {
    return std::tie(lhs.k, lhs.d, lhs.m) < std::tie(rhs.k, rhs.d, rhs.m);
}

PruneVerdict prune_coprime_term(std::uint64_t m, std::uint64_t d, std::uint64_t k, const PowerSet& ps) {
    // gcd(B_a, B_b) = B_gcd(a,b) and B_1 = 1: an isolated index carries an
    // ell-th power by itself.
    for (std::size_t i : coprime_isolated_indices(m, d, k))
        if (!ps.contains(m + i * d))
            return PruneVerdict::reject;
    return PruneVerdict::pass;
}

PruneVerdict prune_w0(const PrimeTable& table, std::uint64_t m, std::uint64_t d, std::uint64_t k,
                      const PowerSet& ps) {
    const BlockAnalysis blk = analyze(table, m, d, k);
    if (blk.w0.size() > ps.n())
        return PruneVerdict::reject;
    for (std::size_t i : blk.w0)
        if (!ps.contains(blk.splits[i].x))
            return PruneVerdict::reject;
    return PruneVerdict::pass;
}

std::optional<std::uint64_t> valuation_obstruction(std::span<const RankRecord> ranks, std::uint64_t m,
                                                   std::uint64_t d, std::uint64_t k, unsigned ell) {
    const std::uint64_t top = m + (k - 1) * d;
    for (const RankRecord& r : ranks) {
        if (r.rank > top || !valuation_formula_certified(r))
            continue;
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < k; ++i) {
            const std::uint64_t n = m + i * d;
            if (n % r.rank == 0)
                total += valuation(r.p, n / r.rank) + r.base_valuation;
        }
        if (total % ell != 0)
            return r.p;
    }
    return std::nullopt;
}

namespace {

enum class ProductOutcome { valuation_reject, not_power, power };

ProductOutcome test_product(const EdsSequence& seq, std::span<const RankRecord> ranks, std::uint64_t m,
                            std::uint64_t d, std::uint64_t k, unsigned ell, Integer& y) {
    if (valuation_obstruction(ranks, m, d, k, ell))
        return ProductOutcome::valuation_reject;
    Integer product = 1;
    for (std::uint64_t i = 0; i < k; ++i)
        product *= seq.b(m + i * d);
    RootResult root = iroot(product, ell);
    if (!root.exact)
        return ProductOutcome::not_power;
    y = std::move(root.root);
    return ProductOutcome::power;
}

}  // namespace

std::optional<Integer> product_is_power(const EdsSequence& seq, std::uint64_t m, std::uint64_t d,
                                        std::uint64_t k, unsigned ell) {
    if (k < 2 || m == 0 || d == 0 || std::gcd(m, d) != 1)
        throw InvalidBlockError("product_is_power needs gcd(m, d) = 1 and k >= 2");
    const auto ranks = seq.known_ranks();
    Integer y;
    if (test_product(seq, ranks, m, d, k, ell, y) == ProductOutcome::power)
        return y;
    return std::nullopt;
}

namespace {

struct WorkUnit {
    std::uint64_t k;
    std::uint64_t d;
    std::uint64_t m_max;  // m in [1, m_max]
};

struct UnitResult {
    std::vector<Solution> solutions;
    SearchStats stats;
};

class Search {
  public:
    Search(const EdsSequence& seq, const PowerSet& ps, const PrimeTable& table, const SolverOptions& opt)
        : seq_(seq), ps_(ps), table_(table), opt_(opt) {}

    SearchReport run();

  private:
    void prepare_ranks();
    bool w0_rule_sound(std::uint64_t k) const;
    void examine(std::uint64_t m, std::uint64_t d, std::uint64_t k, UnitResult& out) const;
    void run_units(const std::vector<WorkUnit>& units, std::vector<UnitResult>& results) const;

    const EdsSequence& seq_;
    const PowerSet& ps_;
    const PrimeTable& table_;
    const SolverOptions& opt_;
    std::vector<RankRecord> ranks_;
    std::vector<bool> w0_sound_;  // indexed by k
};

void Search::prepare_ranks() {
    for (std::uint64_t p : table_.primes()) {
        if (p > opt_.rank_prime_limit)
            break;
        // Bad primes may exceed the Hasse window, so look a little further.
        seq_.find_rank(p, 2 * hasse_window(p));
    }
    ranks_ = seq_.known_ranks();
}

bool Search::w0_rule_sound(std::uint64_t k) const {
    // For i in W0 every prime factor of x_i exceeds k'. If each r_p (p <= k)
    // has a prime factor <= k', then r_p does not divide x_i, p does not
    // divide B_{x_i}, and B_{x_i} must itself be an ell-th power.
    const std::uint64_t kp = k_prime_floor(k);
    for (std::uint64_t p : table_.primes()) {
        if (p > k)
            break;
        auto rec = seq_.find_rank(p, 2 * hasse_window(p));
        if (!rec || rec->rank < 2 || smallest_prime_factor(table_, rec->rank) > kp)
            return false;
    }
    return true;
}

void Search::examine(std::uint64_t m, std::uint64_t d, std::uint64_t k, UnitResult& out) const {
    ++out.stats.candidates;
    if (prune_coprime_term(m, d, k, ps_) == PruneVerdict::reject) {
        ++out.stats.pruned_coprime;
        return;
    }
    if (w0_sound_[k] && prune_w0(table_, m, d, k, ps_) == PruneVerdict::reject) {
        ++out.stats.pruned_w0;
        return;
    }
    Integer y;
    switch (test_product(seq_, ranks_, m, d, k, ps_.ell, y)) {
    case ProductOutcome::valuation_reject:
        ++out.stats.pruned_valuation;
        return;
    case ProductOutcome::not_power:
        ++out.stats.products_tested;
        return;
    case ProductOutcome::power:
        ++out.stats.products_tested;
        out.solutions.push_back({m, d, k, std::move(y), ps_.ell});
        return;
    }
}

void Search::run_units(const std::vector<WorkUnit>& units, std::vector<UnitResult>& results) const {
    results.assign(units.size(), {});
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t u = next++; u < units.size(); u = next++) {
            const WorkUnit& w = units[u];
            for (std::uint64_t m = 1; m <= w.m_max; ++m) {
                if (std::gcd(m, w.d) != 1)
                    continue;
                if (opt_.max_index && m + (w.k - 1) * w.d > *opt_.max_index)
                    break;
                examine(m, w.d, w.k, results[u]);
            }
        }
    };
    unsigned threads = opt_.threads ? opt_.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, units.size())));
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
}

void merge(SearchStats& into, const SearchStats& from) {
    into.candidates += from.candidates;
    into.pruned_coprime += from.pruned_coprime;
    into.pruned_w0 += from.pruned_w0;
    into.pruned_valuation += from.pruned_valuation;
    into.products_tested += from.products_tested;
}

SearchReport Search::run() {
    SearchReport report;
    report.certificate = k_max(table_, ps_, opt_.horizon);
    report.conditional = !ps_.complete();
    report.normalized = seq_.normalized();
    report.provenance = ps_.provenance;
    report.max_index = opt_.max_index;
    const BoundCertificate& cert = report.certificate;

    prepare_ranks();
    w0_sound_.assign(cert.k_max + 1, false);
    for (std::uint64_t k = 2; k <= cert.k_max; ++k) {
        w0_sound_[k] = w0_rule_sound(k);
        if (!w0_sound_[k])
            report.stats.w0_rule_disabled.push_back(k);
    }

    // Certified box for k <= 48: m + d <= c2(k) M_ell.
    std::vector<WorkUnit> units;
    for (std::uint64_t k = 2; k <= std::min<std::uint64_t>(48, cert.k_max); ++k) {
        const std::uint64_t md = cert.md_bound_per_k.at(k).get_ui();
        for (std::uint64_t d = 1; d + 1 <= md; ++d)
            units.push_back({k, d, md - d});
    }
    std::vector<UnitResult> results;
    run_units(units, results);
    for (auto& r : results) {
        merge(report.stats, r.stats);
        for (auto& s : r.solutions)
            report.solutions.push_back(std::move(s));
    }

    // k > 48: the theoretical box is enormous, so it is walked under budget.
    std::uint64_t spent = 0;
    UnitResult large;
    for (std::uint64_t k = 49; k <= cert.k_max && !report.truncated; ++k) {
        // d = 1, m <= k: m + k - 1 < d1_small_m_bound.
        for (std::uint64_t m = 1; m <= k && m + k - 1 < cert.d1_small_m_bound; ++m) {
            if (opt_.max_index && m + k - 1 > *opt_.max_index)
                break;
            if (spent >= opt_.budget) {
                report.truncated = true;
                report.truncation = "budget of " + std::to_string(opt_.budget) +
                                    " candidates exhausted at k = " + std::to_string(k) + ", d = 1, m = " +
                                    std::to_string(m);
                break;
            }
            examine(m, 1, k, large);
            ++spent;
        }
        const Integer& md = cert.md_bound_per_k.at(k);
        for (Integer s = 2; s <= md && !report.truncated; ++s) {
            const std::uint64_t sum = s.get_ui();
            for (std::uint64_t d = 1; d < sum; ++d) {
                const std::uint64_t m = sum - d;
                if (d == 1 && m <= k)
                    continue;
                if (std::gcd(m, d) != 1)
                    continue;
                if (opt_.max_index && m + (k - 1) * d > *opt_.max_index)
                    continue;
                if (spent >= opt_.budget) {
                    report.truncated = true;
                    report.truncation = "budget of " + std::to_string(opt_.budget) +
                                        " candidates exhausted at k = " + std::to_string(k) +
                                        ", m + d = " + std::to_string(sum) + " (box for this k: m + d <= " +
                                        md.get_str() + ")";
                    break;
                }
                examine(m, d, k, large);
                ++spent;
            }
            if (opt_.max_index && s > *opt_.max_index)
                break;
        }
    }
    merge(report.stats, large.stats);
    for (auto& s : large.solutions)
        report.solutions.push_back(std::move(s));

    if (!cert.unexcluded.empty() && cert.unexcluded.back() == cert.horizon && !report.truncated) {
        report.truncated = true;
        report.truncation = "k beyond the verification horizon " + std::to_string(cert.horizon) +
                            " is not excluded";
    }

    std::sort(report.solutions.begin(), report.solutions.end(), solution_less);
    return report;
}

}  // namespace

SearchReport solve(const EdsSequence& seq, const PowerSet& ps, const PrimeTable& table,
                   const SolverOptions& options) {
    if (ps.indices.empty() || !ps.contains(1))
        throw PreconditionError("power set must contain 1");
    return Search(seq, ps, table, options).run();
}

}  // namespace edsp
