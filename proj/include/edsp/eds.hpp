#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "edsp/arith.hpp"
#include "edsp/curve.hpp"

namespace edsp {

/// nP = (A_n / B_n^2, C_n / B_n^3) with gcd(A_n C_n, B_n) = 1 and B_n > 0.
///
/// When the owning sequence is normalized, `b` holds B_n / B_1 while `a` and
/// `c` stay the numerators of x(nP) and y(nP).
struct EdsTerm {
    Index n = 0;
    Integer a;
    Integer b;
    Integer c;
};

struct RankRecord {
    std::uint64_t p = 0;
    Index rank = 0;
    unsigned base_valuation = 0;  // nu_p(B_rank)
};

/// nu_p(B_{n r_p}) = nu_p(n) + nu_p(B_{r_p}) is guaranteed by the formal group
/// only for odd p, or for p = 2 when nu_2(B_{r_2}) >= 2.
inline bool valuation_formula_certified(const RankRecord& r) {
    return r.p != 2 || r.base_valuation >= 2;
}

/// floor(p + 1 + 2 sqrt(p)), the largest index the Hasse bound allows for r_p.
Index hasse_window(std::uint64_t p);

/// The indices n with B_n an exact ell-th power, plus N = |indices| and M = max.
struct PowerSet {
    enum class Provenance {
        asserted_complete,  // the caller vouches that no other index qualifies
        listed,             // given explicitly, completeness not claimed
        scanned,            // found by scanning 1..scan_bound
    };

    unsigned ell = 2;
    std::set<Index> indices;
    Provenance provenance = Provenance::listed;
    Index scan_bound = 0;

    /// Validates ell >= 2, 1 in indices, no zero index.
    static PowerSet from_list(unsigned ell, std::set<Index> indices, bool assume_complete);

    std::size_t n() const noexcept { return indices.size(); }
    Index m() const { return indices.empty() ? 0 : *indices.rbegin(); }
    bool contains(Index i) const { return indices.contains(i); }
    bool complete() const noexcept { return provenance == Provenance::asserted_complete; }
};

std::string to_string(PowerSet::Provenance p);

/// The elliptic divisibility sequence of a point of infinite order.
///
/// Terms are cached on first use and never recomputed. Lookups may run from
/// several threads at once; preload() must not race with lookups.
class EdsSequence {
  public:
    /// Throws PreconditionError if P is not on E, TorsionPointError if P has
    /// finite order. Normalizes by B_1 when B_1 != 1.
    EdsSequence(Curve curve, Point base);

    EdsSequence(const EdsSequence&) = delete;
    EdsSequence& operator=(const EdsSequence&) = delete;

    const Curve& curve() const noexcept { return curve_; }
    const Point& base_point() const noexcept { return base_; }
    bool normalized() const noexcept { return raw_b1_ != 1; }
    const Integer& raw_b1() const noexcept { return raw_b1_; }

    /// Full term computed from nP. Throws PreconditionError for n = 0.
    const EdsTerm& term(Index n) const;

    /// B_n (normalized). Values injected by preload() take precedence.
    const Integer& b(Index n) const;

    /// Least n <= hasse_window(p) with p | B_n. Throws RankBoundViolation when
    /// the window has no such n.
    RankRecord rank_of_apparition(std::uint64_t p) const;

    /// Least n <= max_index with p | B_n, with no assumption on where it lies.
    std::optional<RankRecord> find_rank(std::uint64_t p, Index max_index) const;

    /// Rational scan only (no reduction mod p). Used to cross-check find_rank.
    std::optional<RankRecord> scan_rank(std::uint64_t p, Index max_index) const;

    /// p does not divide the discriminant, the model is integral and P is p-integral.
    bool good_reduction(std::uint64_t p) const;

    /// nu_p(B_n), via the rank formula when it is certified for p and by
    /// direct factorization of B_n otherwise.
    unsigned term_valuation(std::uint64_t p, Index n) const;

    /// Every n <= bound with B_n an exact ell-th power.
    PowerSet scan_powers(unsigned ell, Index bound) const;

    /// Every rank of apparition found so far, ordered by prime.
    std::vector<RankRecord> known_ranks() const;

    /// Seeds B_n from an external cache.
    void preload(Index n, Integer value);
    std::map<Index, Integer> known_values() const;

  private:
    EdsTerm make_term(Index n, const Point& multiple) const;
    Point multiple(Index n) const;
    std::optional<Index> order_mod_p(std::uint64_t p, Index max_index) const;
    RankRecord record_for(std::uint64_t p, Index rank) const;

    Curve curve_;
    Point base_;
    Integer raw_b1_ = 1;

    mutable std::shared_mutex mutex_;
    mutable std::map<Index, EdsTerm> terms_;
    mutable std::map<Index, Point> points_;
    mutable std::map<Index, Integer> preloaded_;
    mutable std::map<std::uint64_t, RankRecord> ranks_;
};

/// Throws ConfigError naming the first index whose term is not an ell-th power.
void validate_power_set(const EdsSequence& seq, const PowerSet& ps);

}  // namespace edsp
