#include "edsp/eds.hpp"

#include <mutex>

#include "edsp/errors.hpp"

namespace edsp {

Index hasse_window(std::uint64_t p) {
    // p + 1 + 2 sqrt(p) = p + 1 + sqrt(4p); the floor only needs isqrt(4p).
    Integer four_p(static_cast<unsigned long>(4 * p));
    Integer root = sqrt(four_p);
    return p + 1 + root.get_ui();
}

std::string to_string(PowerSet::Provenance p) {
    switch (p) {
    case PowerSet::Provenance::asserted_complete:
        return "asserted-complete";
    case PowerSet::Provenance::listed:
        return "listed";
    case PowerSet::Provenance::scanned:
        return "scanned";
    }
    return "unknown";
}

PowerSet PowerSet::from_list(unsigned ell, std::set<Index> indices, bool assume_complete) {
    if (ell < 2)
        throw ConfigError("ell must be at least 2");
    if (indices.contains(0))
        throw ConfigError("power-set indices must be positive");
    if (!indices.contains(1))
        throw ConfigError("power set must contain 1 (B_1 = 1 is an ell-th power)");
    PowerSet ps;
    ps.ell = ell;
    ps.indices = std::move(indices);
    ps.provenance = assume_complete ? Provenance::asserted_complete : Provenance::listed;
    return ps;
}

namespace {

bool is_small_prime(std::uint64_t p) {
    if (p < 2)
        return false;
    for (std::uint64_t q = 2; q <= p / q; ++q)
        if (p % q == 0)
            return false;
    return true;
}

std::uint64_t mod_p(const Integer& z, std::uint64_t p) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Group law on the reduction of an integral long Weierstrass model mod p < 2^32.
struct ReducedCurve {
    std::uint64_t p, a1, a2, a3, a4, a6;

    struct Pt {
        bool inf = true;
        std::uint64_t x = 0, y = 0;
    };

    std::uint64_t sub(std::uint64_t u, std::uint64_t v) const { return (u + p - v) % p; }
    std::uint64_t inv(std::uint64_t u) const { return pow_mod(u, p - 2, p); }

    Pt add(const Pt& s, const Pt& t) const {
        if (s.inf)
            return t;
        if (t.inf)
            return s;
        std::uint64_t slope;
        if (s.x == t.x) {
            const std::uint64_t denom = (2 * s.y + a1 * s.x + a3) % p;
            if (s.y != t.y || denom == 0)
                return {};
            const std::uint64_t num = sub((3 * (s.x * s.x % p) + 2 * a2 * s.x + a4) % p, a1 * s.y % p);
            slope = num * inv(denom) % p;
        } else {
            slope = sub(t.y, s.y) * inv(sub(t.x, s.x)) % p;
        }
        const std::uint64_t nu = sub(s.y, slope * s.x % p);
        const std::uint64_t x3 =
            sub(sub(sub((slope * slope + a1 * slope) % p, a2), s.x), t.x);
        const std::uint64_t y3 = sub(sub(0, (slope + a1) % p * x3 % p), (nu + a3) % p);
        return {false, x3, y3};
    }
};

}  // namespace

EdsSequence::EdsSequence(Curve curve, Point base) : curve_(std::move(curve)), base_(std::move(base)) {
    if (base_.is_infinity())
        throw TorsionPointError("base point is the point at infinity");
    if (!on_curve(curve_, base_))
        throw PreconditionError("point " + base_.to_string() + " is not on curve " + curve_.to_string());
    if (!assert_infinite_order(curve_, base_))
        throw TorsionPointError("point " + base_.to_string() + " has finite order");
    raw_b1_ = 1;
    raw_b1_ = make_term(1, base_).b;  // raw, since raw_b1_ == 1 here
}

EdsTerm EdsSequence::make_term(Index n, const Point& multiple) const {
    if (multiple.is_infinity())
        throw TorsionPointError("multiple " + std::to_string(n) + "P is the point at infinity");
    const Integer& den_x = multiple.x().get_den();
    EdsTerm t;
    t.n = n;
    if (!mpz_perfect_square_p(den_x.get_mpz_t()))
        throw Error("denominator of x(" + std::to_string(n) + "P) is not a perfect square");
    Integer raw = sqrt(den_x);
    if (multiple.y().get_den() != raw * raw * raw)
        throw Error("denominator of y(" + std::to_string(n) + "P) is not the cube of B_n");
    t.a = multiple.x().get_num();
    t.c = multiple.y().get_num();
    if (raw_b1_ != 1) {
        if (!mpz_divisible_p(raw.get_mpz_t(), raw_b1_.get_mpz_t()))
            throw Error("B_1 does not divide B_" + std::to_string(n));
        mpz_divexact(raw.get_mpz_t(), raw.get_mpz_t(), raw_b1_.get_mpz_t());
    }
    t.b = std::move(raw);
    return t;
}

Point EdsSequence::multiple(Index n) const {
    {
        std::shared_lock lock(mutex_);
        if (auto it = points_.find(n); it != points_.end())
            return it->second;
        if (n == 1)
            return base_;
        if (auto it = points_.find(n - 1); it != points_.end()) {
            Point prev = it->second;
            lock.unlock();
            return add(curve_, prev, base_);
        }
        if (n % 2 == 0) {
            if (auto it = points_.find(n / 2); it != points_.end()) {
                Point half = it->second;
                lock.unlock();
                return double_point(curve_, half);
            }
        }
    }
    return scalar_mul(curve_, static_cast<std::uint64_t>(n), base_);
}

const EdsTerm& EdsSequence::term(Index n) const {
    if (n == 0)
        throw PreconditionError("sequence indices start at 1");
    {
        std::shared_lock lock(mutex_);
        if (auto it = terms_.find(n); it != terms_.end())
            return it->second;
    }
    Point pt = multiple(n);
    EdsTerm t = make_term(n, pt);
    std::unique_lock lock(mutex_);
    points_.emplace(n, std::move(pt));
    return terms_.emplace(n, std::move(t)).first->second;
}

const Integer& EdsSequence::b(Index n) const {
    {
        std::shared_lock lock(mutex_);
        if (auto it = preloaded_.find(n); it != preloaded_.end())
            return it->second;
    }
    return term(n).b;
}

void EdsSequence::preload(Index n, Integer value) {
    if (n == 0)
        throw PreconditionError("sequence indices start at 1");
    std::unique_lock lock(mutex_);
    preloaded_.insert_or_assign(n, std::move(value));
}

std::map<Index, Integer> EdsSequence::known_values() const {
    std::shared_lock lock(mutex_);
    std::map<Index, Integer> out = preloaded_;
    for (const auto& [n, t] : terms_)
        out.emplace(n, t.b);
    return out;
}

std::vector<RankRecord> EdsSequence::known_ranks() const {
    std::shared_lock lock(mutex_);
    std::vector<RankRecord> out;
    out.reserve(ranks_.size());
    for (const auto& [p, rec] : ranks_)
        out.push_back(rec);
    return out;
}

bool EdsSequence::good_reduction(std::uint64_t p) const {
    if (!curve_.integral())
        return false;
    const Rational& disc = curve_.discriminant();
    Integer prime(static_cast<unsigned long>(p));
    if (mpz_divisible_p(disc.get_num_mpz_t(), prime.get_mpz_t()))
        return false;
    return !mpz_divisible_p(base_.x().get_den_mpz_t(), prime.get_mpz_t()) &&
           !mpz_divisible_p(base_.y().get_den_mpz_t(), prime.get_mpz_t());
}

std::optional<Index> EdsSequence::order_mod_p(std::uint64_t p, Index max_index) const {
    auto reduce = [p](const Rational& q) {
        const std::uint64_t num = mod_p(q.get_num(), p);
        const std::uint64_t den = mod_p(q.get_den(), p);
        return num * pow_mod(den, p - 2, p) % p;
    };
    const ReducedCurve rc{p,
                          reduce(curve_.a1()),
                          reduce(curve_.a2()),
                          reduce(curve_.a3()),
                          reduce(curve_.a4()),
                          reduce(curve_.a6())};
    const ReducedCurve::Pt base{false, reduce(base_.x()), reduce(base_.y())};
    ReducedCurve::Pt q = base;
    for (Index n = 1; n <= max_index; ++n) {
        if (q.inf)
            return n;
        q = rc.add(q, base);
    }
    return std::nullopt;
}

RankRecord EdsSequence::record_for(std::uint64_t p, Index rank) const {
    RankRecord rec{p, rank, valuation(p, b(rank))};
    if (rec.base_valuation == 0)
        throw Error("B_" + std::to_string(rank) + " is not divisible by " + std::to_string(p) +
                    " although " + std::to_string(rank) + "P reduces to O");
    std::unique_lock lock(mutex_);
    ranks_.emplace(p, rec);
    return rec;
}

std::optional<RankRecord> EdsSequence::scan_rank(std::uint64_t p, Index max_index) const {
    Integer prime(static_cast<unsigned long>(p));
    for (Index n = 1; n <= max_index; ++n)
        if (mpz_divisible_p(b(n).get_mpz_t(), prime.get_mpz_t()))
            return record_for(p, n);
    return std::nullopt;
}

std::optional<RankRecord> EdsSequence::find_rank(std::uint64_t p, Index max_index) const {
    if (!is_small_prime(p))
        throw PreconditionError(std::to_string(p) + " is not prime");
    {
        std::shared_lock lock(mutex_);
        if (auto it = ranks_.find(p); it != ranks_.end()) {
            if (it->second.rank <= max_index)
                return it->second;
            return std::nullopt;
        }
    }
    // Preloaded values are authoritative, so only use the fast path without them.
    bool have_preloaded;
    {
        std::shared_lock lock(mutex_);
        have_preloaded = !preloaded_.empty();
    }
    if (p < (1ULL << 31) && good_reduction(p) && !have_preloaded) {
        auto order = order_mod_p(p, max_index);
        if (!order)
            return std::nullopt;
        return record_for(p, *order);
    }
    return scan_rank(p, max_index);
}

RankRecord EdsSequence::rank_of_apparition(std::uint64_t p) const {
    const Index window = hasse_window(p);
    std::optional<RankRecord> rec;
    if (good_reduction(p))
        rec = find_rank(p, window);
    else
        rec = scan_rank(p, window);
    if (!rec)
        throw RankBoundViolation("no B_n with n <= " + std::to_string(window) + " is divisible by " +
                                 std::to_string(p) + (good_reduction(p) ? "" : " (bad reduction)"));
    return *rec;
}

unsigned EdsSequence::term_valuation(std::uint64_t p, Index n) const {
    if (n == 0)
        throw PreconditionError("sequence indices start at 1");
    auto rec = find_rank(p, n);
    if (!rec || n % rec->rank != 0)
        return 0;
    if (valuation_formula_certified(*rec))
        return valuation(p, n / rec->rank) + rec->base_valuation;
    return valuation(p, b(n));
}

PowerSet EdsSequence::scan_powers(unsigned ell, Index bound) const {
    if (ell < 2 || bound < 1)
        throw PreconditionError("scan_powers needs ell >= 2 and bound >= 1");
    PowerSet ps;
    ps.ell = ell;
    ps.provenance = PowerSet::Provenance::scanned;
    ps.scan_bound = bound;
    for (Index n = 1; n <= bound; ++n)
        if (iroot(b(n), ell).exact)
            ps.indices.insert(n);
    return ps;
}

void validate_power_set(const EdsSequence& seq, const PowerSet& ps) {
    for (Index n : ps.indices)
        if (!iroot(seq.b(n), ps.ell).exact)
            throw ConfigError("B_" + std::to_string(n) + " is not a " + std::to_string(ps.ell) +
                              "-th power, so " + std::to_string(n) + " cannot be in the power set");
}

}  // namespace edsp
