#include "edsp/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "edsp/apblocks.hpp"
#include "edsp/errors.hpp"

namespace edsp {

std::string to_string(Regime r) {
    return r == Regime::d_one_m_large ? "d=1,m>k" : "d>1";
}

unsigned c2_for_k(std::uint64_t k) {
    if (k < 2 || k > 48)
        throw OutOfDomainError("c2 is only defined for 2 <= k <= 48, got " + std::to_string(k));
    if (k <= 16)
        return 1;
    if (k <= 24)
        return 2;
    return 3;
}

namespace {

void check_regime(std::uint64_t k, std::uint64_t d, Regime regime) {
    if (k < 31)
        throw OutOfDomainError("the W(Delta) lower bounds need k >= 31, got " + std::to_string(k));
    if (d == 0)
        throw PreconditionError("d must be positive");
    if ((regime == Regime::d_one_m_large) != (d == 1))
        throw PreconditionError("regime " + to_string(regime) + " does not match d = " +
                                std::to_string(d));
}

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// Smallest prime above floor(k'), a d > 1 for which pi_d(k') = pi(k').
std::uint64_t generic_d(const PrimeTable& table, std::uint64_t k) {
    std::uint64_t q = k_prime_floor(k) + 1;
    while (!table.is_prime(q))
        ++q;
    return q;
}

}  // namespace

std::int64_t w_delta_lower(const PrimeTable& table, std::uint64_t k, std::uint64_t d, Regime regime) {
    check_regime(k, d, regime);
    if (regime == Regime::d_one_m_large) {
        const std::int64_t pk = as_signed(table.pi(k));
        const std::int64_t first = (3 * pk) / 4 - 1;
        const std::int64_t second = as_signed(table.pi(2 * k)) - pk - 1;
        return std::min(first, second);
    }
    const std::int64_t rho = d == 2 ? 1 : 0;
    return as_signed(table.pi(2 * k)) - as_signed(table.pi_d(k, d)) - rho + 1;
}

std::int64_t w0_lower(const PrimeTable& table, std::uint64_t k, std::uint64_t d, Regime regime) {
    const std::int64_t wd = w_delta_lower(table, k, d, regime);
    const std::int64_t w2_max =
        as_signed(table.pi_d(k_prime_floor(k), d)) - as_signed(table.pi_d(k, d));
    return wd - w2_max;
}

Rational lemma6_lower(const PrimeTable& table, std::uint64_t k, std::uint64_t d) {
    if (k < 48)
        throw OutOfDomainError("the (k-1)^4 bound needs k >= 48, got " + std::to_string(k));
    Rational v(static_cast<long>(3 * (k - 1)), 4L);
    v.canonicalize();
    v -= static_cast<long>(table.pi_d(k_prime_floor(k), d));
    return v;
}

bool neweq_holds(const PrimeTable& table, std::uint64_t k, std::uint64_t d) {
    if (k < 2)
        throw OutOfDomainError("neweq needs k >= 2");
    Rational lhs(static_cast<long>(3 * (k - 1)), 4L);
    lhs.canonicalize();
    lhs -= static_cast<long>(table.pi_d(k_prime_floor(k), d));
    lhs -= static_cast<long>(table.pi_d(k, d));
    return lhs > 1;
}

std::uint64_t d1_small_m_bound(const PrimeTable& table, const PowerSet& ps, std::uint64_t horizon) {
    if (ps.indices.empty())
        throw PreconditionError("empty power set");
    const std::uint64_t m_ell = ps.m();
    // Beyond the horizon a prime in (x, 6x/5) for x = 2Y/3 >= 25 (Nagura)
    // lies in (2Y/3, Y) and exceeds M_ell once 2Y/3 >= M_ell.
    const std::uint64_t tail_start = std::max<std::uint64_t>(38, (3 * m_ell + 1) / 2);
    if (horizon < tail_start)
        throw CapacityError("horizon " + std::to_string(horizon) + " is below " +
                            std::to_string(tail_start) + " needed for the prime-interval argument");
    table.pi(horizon);
    std::uint64_t last_failure = 0;
    for (std::uint64_t y = 1; y <= horizon; ++y) {
        const std::uint64_t floor_lo = std::max<std::uint64_t>((2 * y) / 3, m_ell);
        const bool has_prime = y - 1 > floor_lo && table.pi(y - 1) > table.pi(floor_lo);
        if (!has_prime)
            last_failure = y;
    }
    return last_failure + 1;
}

namespace {

// Bound on m + d for 48 < k: either m + d < (k-1)^4, or two indices have
// a_i | (k-1)! and x_i <= M_ell, so m + d <= (k-1)! * M_ell.
Integer large_k_md_bound(std::uint64_t k, std::uint64_t m_ell) {
    Integer quartic(static_cast<unsigned long>(k - 1));
    mpz_pow_ui(quartic.get_mpz_t(), quartic.get_mpz_t(), 4);
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k - 1));
    fact *= static_cast<unsigned long>(m_ell);
    return quartic > fact ? quartic : fact;
}

std::string describe(const ExclusionScan& s) {
    std::ostringstream os;
    os << "w0_lower(k, " << (s.d == 0 ? std::string("generic d") : "d=" + std::to_string(s.d)) << ", "
       << to_string(s.regime) << ") >= " << s.min_w0_lower << " for k in [" << s.k_from << ", "
       << s.k_to << "], minimum at k = " << s.argmin_k;
    return os.str();
}

}  // namespace

BoundCertificate k_max(const PrimeTable& table, const PowerSet& ps, std::uint64_t horizon) {
    if (ps.indices.empty())
        throw PreconditionError("empty power set");
    if (horizon < 49)
        throw PreconditionError("horizon must be at least 49");
    table.pi(2 * horizon);
    table.pi(k_prime_floor(horizon) + 200);

    BoundCertificate cert;
    cert.horizon = horizon;
    cert.ell = ps.ell;
    cert.n_ell = ps.n();
    cert.m_ell = ps.m();

    // d = 2 and a d with no prime factor <= k' both attain the minimum over
    // d > 1: pi_d(k') + rho = pi(k') for them and is smaller for every other d.
    ExclusionScan d1{Regime::d_one_m_large, 1, 49, horizon, INT64_MAX, 49};
    ExclusionScan d2{Regime::d_greater_one, 2, 49, horizon, INT64_MAX, 49};
    ExclusionScan dg{Regime::d_greater_one, 0, 49, horizon, INT64_MAX, 49};

    auto note = [](ExclusionScan& s, std::int64_t v, std::uint64_t k) {
        if (v < s.min_w0_lower) {
            s.min_w0_lower = v;
            s.argmin_k = k;
        }
    };

    for (std::uint64_t k = 49; k <= horizon; ++k) {
        const std::int64_t v1 = w0_lower(table, k, 1, Regime::d_one_m_large);
        const std::int64_t v2 = w0_lower(table, k, 2, Regime::d_greater_one);
        const std::int64_t vg = w0_lower(table, k, generic_d(table, k), Regime::d_greater_one);
        note(d1, v1, k);
        note(d2, v2, k);
        note(dg, vg, k);
        const std::int64_t v = std::min({v1, v2, vg});
        // A positive w0 forces k < M_ell, and w0 never exceeds N_ell.
        const bool excluded = (v >= 1 && k >= cert.m_ell) || v > static_cast<std::int64_t>(cert.n_ell);
        if (!excluded)
            cert.unexcluded.push_back(k);
    }
    cert.scans = {d1, d2, dg};
    cert.k_max = cert.unexcluded.empty() ? 48 : cert.unexcluded.back();

    for (std::uint64_t k = 2; k <= 48; ++k)
        cert.md_bound_per_k[k] = static_cast<unsigned long>(c2_for_k(k) * cert.m_ell);
    for (std::uint64_t k = 49; k <= cert.k_max; ++k) {
        if (!neweq_holds(table, k, 1))
            throw Error("no m + d bound is available for k = " + std::to_string(k));
        cert.md_bound_per_k[k] = large_k_md_bound(k, cert.m_ell);
    }
    cert.d1_small_m_bound = d1_small_m_bound(table, ps, horizon);

    cert.justification.push_back(
        {"pillai-type isolation", "k <= 48: m + d <= c2(k) * M_ell with c2 in {1, 2, 3}", true});
    for (const auto& s : cert.scans) {
        cert.justification.push_back({"w0 lower bound", describe(s), s.min_w0_lower >= 1});
    }
    {
        std::ostringstream os;
        os << "d = 1, m <= k: a prime q > M_ell = " << cert.m_ell
           << " lies in (2Y/3, Y) for every Y = m + k - 1 >= " << cert.d1_small_m_bound
           << " (sieve to " << horizon << ", prime in (x, 6x/5] beyond)";
        cert.justification.push_back({"prime interval", os.str(), true});
    }
    if (cert.k_max > 48) {
        std::ostringstream os;
        os << "k in [49, " << cert.k_max
           << "]: m + d <= max((k-1)^4, (k-1)! * M_ell), since 3(k-1)/4 - pi_d(k') - pi_d(k) > 1";
        cert.justification.push_back({"large-k chain", os.str(), true});
    }
    if (!cert.unexcluded.empty() && cert.unexcluded.back() == horizon) {
        cert.justification.push_back(
            {"horizon", "k = horizon is not excluded; larger k are unchecked", false});
    }
    return cert;
}

std::vector<std::string> recheck_certificate(const BoundCertificate& cert, const PrimeTable& table,
                                             const PowerSet& ps) {
    std::vector<std::string> problems;
    const BoundCertificate fresh = k_max(table, ps, cert.horizon);
    if (fresh.k_max != cert.k_max)
        problems.push_back("k_max differs");
    if (fresh.md_bound_per_k != cert.md_bound_per_k)
        problems.push_back("m + d bounds differ");
    if (fresh.d1_small_m_bound != cert.d1_small_m_bound)
        problems.push_back("d = 1 small-m bound differs");
    if (fresh.unexcluded != cert.unexcluded)
        problems.push_back("unexcluded k differ");
    if (fresh.scans.size() != cert.scans.size())
        problems.push_back("scan count differs");
    for (std::size_t i = 0; i < std::min(fresh.scans.size(), cert.scans.size()); ++i)
        if (fresh.scans[i].min_w0_lower != cert.scans[i].min_w0_lower ||
            fresh.scans[i].argmin_k != cert.scans[i].argmin_k)
            problems.push_back("scan differs: " + describe(cert.scans[i]));
    for (const auto& j : cert.justification)
        if (!j.holds)
            problems.push_back("does not hold: " + j.lemma + ": " + j.statement);
    return problems;
}

}  // namespace edsp
