#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edsp/arith.hpp"
#include "edsp/eds.hpp"

namespace edsp {

/// Which lower bound for W(Delta) applies.
enum class Regime {
    d_one_m_large,   // d = 1 and m > k
    d_greater_one,   // d > 1
};

std::string to_string(Regime r);

/// Isolation constant: 1 for k <= 16, 2 for k <= 24, 3 for k <= 48.
/// Throws OutOfDomainError outside 2 <= k <= 48.
unsigned c2_for_k(std::uint64_t k);

/// Certified lower bound for W(Delta), k >= 31. The strict inequality of the
/// d > 1 case is returned as bound + 1.
std::int64_t w_delta_lower(const PrimeTable& table, std::uint64_t k, std::uint64_t d, Regime regime);

/// w_delta_lower minus the largest possible w2, pi_d(k') - pi_d(k).
std::int64_t w0_lower(const PrimeTable& table, std::uint64_t k, std::uint64_t d, Regime regime);

/// 3(k - 1)/4 - pi_d(k'), valid for k >= 48 when m + d >= (k - 1)^4.
Rational lemma6_lower(const PrimeTable& table, std::uint64_t k, std::uint64_t d);

/// 3(k - 1)/4 - pi_d(k') - pi_d(k) > 1, in exact rationals.
bool neweq_holds(const PrimeTable& table, std::uint64_t k, std::uint64_t d);

/// One d-regime of the k >= 49 exclusion scan.
struct ExclusionScan {
    Regime regime = Regime::d_one_m_large;
    std::uint64_t d = 1;      // representative d
    std::uint64_t k_from = 49;
    std::uint64_t k_to = 49;
    std::int64_t min_w0_lower = 0;
    std::uint64_t argmin_k = 49;
};

struct Justification {
    std::string lemma;
    std::string statement;
    bool holds = false;
};

struct BoundCertificate {
    std::uint64_t k_max = 48;
    /// Bound on m + d for every k in [2, k_max].
    std::map<std::uint64_t, Integer> md_bound_per_k;
    /// d = 1, m <= k blocks need m + k - 1 < this.
    std::uint64_t d1_small_m_bound = 1;
    std::uint64_t horizon = 0;
    std::uint64_t ell = 2;
    std::uint64_t n_ell = 1;
    std::uint64_t m_ell = 1;
    std::vector<ExclusionScan> scans;
    /// k >= 49 within the horizon that no rule excluded.
    std::vector<std::uint64_t> unexcluded;
    std::vector<Justification> justification;
};

/// Least X such that every Y >= X has a prime q with 2Y/3 < q < Y and
/// q > M_ell. Scans Y up to horizon; throws CapacityError if the horizon is
/// too small for the tail argument.
std::uint64_t d1_small_m_bound(const PrimeTable& table, const PowerSet& ps, std::uint64_t horizon);

inline constexpr std::uint64_t default_horizon = 100'000;

/// Largest k not excluded, with the full certificate.
BoundCertificate k_max(const PrimeTable& table, const PowerSet& ps,
                       std::uint64_t horizon = default_horizon);

/// Recomputes every recorded quantity of the certificate with the given table.
/// Returns the descriptions of records that do not re-evaluate identically.
std::vector<std::string> recheck_certificate(const BoundCertificate& cert, const PrimeTable& table,
                                             const PowerSet& ps);

}  // namespace edsp
