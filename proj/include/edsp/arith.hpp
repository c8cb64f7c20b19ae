#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace edsp {

using Integer = mpz_class;
using Rational = mpq_class;
using Index = std::uint64_t;

/// Exponent of the prime p in z. Throws UndefinedInputError for z == 0.
unsigned valuation(std::uint64_t p, const Integer& z);
unsigned valuation(std::uint64_t p, std::uint64_t z);

struct RootResult {
    Integer root;
    bool exact = false;
};

/// floor(z^(1/ell)) together with whether it is exact.
RootResult iroot(const Integer& z, unsigned ell);

/// Sieve of Eratosthenes up to a fixed limit with O(1) prime counting.
///
/// The table is immutable once built. Use grown_to() to obtain a larger one;
/// existing tables can keep being shared read-only.
class PrimeTable {
  public:
    static constexpr std::uint64_t default_limit = 1'000'000;

    explicit PrimeTable(std::uint64_t limit = default_limit);

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }

    /// Throws CapacityError when n exceeds the limit.
    bool is_prime(std::uint64_t n) const;

    /// Number of primes <= x. Throws CapacityError when floor(x) exceeds the limit.
    std::uint64_t pi(std::uint64_t x) const;
    std::uint64_t pi(double x) const;

    /// Number of primes p <= x with p not dividing d.
    std::uint64_t pi_d(std::uint64_t x, std::uint64_t d) const;
    std::uint64_t pi_d(double x, std::uint64_t d) const;

    /// Primality for n beyond the limit, by trial division with the sieved
    /// primes. Requires limit() >= sqrt(n).
    bool is_prime_trial(std::uint64_t n) const;

    /// A table whose limit is at least n (this table if it already covers n).
    PrimeTable grown_to(std::uint64_t n) const;

  private:
    void require(std::uint64_t x) const;

    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint32_t> count_;  // count_[n] = pi(n)
};

/// Rigorous check of x/log x < pi(x) < (x/log x)(1 + 3/(2 log x)).
///
/// The logarithmic sides are evaluated with outward directed rounding, so a
/// true result cannot be an artefact of rounding. Throws OutOfDomainError for
/// x < 17.
bool check_rosser_schoenfeld(const PrimeTable& table, double x);

/// Smallest prime factor of n >= 2 (trial division with the table).
std::uint64_t smallest_prime_factor(const PrimeTable& table, std::uint64_t n);

}  // namespace edsp
