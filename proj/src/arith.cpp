#include "edsp/arith.hpp"

#include <cmath>
#include <string>

#include <mpfr.h>

#include "edsp/errors.hpp"

namespace edsp {

unsigned valuation(std::uint64_t p, const Integer& z) {
    if (z == 0)
        throw UndefinedInputError("valuation of zero is undefined");
    if (p < 2)
        throw UndefinedInputError("valuation requires a prime, got " + std::to_string(p));
    Integer prime(static_cast<unsigned long>(p));
    Integer rest = abs(z);
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t()));
}

unsigned valuation(std::uint64_t p, std::uint64_t z) {
    if (z == 0)
        throw UndefinedInputError("valuation of zero is undefined");
    if (p < 2)
        throw UndefinedInputError("valuation requires a prime, got " + std::to_string(p));
    unsigned e = 0;
    while (z % p == 0) {
        z /= p;
        ++e;
    }
    return e;
}

RootResult iroot(const Integer& z, unsigned ell) {
    if (z < 1 || ell < 2)
        throw PreconditionError("iroot requires z >= 1 and ell >= 2");
    RootResult r;
    r.exact = mpz_root(r.root.get_mpz_t(), z.get_mpz_t(), ell) != 0;
    return r;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit), count_(limit + 1, 0) {
    std::vector<bool> composite(limit + 1, false);
    std::uint32_t running = 0;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (!composite[n]) {
            primes_.push_back(n);
            ++running;
            for (std::uint64_t j = n * n; j <= limit; j += n)
                composite[j] = true;
        }
        count_[n] = running;
    }
}

void PrimeTable::require(std::uint64_t x) const {
    if (x > limit_)
        throw CapacityError("prime table limit " + std::to_string(limit_) + " does not cover " +
                            std::to_string(x));
}

bool PrimeTable::is_prime(std::uint64_t n) const {
    require(n);
    return n >= 2 && count_[n] != count_[n - 1];
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
    require(x);
    return count_[x];
}

std::uint64_t PrimeTable::pi(double x) const {
    if (!(x >= 0))
        throw UndefinedInputError("pi(x) needs x >= 0");
    return pi(static_cast<std::uint64_t>(std::floor(x)));
}

std::uint64_t PrimeTable::pi_d(std::uint64_t x, std::uint64_t d) const {
    if (d == 0)
        throw UndefinedInputError("pi_d needs d >= 1");
    std::uint64_t n = pi(x);
    // Subtract the distinct prime factors of d that are <= x.
    for (std::uint64_t p : primes_) {
        if (p > d / p)
            break;
        if (d % p != 0)
            continue;
        if (p <= x)
            --n;
        while (d % p == 0)
            d /= p;
    }
    if (d > 1) {
        if (!is_prime_trial(d))
            throw CapacityError("cannot factor d = " + std::to_string(d) + " with the prime table");
        if (d <= x)
            --n;
    }
    return n;
}

std::uint64_t PrimeTable::pi_d(double x, std::uint64_t d) const {
    if (!(x >= 0))
        throw UndefinedInputError("pi_d(x) needs x >= 0");
    return pi_d(static_cast<std::uint64_t>(std::floor(x)), d);
}

bool PrimeTable::is_prime_trial(std::uint64_t n) const {
    if (n <= limit_)
        return is_prime(n);
    for (std::uint64_t p : primes_) {
        if (p > n / p)
            return true;
        if (n % p == 0)
            return false;
    }
    // Every prime up to the limit was tried; that settles n <= limit^2.
    if (limit_ >= n / limit_)
        return true;
    throw CapacityError("prime table limit " + std::to_string(limit_) +
                        " is below sqrt(" + std::to_string(n) + ")");
}

PrimeTable PrimeTable::grown_to(std::uint64_t n) const {
    if (n <= limit_)
        return *this;
    return PrimeTable(std::max(n, 2 * limit_));
}

std::uint64_t smallest_prime_factor(const PrimeTable& table, std::uint64_t n) {
    if (n < 2)
        throw UndefinedInputError("smallest_prime_factor needs n >= 2");
    for (std::uint64_t p : table.primes()) {
        if (p > n / p)
            return n;
        if (n % p == 0)
            return p;
    }
    if (table.is_prime_trial(n))
        return n;
    throw CapacityError("cannot factor " + std::to_string(n));
}

namespace {

// Minimal RAII holder for an MPFR float.
class BigFloat {
  public:
    BigFloat() { mpfr_init2(v_, 128); }
    ~BigFloat() { mpfr_clear(v_); }
    BigFloat(const BigFloat&) = delete;
    BigFloat& operator=(const BigFloat&) = delete;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

}  // namespace

bool check_rosser_schoenfeld(const PrimeTable& table, double x) {
    if (!(x >= 17))
        throw OutOfDomainError("Rosser-Schoenfeld bounds need x >= 17");
    const auto count = table.pi(x);

    BigFloat xv, log_lo, log_hi, lower_side, q, t, upper_side;
    mpfr_set_d(xv.get(), x, MPFR_RNDN);  // exact, 128 bits hold any double
    mpfr_log(log_lo.get(), xv.get(), MPFR_RNDD);
    mpfr_log(log_hi.get(), xv.get(), MPFR_RNDU);

    // Upper estimate of x/log x.
    mpfr_div(lower_side.get(), xv.get(), log_lo.get(), MPFR_RNDU);
    if (mpfr_cmp_ui(lower_side.get(), count) >= 0)
        return false;

    // Lower estimate of (x/log x)(1 + 3/(2 log x)).
    mpfr_div(q.get(), xv.get(), log_hi.get(), MPFR_RNDD);
    mpfr_mul_ui(t.get(), log_hi.get(), 2, MPFR_RNDU);
    mpfr_ui_div(t.get(), 3, t.get(), MPFR_RNDD);
    mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDD);
    mpfr_mul(upper_side.get(), q.get(), t.get(), MPFR_RNDD);
    return mpfr_cmp_ui(upper_side.get(), count) > 0;
}

}  // namespace edsp
