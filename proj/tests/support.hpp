#pragma once

// Fixtures and independent oracles shared by the test binaries. Nothing here
// calls the sieve or the pruning code it is used to check.

#include <cstdint>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "edsp/curve.hpp"
#include "edsp/eds.hpp"

namespace edsp::testing {

// y^2 + xy = x^3 + x^2 - 7x + 5 and P = (2, -3).
inline Curve example_curve() { return Curve(1, 1, 0, -7, 5); }
inline Point example_point() { return Point(2, -3); }

inline const EdsSequence& example_sequence() {
    static const EdsSequence seq(example_curve(), example_point());
    return seq;
}

inline const std::set<Index> example_p7{1, 2, 3, 4, 7, 12};
inline const std::set<Index> example_p{1, 2, 3, 4, 7};

// B_1 .. B_24 of the example, computed independently with Python's
// fractions.Fraction by repeated chord-tangent addition.
inline const std::vector<const char*> example_b_1_to_24{
    "1",     "1",      "1",      "1",      "3",       "2",        "1",        "7",
    "19",    "15",     "59",     "128",    "221",     "223",      "2763",     "5159",
    "13721", "50654",  "310181", "327615", "2174201", "15432689", "80440361", "193136384"};

inline bool naive_is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

inline std::uint64_t naive_pi(std::uint64_t x) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        c += naive_is_prime(n);
    return c;
}

inline std::uint64_t naive_pi_d(std::uint64_t x, std::uint64_t d) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        c += naive_is_prime(n) && d % n != 0;
    return c;
}

struct Triple {
    std::uint64_t m, d, k;
    Integer y;
    friend bool operator<(const Triple& a, const Triple& b) {
        return std::tie(a.k, a.d, a.m) < std::tie(b.k, b.d, b.m);
    }
};

// Every (m, d, k) with gcd(m, d) = 1, k >= 2 and m + (k-1)d <= top whose
// product of terms is an exact ell-th power. No pruning of any kind.
inline std::set<Triple> brute_force_solutions(const std::vector<Integer>& b, std::uint64_t top, unsigned ell) {
    std::set<Triple> out;
    for (std::uint64_t d = 1; d < top; ++d)
        for (std::uint64_t m = 1; m + d <= top; ++m) {
            if (std::gcd(m, d) != 1)
                continue;
            Integer product = b[m];
            for (std::uint64_t k = 2; m + (k - 1) * d <= top; ++k) {
                product *= b[m + (k - 1) * d];
                Integer root;
                if (mpz_root(root.get_mpz_t(), product.get_mpz_t(), ell))
                    out.insert({m, d, k, root});
            }
        }
    return out;
}

}  // namespace edsp::testing
