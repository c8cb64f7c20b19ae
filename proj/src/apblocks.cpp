#include "edsp/apblocks.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "edsp/errors.hpp"

namespace edsp {

namespace {

void require_block(std::uint64_t m, std::uint64_t d, std::uint64_t k) {
    if (m == 0 || d == 0 || k < 2)
        throw InvalidBlockError("block needs m, d >= 1 and k >= 2");
    if (std::gcd(m, d) != 1)
        throw InvalidBlockError("gcd(" + std::to_string(m) + ", " + std::to_string(d) + ") != 1");
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

}  // namespace

bool within_k_prime(std::uint64_t p, std::uint64_t k) {
    if (p <= k + 1)
        return true;
    const std::uint64_t excess = p - k - 1;
    return excess * excess <= 4 * k;
}

std::uint64_t k_prime_floor(std::uint64_t k) { return k + 1 + isqrt(4 * k); }

double BlockAnalysis::k_prime() const {
    return static_cast<double>(k) + 1.0 + 2.0 * std::sqrt(static_cast<double>(k));
}

TermSplit split_term(const PrimeTable& table, std::uint64_t m, std::uint64_t d, std::uint64_t k,
                     std::uint64_t i) {
    if (i >= k)
        throw PreconditionError("split_term needs 0 <= i < k");
    table.pi(k);  // capacity check
    TermSplit s{1, m + i * d};
    for (std::uint64_t p : table.primes()) {
        if (p > k)
            break;
        while (s.x % p == 0) {
            s.x /= p;
            s.a *= p;
        }
    }
    return s;
}

BlockAnalysis analyze(const PrimeTable& table, std::uint64_t m, std::uint64_t d, std::uint64_t k) {
    require_block(m, d, k);
    BlockAnalysis blk{m, d, k, {}, {}, {}, {}};
    blk.splits.reserve(k);
    const std::uint64_t top = k_prime_floor(k);
    table.pi(top);
    const auto primes = table.primes();
    for (std::uint64_t i = 0; i < k; ++i) {
        blk.splits.push_back(split_term(table, m, d, k, i));
        const std::uint64_t x = blk.splits.back().x;
        if (x == 1)
            continue;
        blk.w1.push_back(i);
        bool mid = false;
        for (std::uint64_t p : primes) {
            if (p <= k)
                continue;
            if (p > top)
                break;
            if (x % p == 0) {
                mid = true;
                break;
            }
        }
        (mid ? blk.w2 : blk.w0).push_back(i);
    }
    return blk;
}

std::optional<std::size_t> pillai_index(std::uint64_t m, std::uint64_t d, std::uint64_t k,
                                        std::uint64_t g) {
    require_block(m, d, k);
    for (std::uint64_t i = 1; i < k; ++i) {
        const std::uint64_t vi = m + i * d;
        bool ok = true;
        for (std::uint64_t j = 0; j < k && ok; ++j)
            ok = j == i || std::gcd(vi, m + j * d) <= g;
        if (ok)
            return i;
    }
    return std::nullopt;
}

std::vector<std::size_t> coprime_isolated_indices(std::uint64_t m, std::uint64_t d,
                                                  std::uint64_t k) {
    require_block(m, d, k);
    std::vector<std::size_t> out;
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t vi = m + i * d;
        bool ok = true;
        for (std::uint64_t j = 0; j < k && ok; ++j)
            ok = j == i || std::gcd(vi, m + j * d) == 1;
        if (ok)
            out.push_back(i);
    }
    return out;
}

std::size_t count_large_factor_terms(const PrimeTable& table, std::uint64_t m, std::uint64_t d,
                                     std::uint64_t k) {
    return analyze(table, m, d, k).w1.size();
}

}  // namespace edsp
