#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edsp/arith.hpp"

namespace edsp {

/// m + i d = a * x with a k-smooth and x k-rough (no prime factor <= k).
struct TermSplit {
    std::uint64_t a = 1;
    std::uint64_t x = 1;
};

/// Smooth/rough splitting and the index sets W1, W2, W0 of the block
/// m, m + d, ..., m + (k - 1) d.
///
/// W1: terms with a prime factor > k. W2: those with a prime factor in
/// (k, k + 1 + 2 sqrt(k)]. W0 = W1 \ W2.
struct BlockAnalysis {
    std::uint64_t m = 0, d = 0, k = 0;
    std::vector<TermSplit> splits;
    std::vector<std::size_t> w1, w2, w0;

    /// k + 1 + 2 sqrt(k) (for display; membership tests are exact).
    double k_prime() const;
    std::uint64_t value(std::size_t i) const { return m + i * d; }
};

/// p <= k + 1 + 2 sqrt(k), decided in integers.
bool within_k_prime(std::uint64_t p, std::uint64_t k);

/// floor(k + 1 + 2 sqrt(k)).
std::uint64_t k_prime_floor(std::uint64_t k);

TermSplit split_term(const PrimeTable& table, std::uint64_t m, std::uint64_t d, std::uint64_t k,
                     std::uint64_t i);

/// Throws InvalidBlockError unless gcd(m, d) = 1, m, d >= 1 and k >= 2.
BlockAnalysis analyze(const PrimeTable& table, std::uint64_t m, std::uint64_t d, std::uint64_t k);

/// Least i > 0 with gcd(m + i d, m + j d) <= g for every j != i.
std::optional<std::size_t> pillai_index(std::uint64_t m, std::uint64_t d, std::uint64_t k,
                                        std::uint64_t g);

/// Every i whose term is coprime to all the other terms of the block.
std::vector<std::size_t> coprime_isolated_indices(std::uint64_t m, std::uint64_t d,
                                                  std::uint64_t k);

/// W(Delta): the number of block terms with a prime factor > k.
std::size_t count_large_factor_terms(const PrimeTable& table, std::uint64_t m, std::uint64_t d,
                                     std::uint64_t k);

}  // namespace edsp
