#pragma once
// Smallest-prime-factor sieve plus the multiplicative tables built on it.

#include <cstdint>
#include <utility>
#include <vector>

#include "hyperlab/arith.hpp"

namespace hyperlab::analytics {

class SpfSieve {
 public:
  // Sieve of [0, limit]; refuses allocations beyond memory_cap_bytes.
  explicit SpfSieve(i64 limit, i64 memory_cap_bytes = (i64)1 << 31);

  i64 limit() const { return limit_; }
  bool is_prime(i64 n) const { return n >= 2 && spf_[(std::size_t)n] == (std::uint32_t)n; }
  i64 spf(i64 n) const { return (i64)spf_[(std::size_t)n]; }
  std::vector<i64> primes() const;
  // von Mangoldt: log p at prime powers p^k, 0 elsewhere (and at 0, 1).
  double mangoldt(i64 n) const;
  std::vector<std::pair<i64, int>> factorize(i64 n) const;

 private:
  i64 limit_;
  std::vector<std::uint32_t> spf_;
};

// r(n)/4 written multiplicatively: count of Gaussian-integer representations
// of n as a sum of two squares divided by the unit count. table[0] = 0.
std::vector<i64> r4_table(const SpfSieve& sv);

// Twisted divisor function N2(n) = sum_{d|n} chi8(d). table[0] = 0.
std::vector<i64> n2_table(const SpfSieve& sv);

// Odd-only bit sieve prime listing, independent of SpfSieve (used for the
// Euler-product cutoffs, where only the primes are needed).
std::vector<i64> primes_up_to(i64 limit);

}  // namespace hyperlab::analytics
