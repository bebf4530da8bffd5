#include "hyperlab/sieve.hpp"

#include <cmath>
#include <limits>

namespace hyperlab::analytics {

SpfSieve::SpfSieve(i64 limit, i64 memory_cap_bytes) : limit_(limit) {
  if (limit < 1) throw std::domain_error("SpfSieve: limit must be >= 1");
  if (limit > (i64)std::numeric_limits<std::uint32_t>::max() - 2)
    throw std::domain_error("SpfSieve: limit exceeds 32-bit table range");
  i64 bytes = (limit + 1) * (i64)sizeof(std::uint32_t);
  if (bytes > memory_cap_bytes) throw cap_error("SpfSieve: table would exceed memory cap");
  spf_.assign((std::size_t)limit + 1, 0);
  for (i64 i = 2; i <= limit; ++i) {
    if (spf_[(std::size_t)i]) continue;
    for (i64 j = i; j <= limit; j += i)
      if (!spf_[(std::size_t)j]) spf_[(std::size_t)j] = (std::uint32_t)i;
  }
}

std::vector<i64> SpfSieve::primes() const {
  std::vector<i64> out;
  for (i64 n = 2; n <= limit_; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

double SpfSieve::mangoldt(i64 n) const {
  if (n < 2 || n > limit_) return 0.0;
  i64 p = spf(n);
  while (n % p == 0) n /= p;
  return n == 1 ? std::log((double)p) : 0.0;
}

std::vector<std::pair<i64, int>> SpfSieve::factorize(i64 n) const {
  if (n < 1 || n > limit_) throw std::domain_error("SpfSieve::factorize: out of range");
  std::vector<std::pair<i64, int>> out;
  while (n > 1) {
    i64 p = spf(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

namespace {

template <class PrimePowerValue>
std::vector<i64> multiplicative_table(const SpfSieve& sv, PrimePowerValue f) {
  i64 lim = sv.limit();
  std::vector<i64> t((std::size_t)lim + 1, 0);
  if (lim >= 1) t[1] = 1;
  for (i64 n = 2; n <= lim; ++n) {
    i64 p = sv.spf(n), m = n;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    t[(std::size_t)n] = t[(std::size_t)m] * f(p, e);
  }
  return t;
}

}  // namespace

std::vector<i64> r4_table(const SpfSieve& sv) {
  return multiplicative_table(sv, [](i64 p, int e) -> i64 {
    if (p == 2) return 1;
    if (p % 4 == 1) return e + 1;
    return e % 2 ? 0 : 1;
  });
}

std::vector<i64> n2_table(const SpfSieve& sv) {
  return multiplicative_table(sv, [](i64 p, int e) -> i64 {
    i64 r = p % 8;
    if (p == 2) return 1;
    if (r == 1 || r == 7) return e + 1;
    return e % 2 ? 0 : 1;
  });
}

std::vector<i64> primes_up_to(i64 limit) {
  std::vector<i64> out;
  if (limit < 2) return out;
  out.push_back(2);
  i64 half = (limit - 1) / 2;  // odd number 2k+1 <-> index k >= 1
  std::vector<bool> composite((std::size_t)half + 1, false);
  for (i64 k = 1; k <= half; ++k) {
    if (composite[(std::size_t)k]) continue;
    i64 p = 2 * k + 1;
    out.push_back(p);
    for (i128 j = (i128)2 * k * (k + 1); j <= half; j += p) composite[(std::size_t)j] = true;
  }
  return out;
}

}  // namespace hyperlab::analytics
