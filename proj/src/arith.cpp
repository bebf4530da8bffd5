#include "hyperlab/arith.hpp"

#include <cmath>

namespace hyperlab {

i64 isqrt64(i64 n) {
  if (n < 0) throw std::domain_error("isqrt64: negative argument");
  if (n == 0) return 0;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (i128)r * r > n) --r;
  while ((i128)(r + 1) * (r + 1) <= n) ++r;
  return r;
}

int sign_a_plus_b_sqrt2(i128 a, i128 b) {
  if (a == 0 && b == 0) return 0;
  if (a >= 0 && b >= 0) return 1;
  if (a <= 0 && b <= 0) return -1;
  // Opposite signs: compare a^2 against 2 b^2.
  i128 a2 = a * a, b2 = 2 * b * b;
  if (a > 0) {
    if (a2 > b2) return 1;
    if (a2 < b2) return -1;
    return 0;
  }
  if (a2 < b2) return 1;
  if (a2 > b2) return -1;
  return 0;
}

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::optional<u64> sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (p == 2) return a;
  if (a == 0) return 0;
  if (powmod_u64(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod_u64(a, (p + 1) / 4, p);

  // Tonelli-Shanks for p = 1 mod 4.
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;

  u64 m = s;
  u64 c = powmod_u64(z, q, p);
  u64 t = powmod_u64(a, q, p);
  u64 r = powmod_u64(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod_u64(t2, t2, p);
      ++i;
      if (i == m) return std::nullopt;  // unreachable for prime p
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod_u64(b, b, p);
    m = i;
    c = mulmod_u64(b, b, p);
    t = mulmod_u64(t, c, p);
    r = mulmod_u64(r, b, p);
  }
  return r;
}

std::vector<std::pair<i64, int>> factor_trial(i64 n) {
  if (n < 1) throw std::domain_error("factor_trial: argument must be >= 1");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; (i128)p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace hyperlab
