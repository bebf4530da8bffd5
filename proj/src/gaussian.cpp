#include "hyperlab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperlab/cache.hpp"

namespace hyperlab::gaussian {

GaussInt operator+(GaussInt u, GaussInt v) { return {u.re + v.re, u.im + v.im}; }
GaussInt operator-(GaussInt u, GaussInt v) { return {u.re - v.re, u.im - v.im}; }

GaussInt operator*(GaussInt u, GaussInt v) {
  i128 re = (i128)u.re * v.re - (i128)u.im * v.im;
  i128 im = (i128)u.re * v.im + (i128)u.im * v.re;
  i64 lo = std::numeric_limits<i64>::min(), hi = std::numeric_limits<i64>::max();
  if (re < lo || re > hi || im < lo || im > hi)
    throw std::overflow_error("GaussInt multiply overflow");
  return {(i64)re, (i64)im};
}

GaussInt operator-(GaussInt u) { return {-u.re, -u.im}; }
GaussInt conj(GaussInt z) { return {z.re, -z.im}; }

i64 norm(GaussInt z) {
  i128 n = (i128)z.re * z.re + (i128)z.im * z.im;
  if (n > std::numeric_limits<i64>::max()) throw std::overflow_error("GaussInt norm overflow");
  return (i64)n;
}

bool is_unit(GaussInt z) { return norm(z) == 1; }

bool is_primary(GaussInt z) {
  // z - 1 divisible by (1+i)^3 = -2+2i, i.e. both (re-1)-im and (re-1)+im = 0 mod 4.
  i64 wr = z.re - 1, wi = z.im;
  return (wr - wi) % 4 == 0 && (wr + wi) % 4 == 0;
}

std::pair<GaussInt, GaussInt> primary_associate(GaussInt z) {
  if (norm(z) == 0 || norm(z) % 2 == 0)
    throw std::domain_error("primary_associate: norm must be odd");
  static const GaussInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const GaussInt* found = nullptr;
  GaussInt assoc;
  for (const auto& u : units) {
    GaussInt w = u * z;
    if (is_primary(w)) {
      if (found) throw invariant_error("primary_associate: non-unique");
      found = &u;
      assoc = w;
    }
  }
  if (!found) throw invariant_error("primary_associate: none found");
  return {*found, assoc};
}

std::vector<GaussInt> reps_with_norm(i64 n) {
  if (n < 0) throw std::domain_error("reps_with_norm: negative norm");
  if (n == 0) return {GaussInt{0, 0}};
  std::vector<GaussInt> out;
  i64 amax = isqrt64(n);
  for (i64 a = 1; a <= amax; ++a) {
    i64 b2 = n - a * a;
    i64 b = isqrt64(b2);
    if (b * b != b2) continue;
    // orbit of (a,b) under unit multiplication, each orbit hit once via a>=1, b>=0
    out.push_back({a, b});
    out.push_back({-b, a});
    out.push_back({-a, -b});
    out.push_back({b, -a});
  }
  return out;
}

std::vector<GaussInt> primary_reps_with_norm(i64 n) {
  if (n < 1 || n % 2 == 0) throw std::domain_error("primary_reps_with_norm: n must be odd >= 1");
  std::vector<GaussInt> out;
  for (const auto& z : reps_with_norm(n))
    if (is_primary(z)) out.push_back(z);
  return out;
}

GaussInt solve_norm_prime(i64 p) {
  if (p < 5 || p % 4 != 1) throw std::domain_error("solve_norm_prime: need prime p = 1 mod 4");
  auto t = sqrt_mod_prime(p - 1, p);
  if (!t) throw std::domain_error("solve_norm_prime: p not prime");
  i64 r0 = p, r1 = (i64)*t;
  while ((i128)r1 * r1 > p) {
    i64 r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  i64 x = r1;
  i64 y2 = p - x * x;
  i64 y = isqrt64(y2);
  if (y * y != y2) throw invariant_error("solve_norm_prime: descent failed");
  GaussInt w = primary_associate({x, y}).second;
  if (w.im < 0) w = conj(w);  // conjugate of a primary element is primary
  if (w.im <= 0 || !is_primary(w) || norm(w) != p)
    throw invariant_error("solve_norm_prime: bad normalization");
  return w;
}

double prime_angle(i64 p) {
  GaussInt w = solve_norm_prime(p);
  return std::atan2((double)w.im, (double)w.re);
}

namespace {

// Exact division z / w when w | z, nullopt otherwise.
std::optional<GaussInt> try_div(GaussInt z, GaussInt w) {
  i64 n = norm(w);
  GaussInt d = z * conj(w);
  if (d.re % n || d.im % n) return std::nullopt;
  return GaussInt{d.re / n, d.im / n};
}

}  // namespace

GaussFactorization factor(GaussInt z) {
  if (z.re == 0 && z.im == 0) throw std::domain_error("factor: zero");
  GaussFactorization f;
  i64 n = norm(z);
  auto rational = factor_trial(n);
  const GaussInt one_plus_i{1, 1};
  for (auto [p, e] : rational) {
    if (p == 2) {
      f.two_exponent = e;
      for (int k = 0; k < e; ++k) {
        auto q = try_div(z, one_plus_i);
        if (!q) throw invariant_error("factor: 2-part division failed");
        z = *q;
      }
    } else if (p % 4 == 1) {
      GaussInt w = solve_norm_prime(p);
      int j = 0;
      while (true) {
        auto q = try_div(z, w);
        if (!q) break;
        z = *q;
        ++j;
      }
      int k = e - j;  // remaining factors carry the conjugate irreducible
      GaussInt wbar = primary_associate(conj(w)).second;
      for (int s = 0; s < k; ++s) {
        auto q = try_div(z, wbar);
        if (!q) throw invariant_error("factor: conjugate division failed");
        z = *q;
      }
      if (j) f.odd_part.push_back({w, j});
      if (k) f.odd_part.push_back({wbar, k});
    } else {
      if (e % 2) throw invariant_error("factor: odd exponent at inert prime");
      GaussInt w{-p, 0};  // primary irreducible above p = 3 mod 4
      for (int s = 0; s < e / 2; ++s) {
        auto q = try_div(z, w);
        if (!q) throw invariant_error("factor: inert division failed");
        z = *q;
      }
      f.odd_part.push_back({w, e / 2});
    }
  }
  if (!is_unit(z)) throw invariant_error("factor: non-unit residue");
  f.unit = z;
  return f;
}

GaussInt reassemble(const GaussFactorization& f) {
  GaussInt z = f.unit;
  for (int k = 0; k < f.two_exponent; ++k) z = z * GaussInt{1, 1};
  for (const auto& pp : f.odd_part)
    for (int k = 0; k < pp.exp; ++k) z = z * pp.irr;
  return z;
}

const PrimaryTable::Entry& PrimaryTable::get(i64 p) {
  auto it = tab_.find(p);
  if (it == tab_.end()) {
    Entry e;
    e.w = solve_norm_prime(p);
    e.theta = std::atan2((double)e.w.im, (double)e.w.re);
    it = tab_.emplace(p, e).first;
  }
  return it->second;
}

const GaussInt& PrimaryTable::primary_above(i64 p) { return get(p).w; }
double PrimaryTable::angle(i64 p) { return get(p).theta; }

double PrimaryTable::angle_prebuilt(i64 p) const {
  auto it = tab_.find(p);
  if (it == tab_.end()) throw invariant_error("PrimaryTable: missing prebuilt prime");
  return it->second.theta;
}

void PrimaryTable::prebuild(const std::vector<i64>& primes) {
  for (i64 p : primes)
    if (p % 4 == 1) get(p);
}

void PrimaryTable::prepare(const std::vector<i64>& primes, i64 limit) {
  std::size_t split = 0;
  for (i64 p : primes) split += (p % 4 == 1);
  auto dir = cache::env_cache_dir();
  if (dir && load_cache(*dir, limit) && size() == split) return;
  tab_.clear();
  prebuild(primes);
  if (dir) save_cache(*dir, limit);
}

bool PrimaryTable::load_cache(const std::string& dir, i64 limit) {
  auto rows = cache::load_triples(dir, "gauss_split_" + std::to_string(limit));
  if (!rows) return false;
  for (const auto& r : *rows) {
    Entry e;
    e.w = GaussInt{r[1], r[2]};
    if (norm(e.w) != r[0] || !is_primary(e.w) || e.w.im <= 0) return false;
    e.theta = std::atan2((double)e.w.im, (double)e.w.re);
    tab_[r[0]] = e;
  }
  return true;
}

bool PrimaryTable::save_cache(const std::string& dir, i64 limit) const {
  std::vector<std::array<i64, 3>> rows;
  rows.reserve(tab_.size());
  for (const auto& [p, e] : tab_) rows.push_back({p, e.w.re, e.w.im});
  std::sort(rows.begin(), rows.end());
  return cache::save_triples(dir, "gauss_split_" + std::to_string(limit), rows);
}

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// e^{i pi k/4} for the power-of-(1+i) contribution.
std::complex<double> eighth_root(i64 k) {
  k = ((k % 8) + 8) % 8;
  static const double s = std::sqrt(0.5);
  switch (k) {
    case 0: return {1, 0};
    case 1: return {s, s};
    case 2: return {0, 1};
    case 3: return {-s, s};
    case 4: return {-1, 0};
    case 5: return {-s, -s};
    case 6: return {0, -1};
    default: return {s, -s};
  }
}

std::complex<double> split_prime_sum(i64 m, int e, double theta) {
  std::complex<double> acc = 0;
  for (int j = 0; j <= e; ++j) {
    double arg = (double)(2 * j - e) * (double)m * theta;
    acc += std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return acc;
}

template <class AngleOf>
std::complex<double> weyl_WP_impl(i64 m, const std::vector<std::pair<i64, int>>& fac,
                                  AngleOf angle_of) {
  std::complex<double> acc = 1;
  for (auto [p, e] : fac) {
    if (p == 2) {
      acc *= eighth_root((i64)e * m);
    } else if (p % 4 == 3) {
      // The primary element above an inert prime is -p, whose angle is pi, so
      // even powers contribute a sign rather than 1 when m is odd.
      if (e % 2) return 0;
      if ((m * (i64)(e / 2)) % 2 != 0) acc = -acc;
    } else {
      acc *= split_prime_sum(m, e, angle_of(p));
    }
  }
  return acc;
}

}  // namespace

std::complex<double> weyl_WP(i64 m, i64 n) {
  if (n < 1) throw std::domain_error("weyl_WP: n must be >= 1");
  return weyl_WP_impl(m, factor_trial(n), [](i64 p) { return prime_angle(p); });
}

std::complex<double> weyl_WP(i64 m, const std::vector<std::pair<i64, int>>& fac,
                             const PrimaryTable& pt) {
  return weyl_WP_impl(m, fac, [&](i64 p) { return pt.angle_prebuilt(p); });
}

std::complex<double> weyl_W(i64 m, i64 n) {
  if (n < 0) throw std::domain_error("weyl_W: n must be >= 0");
  if (m % 4 != 0) return 0;
  if (n == 0) return m == 0 ? 0.25 : 0.0;
  // Each unit orbit contributes four equal phases when 4 | m, so the average
  // over all representations coincides with the sum over primary ones.
  return weyl_WP(m, n);
}

std::complex<double> weyl_W(i64 m, i64 n, const std::vector<std::pair<i64, int>>& fac,
                            const PrimaryTable& pt) {
  if (n < 0) throw std::domain_error("weyl_W: n must be >= 0");
  if (m % 4 != 0) return 0;
  if (n == 0) return m == 0 ? 0.25 : 0.0;
  return weyl_WP(m, fac, pt);
}

namespace {

GaussInt ipow(GaussInt z, int e) {
  GaussInt r{1, 0};
  while (e--) r = r * z;
  return r;
}

}  // namespace

std::vector<GaussInt> primary_reps_from_factorization(
    const std::vector<std::pair<i64, int>>& fac, PrimaryTable& pt) {
  std::vector<GaussInt> cur{GaussInt{1, 0}};
  for (auto [p, e] : fac) {
    if (p == 2) throw std::domain_error("primary_reps_from_factorization: even n");
    std::vector<GaussInt> pieces;
    if (p % 4 == 3) {
      if (e % 2) return {};
      pieces.push_back(ipow({-p, 0}, e / 2));
    } else {
      GaussInt w = pt.primary_above(p);
      GaussInt wbar = primary_associate(conj(w)).second;
      for (int j = 0; j <= e; ++j) pieces.push_back(ipow(w, j) * ipow(wbar, e - j));
    }
    std::vector<GaussInt> next;
    next.reserve(cur.size() * pieces.size());
    for (const auto& c : cur)
      for (const auto& q : pieces) next.push_back(c * q);
    cur = std::move(next);
  }
  return cur;
}

std::vector<GaussInt> reps_from_factorization(const std::vector<std::pair<i64, int>>& fac,
                                              PrimaryTable& pt) {
  std::vector<std::pair<i64, int>> odd;
  int l = 0;
  for (auto [p, e] : fac) {
    if (p == 2)
      l = e;
    else
      odd.emplace_back(p, e);
  }
  auto prim = primary_reps_from_factorization(odd, pt);
  if (prim.empty()) return {};
  GaussInt twopart = ipow({1, 1}, l);
  std::vector<GaussInt> out;
  out.reserve(prim.size() * 4);
  for (const auto& z : prim) {
    GaussInt w = twopart * z;
    out.push_back(w);
    out.push_back(GaussInt{0, 1} * w);
    out.push_back(-w);
    out.push_back(GaussInt{0, -1} * w);
  }
  return out;
}

}  // namespace hyperlab::gaussian
