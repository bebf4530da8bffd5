#include "hyperlab/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperlab/cache.hpp"

namespace hyperlab::quadratic {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kLogEps = std::log(1.0 + std::sqrt(2.0));
}  // namespace

i64 norm(QuadInt z) {
  i128 n = (i128)z.a * z.a - 2 * (i128)z.b * z.b;
  if (n > std::numeric_limits<i64>::max() || n < std::numeric_limits<i64>::min())
    throw std::overflow_error("QuadInt norm overflow");
  return (i64)n;
}

QuadInt sigma(QuadInt z) { return {z.a, -z.b}; }
QuadInt neg(QuadInt z) { return {-z.a, -z.b}; }

QuadInt mul(QuadInt u, QuadInt v) {
  i128 a = (i128)u.a * v.a + 2 * (i128)u.b * v.b;
  i128 b = (i128)u.a * v.b + (i128)u.b * v.a;
  i64 lo = std::numeric_limits<i64>::min(), hi = std::numeric_limits<i64>::max();
  if (a < lo || a > hi || b < lo || b > hi) throw std::overflow_error("QuadInt multiply overflow");
  return {(i64)a, (i64)b};
}

int sign_embed(QuadInt z) { return sign_a_plus_b_sqrt2(z.a, z.b); }

bool is_totally_positive(QuadInt z) {
  return sign_embed(z) > 0 && sign_embed(sigma(z)) > 0;
}

int chi8(i64 n) {
  i64 r = ((n % 8) + 8) % 8;
  if (r == 1 || r == 7) return 1;
  if (r == 3 || r == 5) return -1;
  return 0;
}

i64 N2(i64 n) {
  if (n < 1) throw std::domain_error("N2: n must be >= 1");
  i64 s = 0;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += chi8(d);
    if (d != n / d) s += chi8(n / d);
  }
  return s;
}

bool in_window(QuadInt z, i64 n) {
  if (n <= 0) throw std::domain_error("in_window: n must be positive");
  if (!is_totally_positive(z) || norm(z) != n)
    throw std::domain_error("in_window: need totally positive z of norm n");
  // Lower edge sqrt(n) <= z is b >= 0 (z >= sigma z). Upper edge z < eps^2 sqrt(n)
  // is z^2 < eps^4 n with eps^4 = 17 + 12 sqrt(2), decided exactly.
  if (z.b < 0) return false;
  i128 A = (i128)z.a * z.a + 2 * (i128)z.b * z.b - 17 * (i128)n;
  i128 B = 2 * (i128)z.a * z.b - 12 * (i128)n;
  return sign_a_plus_b_sqrt2(A, B) < 0;
}

QuadInt reduce_class(QuadInt z) {
  i64 n = norm(z);
  if (n <= 0 || !is_totally_positive(z))
    throw std::domain_error("reduce_class: need totally positive z with positive norm");
  while (true) {
    if (z.b < 0) {
      z = QuadInt{3 * z.a + 4 * z.b, 2 * z.a + 3 * z.b};  // z * eps^2
      continue;
    }
    i128 A = (i128)z.a * z.a + 2 * (i128)z.b * z.b - 17 * (i128)n;
    i128 B = 2 * (i128)z.a * z.b - 12 * (i128)n;
    if (sign_a_plus_b_sqrt2(A, B) < 0) return z;
    z = QuadInt{3 * z.a - 4 * z.b, 3 * z.b - 2 * z.a};  // z * eps^{-2}
  }
}

std::vector<QuadInt> class_reps_with_norm(i64 n) {
  if (n < 1) throw std::domain_error("class_reps_with_norm: n must be >= 1");
  std::vector<QuadInt> out;
  i64 ylim = 2 * isqrt64(n) + 3;
  for (i64 y = 0; y <= ylim; ++y) {
    i64 t = n + 2 * y * y;
    i64 x = isqrt64(t);
    if (x * x != t) continue;
    QuadInt z{x, y};
    i128 A = (i128)x * x + 2 * (i128)y * y - 17 * (i128)n;
    i128 B = 2 * (i128)x * y - 12 * (i128)n;
    if (sign_a_plus_b_sqrt2(A, B) < 0) out.push_back(z);
  }
  return out;
}

double lambda_angle(QuadInt z) {
  if (!is_totally_positive(z)) throw std::domain_error("lambda_angle: need totally positive z");
  double num = (double)z.a + (double)z.b * std::sqrt(2.0);
  double den = (double)z.a - (double)z.b * std::sqrt(2.0);
  double theta = (kPi / (4.0 * kLogEps)) * std::log(num / den);
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0) theta += 2.0 * kPi;
  return theta;
}

std::complex<double> lambda_phase(QuadInt z) {
  double t = lambda_angle(z);
  return {std::cos(t), std::sin(t)};
}

namespace {

// Round g/h to a nearest integral element (norm-Euclidean division).
QuadInt qdiv_round(QuadInt g, QuadInt h) {
  i128 n = (i128)h.a * h.a - 2 * (i128)h.b * h.b;
  i128 xa = (i128)g.a * h.a - 2 * (i128)g.b * h.b;
  i128 xb = (i128)g.b * h.a - (i128)g.a * h.b;
  auto rdiv = [](i128 num, i128 den) -> i64 {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 q = num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den));
    return (i64)q;
  };
  return QuadInt{rdiv(xa, n), rdiv(xb, n)};
}

}  // namespace

QuadInt solve_norm_prime(i64 q) {
  if (q == 2) return QuadInt{2, 1};
  if (q < 3 || chi8(q) != 1) throw std::domain_error("solve_norm_prime: need chi8(q) = 1 or q = 2");
  auto t = sqrt_mod_prime(2, q);
  if (!t) throw std::domain_error("solve_norm_prime: q not prime");
  QuadInt g{q, 0}, h{(i64)*t, 1};
  while (norm(h) != 0) {
    QuadInt dh = mul(qdiv_round(g, h), h);
    QuadInt r{g.a - dh.a, g.b - dh.b};
    g = h;
    h = r;
  }
  i64 ng = norm(g);
  if (ng != q && ng != -q) throw invariant_error("solve_norm_prime: descent failed");
  if (ng == -q) g = mul(g, QuadInt{1, 1});
  if (sign_embed(g) < 0) g = neg(g);
  g = reduce_class(g);
  if (norm(g) != q) throw invariant_error("solve_norm_prime: bad norm after adjust");
  return g;
}

const ClassTable::Entry& ClassTable::get(i64 q) {
  auto it = tab_.find(q);
  if (it == tab_.end()) {
    Entry e;
    e.r = solve_norm_prime(q);
    e.t = lambda_angle(e.r);
    it = tab_.emplace(q, e).first;
  }
  return it->second;
}

const QuadInt& ClassTable::rho(i64 q) { return get(q).r; }
double ClassTable::angle(i64 q) { return get(q).t; }

double ClassTable::angle_prebuilt(i64 q) const {
  auto it = tab_.find(q);
  if (it == tab_.end()) throw invariant_error("ClassTable: missing prebuilt prime");
  return it->second.t;
}

void ClassTable::prebuild(const std::vector<i64>& primes) {
  for (i64 q : primes)
    if (q == 2 || chi8(q) == 1) get(q);
}

void ClassTable::prepare(const std::vector<i64>& primes, i64 limit) {
  std::size_t split = 0;
  for (i64 q : primes) split += (q == 2 || chi8(q) == 1);
  auto dir = cache::env_cache_dir();
  if (dir && load_cache(*dir, limit) && size() == split) return;
  tab_.clear();
  prebuild(primes);
  if (dir) save_cache(*dir, limit);
}

bool ClassTable::load_cache(const std::string& dir, i64 limit) {
  auto rows = cache::load_triples(dir, "quad_split_" + std::to_string(limit));
  if (!rows) return false;
  for (const auto& r : *rows) {
    Entry e;
    e.r = QuadInt{r[1], r[2]};
    if (norm(e.r) != r[0] || !is_totally_positive(e.r) || !in_window(e.r, r[0])) return false;
    e.t = lambda_angle(e.r);
    tab_[r[0]] = e;
  }
  return true;
}

bool ClassTable::save_cache(const std::string& dir, i64 limit) const {
  std::vector<std::array<i64, 3>> rows;
  rows.reserve(tab_.size());
  for (const auto& [q, e] : tab_) rows.push_back({q, e.r.a, e.r.b});
  std::sort(rows.begin(), rows.end());
  return cache::save_triples(dir, "quad_split_" + std::to_string(limit), rows);
}

namespace {

// +-1 from the power-of-2 part: lambda of the class above 2 is e^{i pi/2}.
double two_part_sign(i64 k, int e) {
  // The single class above 2^e sits at angle e*pi/2, so its k-th power is
  // (-1)^(e*k/2): trivial when e*k is divisible by 4, a sign when e*k == 2 mod 4.
  i64 r = (((i64)e * k) % 4 + 4) % 4;
  if (r == 0) return 1.0;
  if (r == 2) return -1.0;
  throw invariant_error("U_k: odd frequency reached 2-part");
}

std::complex<double> split_prime_sum(i64 k, int e, double t) {
  std::complex<double> acc = 0;
  for (int j = 0; j <= e; ++j) {
    double arg = (double)(2 * j - e) * (double)k * t;
    acc += std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return acc;
}

template <class AngleOf>
std::complex<double> U_k_impl(i64 k, const std::vector<std::pair<i64, int>>& fac,
                              AngleOf angle_of) {
  if (k % 2 != 0) throw std::domain_error("U_k: frequency must be even");
  std::complex<double> acc = 1;
  for (auto [q, e] : fac) {
    if (q == 2) {
      acc *= two_part_sign(k, e);
    } else if (chi8(q) == -1) {
      if (e % 2) return 0;
    } else {
      acc *= split_prime_sum(k, e, angle_of(q));
    }
  }
  return acc;
}

}  // namespace

std::complex<double> U_k(i64 k, i64 n) {
  if (n < 1) throw std::domain_error("U_k: n must be >= 1");
  ClassTable local;
  return U_k_impl(k, factor_trial(n), [&](i64 q) { return local.angle(q); });
}

std::complex<double> U_k(i64 k, const std::vector<std::pair<i64, int>>& fac,
                         const ClassTable& ct) {
  return U_k_impl(k, fac, [&](i64 q) { return ct.angle_prebuilt(q); });
}

std::vector<QuadInt> class_reps_from_factorization(const std::vector<std::pair<i64, int>>& fac,
                                                   ClassTable& ct) {
  std::vector<QuadInt> cur{QuadInt{1, 0}};
  for (auto [q, e] : fac) {
    std::vector<QuadInt> pieces;
    if (q == 2) {
      QuadInt p{1, 0};
      for (int i = 0; i < e; ++i) p = reduce_class(mul(p, QuadInt{2, 1}));
      pieces.push_back(p);
    } else if (chi8(q) == -1) {
      if (e % 2) return {};
      i64 v = 1;
      for (int i = 0; i < e / 2; ++i) v *= q;
      pieces.push_back(QuadInt{v, 0});
    } else {
      QuadInt r = ct.rho(q), sr = reduce_class(sigma(ct.rho(q)));
      std::vector<QuadInt> rp(e + 1), sp(e + 1);
      rp[0] = sp[0] = QuadInt{1, 0};
      for (int j = 1; j <= e; ++j) {
        rp[j] = reduce_class(mul(rp[j - 1], r));
        sp[j] = reduce_class(mul(sp[j - 1], sr));
      }
      for (int j = 0; j <= e; ++j) pieces.push_back(reduce_class(mul(rp[j], sp[e - j])));
    }
    std::vector<QuadInt> next;
    next.reserve(cur.size() * pieces.size());
    for (const auto& c : cur)
      for (const auto& p : pieces) next.push_back(reduce_class(mul(c, p)));
    cur = std::move(next);
  }
  return cur;
}

}  // namespace hyperlab::quadratic
