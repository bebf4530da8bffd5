#include "hyperlab/quaternion.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "hyperlab/constants.hpp"

namespace hyperlab::quaternion {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

i64 narrow(i128 v, const char* what) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw std::overflow_error(what);
  return (i64)v;
}
}  // namespace

i64 det_invariant(const QuatMat& q) {
  i128 d = ((i128)q.x0 * q.x0 - 2 * (i128)q.x1 * q.x1) -
           5 * ((i128)q.x2 * q.x2 - 2 * (i128)q.x3 * q.x3);
  return narrow(d, "det_invariant overflow");
}

namespace {
// Both real embeddings of x + y*sqrt(2). One of the two differences suffers
// subtractive cancellation when x and y*sqrt(2) nearly cancel; recover that
// one from the exact integer norm divided by the well-conditioned partner.
std::pair<double, double> conjugate_pair(i64 x, i64 y) {
  if (y == 0) return {(double)x, (double)x};
  double n = (double)((i128)x * x - 2 * (i128)y * y);
  if ((x >= 0) == (y >= 0)) {
    double plus = (double)x + (double)y * kSqrt2;
    return {plus, n / plus};
  }
  double minus = (double)x - (double)y * kSqrt2;
  return {n / minus, minus};
}
}  // namespace

RealMat embed(const QuatMat& q) {
  if (det_invariant(q) != 1) throw std::domain_error("embed: determinant invariant violated");
  auto [a, d] = conjugate_pair(q.x0, q.x1);
  auto [zb, zc] = conjugate_pair(q.x2, q.x3);
  return {a, kSqrt5 * zb, kSqrt5 * zc, d};
}

QuatMat mul(const QuatMat& u, const QuatMat& v) {
  i128 z0 = (i128)u.x0 * v.x0 + 2 * (i128)u.x1 * v.x1 + 5 * (i128)u.x2 * v.x2 -
            10 * (i128)u.x3 * v.x3;
  i128 z1 = (i128)u.x0 * v.x1 + (i128)u.x1 * v.x0 - 5 * (i128)u.x2 * v.x3 +
            5 * (i128)u.x3 * v.x2;
  i128 z2 = (i128)u.x0 * v.x2 + (i128)u.x2 * v.x0 + 2 * (i128)u.x1 * v.x3 -
            2 * (i128)u.x3 * v.x1;
  i128 z3 = (i128)u.x0 * v.x3 + (i128)u.x3 * v.x0 + (i128)u.x1 * v.x2 - (i128)u.x2 * v.x1;
  return {narrow(z0, "mul overflow"), narrow(z1, "mul overflow"), narrow(z2, "mul overflow"),
          narrow(z3, "mul overflow")};
}

QuatMat inverse(const QuatMat& q) {
  if (det_invariant(q) != 1) throw std::domain_error("inverse: determinant invariant violated");
  return {q.x0, -q.x1, -q.x2, -q.x3};
}

QuatMat neg(const QuatMat& q) { return {-q.x0, -q.x1, -q.x2, -q.x3}; }

std::pair<QuadInt, QuadInt> coordinate_pair(const QuatMat& q) {
  return {QuadInt{q.x0, q.x1}, QuadInt{q.x2, q.x3}};
}

QuatMat from_class_pair(QuadInt z1, QuadInt z2) {
  QuatMat q{z1.a, z1.b, z2.a, z2.b};
  if (det_invariant(q) != 1) throw std::domain_error("from_class_pair: N(z1) - 5 N(z2) != 1");
  return q;
}

i64 nu(const QuatMat& q) {
  if (det_invariant(q) != 1) throw std::domain_error("nu: determinant invariant violated");
  bool pos = sign_a_plus_b_sqrt2(q.x0, q.x1) > 0 && sign_a_plus_b_sqrt2(q.x0, -q.x1) > 0 &&
             sign_a_plus_b_sqrt2(q.x2, q.x3) > 0 && sign_a_plus_b_sqrt2(q.x2, -q.x3) > 0;
  if (!pos) throw std::domain_error("nu: entries must all be positive");
  return quadratic::norm(QuadInt{q.x2, q.x3});
}

Region classify(const RealMat& g, double tol) {
  double prod = g.a * g.b * g.c * g.d;
  if (std::abs(prod) <= tol) return Region::axis_locus;
  if (std::abs(std::abs(g.a * g.d) + std::abs(g.b * g.c) - 1.0) <= tol)
    return Region::critical_locus;
  return Region::generic;
}

double delta_of(const RealMat& g) { return 2.0 * std::abs(g.a * g.d + g.b * g.c); }

RealMat recompose(const HypDecomposition& d) {
  double ch = std::cosh(d.v), sh = std::sinh(d.v);
  // middle factor with quarter turns w = [[0,-1],[1,0]] applied on each side
  double m[2][2] = {{ch, sh}, {sh, ch}};
  if (d.delta1) {
    double t0 = m[0][0], t1 = m[0][1];
    m[0][0] = -m[1][0];
    m[0][1] = -m[1][1];
    m[1][0] = t0;
    m[1][1] = t1;
  }
  if (d.delta2) {
    double t0 = m[0][0], t1 = m[1][0];
    m[0][0] = m[0][1];
    m[1][0] = m[1][1];
    m[0][1] = -t0;
    m[1][1] = -t1;
  }
  double s1 = std::sqrt(d.y1), s2 = std::sqrt(d.y2);
  RealMat out{m[0][0] * s1 * s2, m[0][1] * s1 / s2, m[1][0] * s2 / s1, m[1][1] / (s1 * s2)};
  if (d.sign < 0) {
    out.a = -out.a;
    out.b = -out.b;
    out.c = -out.c;
    out.d = -out.d;
  }
  return out;
}

HypDecomposition hyperbolic_decompose(const RealMat& g) {
  if (classify(g) != Region::generic)
    throw std::domain_error("hyperbolic_decompose: matrix lies on the singular set");
  HypDecomposition d;
  d.y1 = std::sqrt(std::abs(g.a * g.b / (g.c * g.d)));
  d.y2 = std::sqrt(std::abs(g.a * g.c / (g.b * g.d)));
  d.v = std::log(std::sqrt(std::abs(g.a * g.d)) + std::sqrt(std::abs(g.b * g.c)));
  int s = g.a > 0 ? 1 : -1;
  bool pb = s * g.b > 0, pc = s * g.c > 0, pd = s * g.d > 0;
  if (pb && pc && pd) {
    d.delta1 = 0;
    d.delta2 = 0;
  } else if (!pb && !pc && pd) {
    d.delta1 = 1;
    d.delta2 = 1;
  } else if (pb && !pc && !pd) {
    d.delta1 = 1;
    d.delta2 = 0;
  } else if (!pb && pc && !pd) {
    d.delta1 = 0;
    d.delta2 = 1;
  } else {
    throw invariant_error("hyperbolic_decompose: sign pattern outside table");
  }
  d.sign = 1;
  RealMat cand = recompose(d);
  if (cand.a * g.a < 0) d.sign = -1;
  return d;
}

std::vector<QuatMat> enumerate_cosets(i64 n) {
  if (n < 1) throw std::domain_error("enumerate_cosets: n must be >= 1");
  auto z1s = quadratic::class_reps_with_norm(5 * n + 1);
  auto z2s = quadratic::class_reps_with_norm(n);
  std::vector<QuatMat> out;
  out.reserve(2 * z1s.size() * z2s.size());
  const QuadInt eps2{3, 2};
  for (const auto& z1 : z1s)
    for (const auto& z2 : z2s) {
      out.push_back(from_class_pair(z1, z2));
      out.push_back(from_class_pair(quadratic::mul(z1, eps2), z2));
    }
  return out;
}

std::complex<double> S_h_direct(i64 n1, i64 n2, i64 n) {
  if (n < 1) throw std::domain_error("S_h_direct: n must be >= 1");
  const double L4 = 4.0 * analytics::log_eps();
  std::complex<double> acc = 0;
  for (const auto& q : enumerate_cosets(n)) {
    if (nu(q) != n) throw invariant_error("S_h_direct: size parameter off");
    auto d = hyperbolic_decompose(embed(q));
    double t1 = std::log(d.y1) / L4;
    double t2 = std::log(d.y2) / L4;
    double arg = 2.0 * kPi * ((double)n1 * t1 + (double)n2 * t2);
    acc += std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return acc;
}

std::complex<double> S_h_factored(i64 n1, i64 n2, i64 n) {
  if (n < 1) throw std::domain_error("S_h_factored: n must be >= 1");
  if ((n1 - n2) % 2) return 0;
  return 2.0 * quadratic::U_k(n1 + n2, 5 * n + 1) * quadratic::U_k(n1 - n2, n);
}

std::complex<double> S_h_factored(i64 n1, i64 n2, i64 n,
                                  const std::vector<std::pair<i64, int>>& fac_5n1,
                                  const std::vector<std::pair<i64, int>>& fac_n,
                                  const quadratic::ClassTable& ct) {
  if (n < 1) throw std::domain_error("S_h_factored: n must be >= 1");
  if ((n1 - n2) % 2) return 0;
  return 2.0 * quadratic::U_k(n1 + n2, fac_5n1, ct) * quadratic::U_k(n1 - n2, fac_n, ct);
}

namespace {
constexpr i64 kEulerCutoff = 10'000'000;
}  // namespace

analytics::StatReport count_range_h(i64 x, int threads, const ProgressFn& progress) {
  if (x < 1) throw std::domain_error("count_range_h: x must be >= 1");
  analytics::SpfSieve sv(5 * x + 1);
  auto n2 = analytics::n2_table(sv);
  struct Partial {
    i64 count = 0;
    i64 pairs = 0;
  };
  auto partials = run_blocked<Partial>(
      1, x + 1, 1 << 15, threads,
      [&](i64 lo, i64 hi) {
        Partial out;
        for (i64 n = lo; n < hi; ++n) {
          i64 t = n2[(std::size_t)(5 * n + 1)] * n2[(std::size_t)n];
          out.pairs += t;
          out.count += 2 * t;
        }
        return out;
      },
      progress);
  analytics::StatReport rep;
  rep.mode = "hyperbolic_count";
  rep.x_lo = 1;
  rep.x_hi = x;
  i64 pairs = 0;
  for (const auto& p : partials) {
    rep.count += p.count;
    pairs += p.pairs;
  }
  if (rep.count != 2 * pairs) throw invariant_error("count_range_h: pairing factor broken");
  double le = analytics::log_eps();
  rep.reference = 10.0 * le * le / (kPi * kPi) * (double)x;
  rep.metadata["ratio_basis"] = "count";
  rep.metadata["pair_count"] = std::to_string(pairs);
  analytics::finalize_ratio(rep);
  return rep;
}

analytics::StatReport psi_h(i64 x, int threads, const ProgressFn& progress) {
  if (x < 2) throw std::domain_error("psi_h: x must be >= 2");
  analytics::SpfSieve sv(5 * x + 1);
  auto n2 = analytics::n2_table(sv);
  struct Partial {
    double weighted = 0;
    i64 primes = 0;
  };
  auto partials = run_blocked<Partial>(
      1, x + 1, 1 << 15, threads,
      [&](i64 lo, i64 hi) {
        Partial out;
        for (i64 n = lo; n < hi; ++n) {
          i64 t = n2[(std::size_t)(5 * n + 1)] * n2[(std::size_t)n];
          if (t) {
            double lam = sv.mangoldt(n);
            if (lam != 0.0) out.weighted += 2.0 * (double)t * lam;
          }
          if (sv.is_prime(n)) out.primes += 2 * t;
        }
        return out;
      },
      progress);
  analytics::StatReport rep;
  rep.mode = "hyperbolic_psi";
  rep.x_lo = 1;
  rep.x_hi = x;
  for (const auto& p : partials) {
    rep.weighted_sum += p.weighted;
    rep.count += p.primes;
  }
  double C = analytics::hyperbolic_main_constant(kEulerCutoff);
  rep.reference = C * (double)x;
  rep.metadata["ratio_basis"] = "weighted_sum";
  rep.metadata["main_constant"] = std::to_string(C);
  double pi_ref = C * analytics::li((double)x);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", rep.count / pi_ref);
  rep.metadata["prime_count_ratio"] = buf;
  analytics::finalize_ratio(rep);
  return rep;
}

analytics::StatReport titchmarsh_sum(i64 x, int residue, int threads,
                                     const ProgressFn& progress) {
  if (residue != 1 && residue != 7)
    throw std::domain_error("titchmarsh_sum: residue must be 1 or 7");
  if (x < 2) throw std::domain_error("titchmarsh_sum: x must be >= 2");
  analytics::SpfSieve sv(5 * x + 1);
  auto n2 = analytics::n2_table(sv);
  auto partials = run_blocked<double>(
      1, x + 1, 1 << 15, threads,
      [&](i64 lo, i64 hi) {
        double w = 0;
        for (i64 n = lo; n < hi; ++n) {
          if (n % 8 != residue) continue;
          i64 t = n2[(std::size_t)(5 * n + 1)];
          if (!t) continue;
          double lam = sv.mangoldt(n);
          if (lam != 0.0) w += (double)t * lam;
        }
        return w;
      },
      progress);
  analytics::StatReport rep;
  rep.mode = "hyperbolic_titchmarsh";
  rep.x_lo = 1;
  rep.x_hi = x;
  for (double w : partials) rep.weighted_sum += w;
  double Cp = analytics::hyperbolic_titchmarsh_constant(kEulerCutoff);
  rep.reference = Cp * (double)x / 4.0;
  rep.metadata["ratio_basis"] = "weighted_sum";
  rep.metadata["residue"] = std::to_string(residue);
  analytics::finalize_ratio(rep);
  return rep;
}

analytics::StatReport prime_weyl_B(i64 n1, i64 n2f, i64 x, int threads,
                                   const ProgressFn& progress) {
  if (x < 2) throw std::domain_error("prime_weyl_B: x must be >= 2");
  analytics::SpfSieve sv(5 * x + 1);
  auto n2 = analytics::n2_table(sv);
  quadratic::ClassTable ct;
  ct.prepare(sv.primes(), 5 * x + 1);

  struct Partial {
    i64 count = 0;
    std::complex<double> csum{0, 0};
  };
  auto partials = run_blocked<Partial>(
      2, x + 1, 1 << 15, threads,
      [&](i64 lo, i64 hi) {
        Partial out;
        std::vector<std::pair<i64, int>> fac_p(1);
        for (i64 p = lo; p < hi; ++p) {
          if (!sv.is_prime(p)) continue;
          out.count += 2 * n2[(std::size_t)(5 * p + 1)] * n2[(std::size_t)p];
          fac_p[0] = {p, 1};
          out.csum += S_h_factored(n1, n2f, p, sv.factorize(5 * p + 1), fac_p, ct);
        }
        return out;
      },
      progress);

  analytics::StatReport rep;
  rep.mode = "hyperbolic_prime_weyl";
  rep.x_lo = 2;
  rep.x_hi = x;
  for (const auto& p : partials) {
    rep.count += p.count;
    rep.complex_sum += p.csum;
  }
  rep.metadata["n1"] = std::to_string(n1);
  rep.metadata["n2"] = std::to_string(n2f);
  if (n1 == 0 && n2f == 0) {
    if (std::abs(rep.complex_sum.real() - (double)rep.count) > 1e-6 * (double)rep.count + 1e-6)
      throw invariant_error("prime_weyl_B: zero-frequency sum disagrees with count");
    rep.metadata["ratio_basis"] = "count";
    rep.reference =
        analytics::hyperbolic_main_constant(kEulerCutoff) * analytics::li((double)x);
  } else {
    rep.metadata["ratio_basis"] = "complex_norm_over_count";
  }
  analytics::finalize_ratio(rep);
  return rep;
}

}  // namespace hyperlab::quaternion
