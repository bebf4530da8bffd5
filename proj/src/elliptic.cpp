#include "hyperlab/elliptic.hpp"

#include <cmath>
#include <limits>

#include "hyperlab/constants.hpp"

namespace hyperlab::elliptic {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

i64 det(const UniModularMat& g) {
  i128 d = (i128)g.a * g.d - (i128)g.b * g.c;
  if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min())
    throw std::overflow_error("det overflow");
  return (i64)d;
}

i64 nu_H(const UniModularMat& g) {
  i128 n = (i128)g.a * g.a + (i128)g.b * g.b + (i128)g.c * g.c + (i128)g.d * g.d;
  if (n > std::numeric_limits<i64>::max()) throw std::overflow_error("nu_H overflow");
  return (i64)n;
}

std::pair<GaussInt, GaussInt> to_gauss_pair(const UniModularMat& g) {
  return {GaussInt{g.a + g.d, g.b - g.c}, GaussInt{g.a - g.d, -(g.b + g.c)}};
}

UniModularMat from_gauss_pair(GaussInt z1, GaussInt z2) {
  if ((z1.re - z2.re) % 2 || (z1.im - z2.im) % 2)
    throw std::domain_error("from_gauss_pair: component parity mismatch");
  if (norm(z1) - norm(z2) != 4) throw std::domain_error("from_gauss_pair: norms must differ by 4");
  UniModularMat g{(z1.re + z2.re) / 2, (z1.im - z2.im) / 2, -(z1.im + z2.im) / 2,
                  (z1.re - z2.re) / 2};
  if (det(g) != 1) throw invariant_error("from_gauss_pair: determinant is not 1");
  return g;
}

CartanAngles cartan_angles(const UniModularMat& g) {
  i64 n = nu_H(g);
  if (n < 3) throw std::domain_error("cartan_angles: need nu_H >= 3");
  if (det(g) != 1) throw std::domain_error("cartan_angles: need determinant 1");
  auto [z1, z2] = to_gauss_pair(g);
  double a1 = std::atan2((double)z1.im, (double)z1.re);
  double a2 = std::atan2((double)z2.im, (double)z2.re);
  auto half_mod_pi = [](double two_theta) {
    double t = std::fmod(two_theta, 2.0 * kPi);
    if (t < 0) t += 2.0 * kPi;
    return 0.5 * t;
  };
  CartanAngles out;
  out.theta1 = half_mod_pi(a1 + a2);
  out.theta2 = half_mod_pi(a1 - a2);
  double h = 0.5 * (double)n;
  out.r = std::log(h + std::sqrt(h * h - 1.0));
  return out;
}

namespace {

const UniModularMat kRot{0, 1, -1, 0};  // order-4 rotation

UniModularMat matmul(const UniModularMat& g, const UniModularMat& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
          g.c * h.b + g.d * h.d};
}

}  // namespace

std::vector<UniModularMat> enumerate_norm(i64 n) {
  if (n < 2) throw std::domain_error("enumerate_norm: n must be >= 2");
  std::vector<UniModularMat> out;
  if (n == 2) {
    out.push_back({1, 0, 0, 1});
    out.push_back(kRot);
    out.push_back({-1, 0, 0, -1});
    out.push_back({0, -1, 1, 0});
    return out;
  }
  i64 r = n % 4;
  if (r == 0 || r == 1) return out;
  if (r == 2) {
    auto z1s = gaussian::reps_with_norm(n + 2);
    auto z2s = gaussian::reps_with_norm(n - 2);
    out.reserve(z1s.size() * z2s.size());
    for (const auto& z1 : z1s)
      for (const auto& z2 : z2s) out.push_back(from_gauss_pair(z1, z2));
    return out;
  }
  auto w1s = gaussian::primary_reps_with_norm(n + 2);
  auto w2s = gaussian::primary_reps_with_norm(n - 2);
  out.reserve(w1s.size() * w2s.size() * 8);
  for (const auto& w1 : w1s)
    for (const auto& w2 : w2s) {
      UniModularMat base = from_gauss_pair(w1, w2);
      for (int j1 = 0; j1 < 4; ++j1) {
        UniModularMat left = base;
        for (int k = 0; k < j1; ++k) left = matmul(kRot, left);
        for (int j2 = 0; j2 < 2; ++j2) {
          UniModularMat m = left;
          for (int k = 0; k < j2; ++k) m = matmul(m, kRot);
          out.push_back(m);
        }
      }
    }
  return out;
}

namespace {

GaussInt gauss_pow_signed(GaussInt z, i64 e) {
  GaussInt base = e < 0 ? conj(z) : z;
  i64 k = e < 0 ? -e : e;
  GaussInt r{1, 0};
  while (k--) r = r * base;
  return r;
}

}  // namespace

std::complex<double> S_e_direct(i64 m1, i64 m2, i64 n) {
  if (n < 3) throw std::domain_error("S_e_direct: n must be >= 3");
  i64 alpha = m1 + m2, beta = m1 - m2;
  i128 acc_re = 0, acc_im = 0;
  for (const auto& g : enumerate_norm(n)) {
    auto [z1, z2] = to_gauss_pair(g);
    if (norm(z1) != n + 2 || norm(z2) != n - 2)
      throw invariant_error("S_e_direct: coordinate norms off");
    GaussInt w = gauss_pow_signed(z1, alpha) * gauss_pow_signed(z2, beta);
    acc_re += w.re;
    acc_im += w.im;
  }
  double den = std::pow((double)(n + 2), std::abs(alpha) / 2.0) *
               std::pow((double)(n - 2), std::abs(beta) / 2.0);
  return {(double)acc_re / den, (double)acc_im / den};
}

std::complex<double> S_e_factored(i64 m1, i64 m2, i64 n) {
  if (n < 2) throw std::domain_error("S_e_factored: n must be >= 2");
  i64 alpha = m1 + m2, beta = m1 - m2;
  if (alpha % 2) return 0;
  i64 r = n % 4;
  if (r == 0 || r == 1) return 0;
  if (r == 2) return 16.0 * gaussian::weyl_W(alpha, n + 2) * gaussian::weyl_W(beta, n - 2);
  if (m1 % 2 || m2 % 2) return 0;
  return 8.0 * gaussian::weyl_WP(alpha, n + 2) * gaussian::weyl_WP(beta, n - 2);
}

std::complex<double> S_e_factored(i64 m1, i64 m2, i64 n,
                                  const std::vector<std::pair<i64, int>>& fac_plus,
                                  const std::vector<std::pair<i64, int>>& fac_minus,
                                  const PrimaryTable& pt) {
  if (n < 2) throw std::domain_error("S_e_factored: n must be >= 2");
  i64 alpha = m1 + m2, beta = m1 - m2;
  if (alpha % 2) return 0;
  i64 r = n % 4;
  if (r == 0 || r == 1) return 0;
  if (r == 2)
    return 16.0 * gaussian::weyl_W(alpha, n + 2, fac_plus, pt) *
           gaussian::weyl_W(beta, n - 2, fac_minus, pt);
  if (m1 % 2 || m2 % 2) return 0;
  return 8.0 * gaussian::weyl_WP(alpha, fac_plus, pt) * gaussian::weyl_WP(beta, fac_minus, pt);
}

analytics::StatReport count_range(i64 x, int threads, const ProgressFn& progress) {
  if (x < 2) throw std::domain_error("count_range: x must be >= 2");
  analytics::SpfSieve sv(x + 2);
  auto r4 = analytics::r4_table(sv);
  auto partials = run_blocked<i64>(
      2, x + 1, 1 << 15, threads,
      [&](i64 lo, i64 hi) {
        i64 c = 0;
        for (i64 n = lo; n < hi; ++n) {
          if (n == 2) {
            c += 4;
            continue;
          }
          i64 r = n % 4;
          if (r == 2)
            c += 16 * r4[(std::size_t)(n + 2)] * r4[(std::size_t)(n - 2)];
          else if (r == 3)
            c += 8 * r4[(std::size_t)(n + 2)] * r4[(std::size_t)(n - 2)];
        }
        return c;
      },
      progress);
  analytics::StatReport rep;
  rep.mode = "elliptic_count";
  rep.x_lo = 2;
  rep.x_hi = x;
  for (i64 c : partials) rep.count += c;
  rep.reference = 6.0 * (double)x;
  rep.metadata["ratio_basis"] = "count";
  analytics::finalize_ratio(rep);
  return rep;
}

analytics::StatReport prime_weyl_A(i64 m1, i64 m2, int shift, i64 x, int threads,
                                   const ProgressFn& progress) {
  if (shift != 0 && shift != 2) throw std::domain_error("prime_weyl_A: shift must be 0 or 2");
  if (x < 2) throw std::domain_error("prime_weyl_A: x must be >= 2");
  analytics::SpfSieve sv(x + 2);
  auto r4 = analytics::r4_table(sv);
  PrimaryTable pt;
  pt.prepare(sv.primes(), x + 2);

  struct Partial {
    i64 count = 0;
    std::complex<double> csum{0, 0};
  };
  auto partials = run_blocked<Partial>(
      2, x + 1, 1 << 15, threads,
      [&](i64 lo, i64 hi) {
        Partial out;
        for (i64 p = lo; p < hi; ++p) {
          if (!sv.is_prime(p)) continue;
          i64 n = p - shift;
          if (n < 2) continue;
          if (n == 2) {
            out.count += 4;
            out.csum += S_e_factored(m1, m2, 2);
            continue;
          }
          if (n % 4 != 3) continue;
          out.count += 8 * r4[(std::size_t)(n + 2)] * r4[(std::size_t)(n - 2)];
          out.csum +=
              S_e_factored(m1, m2, n, sv.factorize(n + 2), sv.factorize(n - 2), pt);
        }
        return out;
      },
      progress);

  analytics::StatReport rep;
  rep.mode = "elliptic_prime_weyl";
  rep.x_lo = 2;
  rep.x_hi = x;
  for (const auto& pr : partials) {
    rep.count += pr.count;
    rep.complex_sum += pr.csum;
  }
  rep.metadata["m1"] = std::to_string(m1);
  rep.metadata["m2"] = std::to_string(m2);
  rep.metadata["shift"] = std::to_string(shift);
  if (m1 == 0 && m2 == 0) {
    if (std::abs(rep.complex_sum.real() - (double)rep.count) > 1e-6 * (double)rep.count + 1e-6)
      throw invariant_error("prime_weyl_A: zero-frequency sum disagrees with count");
    rep.metadata["ratio_basis"] = "count";
    if (shift == 2) {
      i64 cutoff = 10'000'000;
      rep.reference = analytics::elliptic_prime_constant(cutoff) * analytics::li((double)x);
      rep.metadata["euler_cutoff"] = std::to_string(cutoff);
    }
  } else {
    rep.metadata["ratio_basis"] = "complex_norm_over_count";
  }
  analytics::finalize_ratio(rep);
  return rep;
}

}  // namespace hyperlab::elliptic
