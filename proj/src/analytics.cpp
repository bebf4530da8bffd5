#include "hyperlab/analytics.hpp"

#include <cmath>

namespace hyperlab::analytics {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double frac(double x) { return x - std::floor(x); }

bool is_elliptic(SampleCase c) {
  return c == SampleCase::elliptic_all || c == SampleCase::elliptic_shifted ||
         c == SampleCase::elliptic_pairs;
}

}  // namespace

SampleCase sample_case_from_name(const std::string& name) {
  if (name == "E" || name == "elliptic_all") return SampleCase::elliptic_all;
  if (name == "E_shifted" || name == "elliptic_shifted") return SampleCase::elliptic_shifted;
  if (name == "script_E" || name == "elliptic_pairs") return SampleCase::elliptic_pairs;
  if (name == "h" || name == "hyperbolic_all") return SampleCase::hyperbolic_all;
  if (name == "script_H" || name == "hyperbolic_pairs") return SampleCase::hyperbolic_pairs;
  throw std::invalid_argument("unknown sample case: " + name);
}

std::string sample_case_name(SampleCase c) {
  switch (c) {
    case SampleCase::elliptic_all: return "elliptic_all";
    case SampleCase::elliptic_shifted: return "elliptic_shifted";
    case SampleCase::elliptic_pairs: return "elliptic_pairs";
    case SampleCase::hyperbolic_all: return "hyperbolic_all";
    default: return "hyperbolic_pairs";
  }
}

namespace {

void elliptic_points(SampleCase c, i64 x, bool primes_only,
                     const std::function<void(double, double)>& visit) {
  i64 nmax = c == SampleCase::elliptic_shifted ? x - 2 : x;
  if (nmax < 3) return;
  SpfSieve sv(nmax + 2);
  gaussian::PrimaryTable pt;
  pt.prepare(sv.primes(), nmax + 2);

  std::vector<double> args1, args2;
  for (i64 n = 3; n <= nmax; ++n) {
    i64 r = n % 4;
    if (r == 0 || r == 1) continue;
    if (c == SampleCase::elliptic_pairs && r != 3) continue;
    if (primes_only) {
      i64 size_param = c == SampleCase::elliptic_shifted ? n + 2 : n;
      if (!sv.is_prime(size_param)) continue;
    }
    auto collect = [&](i64 m, std::vector<double>& out) {
      out.clear();
      auto fac = sv.factorize(m);
      auto reps = r == 3 ? gaussian::primary_reps_from_factorization(fac, pt)
                         : gaussian::reps_from_factorization(fac, pt);
      out.reserve(reps.size());
      for (const auto& z : reps) out.push_back(std::atan2((double)z.im, (double)z.re));
    };
    collect(n + 2, args1);
    if (args1.empty()) continue;
    collect(n - 2, args2);
    if (args2.empty()) continue;

    for (double a1 : args1)
      for (double a2 : args2) {
        double u1 = (a1 + a2) / (2.0 * kPi);
        double u2 = (a1 - a2) / (2.0 * kPi);
        if (r == 2 || c == SampleCase::elliptic_pairs) {
          visit(frac(u1), frac(u2));
          continue;
        }
        // left / right quarter-turn translates add pi/2 to the respective
        // rotation angle; the 8 double-coset members cover the four half-step
        // shifts twice (the square of the quarter turn is -I, acting trivially)
        for (int j1 = 0; j1 < 4; ++j1)
          for (int j2 = 0; j2 < 2; ++j2)
            visit(frac(u1 + 0.5 * (double)(j1 % 2)), frac(u2 + 0.5 * (double)j2));
      }
  }
}

void hyperbolic_points(SampleCase c, i64 x, bool primes_only,
                       const std::function<void(double, double)>& visit) {
  if (x < 1) return;
  SpfSieve sv(5 * x + 1);
  quadratic::ClassTable ct;
  ct.prepare(sv.primes(), 5 * x + 1);

  std::vector<double> args1, args2;
  for (i64 n = 1; n <= x; ++n) {
    if (primes_only && !sv.is_prime(n)) continue;
    auto collect = [&](i64 m, std::vector<double>& out) {
      out.clear();
      auto reps = quadratic::class_reps_from_factorization(sv.factorize(m), ct);
      out.reserve(reps.size());
      for (const auto& z : reps) out.push_back(quadratic::lambda_angle(z));
    };
    collect(5 * n + 1, args1);
    if (args1.empty()) continue;
    collect(n, args2);
    if (args2.empty()) continue;

    for (double a1 : args1)
      for (double a2 : args2) {
        double u1 = frac((a1 + a2) / (2.0 * kPi));
        double u2 = frac((a1 - a2) / (2.0 * kPi));
        visit(u1, u2);
        if (c == SampleCase::hyperbolic_all) visit(frac(u1 + 0.5), frac(u2 + 0.5));
      }
  }
}

}  // namespace

void for_each_point(SampleCase c, i64 x, bool primes_only,
                    const std::function<void(double, double)>& visit) {
  if (x < 1) throw std::domain_error("for_each_point: x must be >= 1");
  if (is_elliptic(c))
    elliptic_points(c, x, primes_only, visit);
  else
    hyperbolic_points(c, x, primes_only, visit);
}

TorusSample build_sample(SampleCase c, i64 x, bool primes_only) {
  TorusSample s;
  s.source = c;
  s.x = x;
  s.primes_only = primes_only;
  for_each_point(c, x, primes_only, [&](double u1, double u2) {
    s.points.push_back({u1, u2});
  });
  return s;
}

std::vector<std::vector<std::complex<double>>> weyl_table(const TorusSample& s, int max_freq,
                                                          int threads) {
  if (max_freq < 0) throw std::domain_error("weyl_table: max_freq must be >= 0");
  int M = max_freq;
  int dim = 2 * M + 1;
  using Table = std::vector<std::vector<std::complex<double>>>;
  Table zero(dim, std::vector<std::complex<double>>(dim, 0.0));
  if (s.points.empty()) return zero;

  auto partials = run_blocked<Table>(
      0, (i64)s.points.size(), 1 << 16, threads, [&](i64 lo, i64 hi) {
        Table t = zero;
        std::vector<std::complex<double>> p1(2 * M + 1), p2(2 * M + 1);
        for (i64 i = lo; i < hi; ++i) {
          double u1 = s.points[(std::size_t)i][0], u2 = s.points[(std::size_t)i][1];
          std::complex<double> w1 = std::polar(1.0, 2.0 * kPi * u1);
          std::complex<double> w2 = std::polar(1.0, 2.0 * kPi * u2);
          p1[M] = p2[M] = 1.0;
          for (int k = 1; k <= M; ++k) {
            p1[M + k] = p1[M + k - 1] * w1;
            p1[M - k] = std::conj(p1[M + k]);
            p2[M + k] = p2[M + k - 1] * w2;
            p2[M - k] = std::conj(p2[M + k]);
          }
          for (int i1 = 0; i1 < dim; ++i1)
            for (int i2 = 0; i2 < dim; ++i2) t[i1][i2] += p1[i1] * p2[i2];
        }
        return t;
      });

  Table out = zero;
  for (const auto& t : partials)
    for (int i1 = 0; i1 < dim; ++i1)
      for (int i2 = 0; i2 < dim; ++i2) out[i1][i2] += t[i1][i2];
  double inv = 1.0 / (double)s.points.size();
  for (auto& row : out)
    for (auto& v : row) v *= inv;
  return out;
}

double box_discrepancy(const TorusSample& s, int grid, int threads) {
  (void)threads;
  if (grid < 1 || grid > 256) throw std::domain_error("box_discrepancy: grid out of range");
  if (s.points.empty()) throw std::domain_error("box_discrepancy: empty sample");
  int G = grid;
  std::vector<std::vector<i64>> cells((std::size_t)G, std::vector<i64>((std::size_t)G, 0));
  for (const auto& p : s.points) {
    int i = std::min(G - 1, (int)(p[0] * G));
    int j = std::min(G - 1, (int)(p[1] * G));
    cells[(std::size_t)i][(std::size_t)j] += 1;
  }
  // prefix[i][j] = count in [0, i/G) x [0, j/G)
  std::vector<std::vector<i64>> pre((std::size_t)G + 1, std::vector<i64>((std::size_t)G + 1, 0));
  for (int i = 1; i <= G; ++i)
    for (int j = 1; j <= G; ++j)
      pre[i][j] = cells[i - 1][j - 1] + pre[i - 1][j] + pre[i][j - 1] - pre[i - 1][j - 1];
  double N = (double)s.points.size();
  double worst = 0;
  for (int i1 = 0; i1 <= G; ++i1)
    for (int i2 = i1 + 1; i2 <= G; ++i2)
      for (int j1 = 0; j1 <= G; ++j1)
        for (int j2 = j1 + 1; j2 <= G; ++j2) {
          i64 m = pre[i2][j2] - pre[i1][j2] - pre[i2][j1] + pre[i1][j1];
          double area = (double)(i2 - i1) * (double)(j2 - j1) / ((double)G * (double)G);
          worst = std::max(worst, std::abs((double)m / N - area));
        }
  return worst;
}

double marginal_discrepancy(SampleCase c, i64 x, bool primes_only, int coordinate, int grid) {
  if (coordinate != 0 && coordinate != 1)
    throw std::domain_error("marginal_discrepancy: coordinate must be 0 or 1");
  if (grid < 1 || grid > 4096) throw std::domain_error("marginal_discrepancy: grid out of range");
  std::vector<i64> bins((std::size_t)grid, 0);
  i64 total = 0;
  for_each_point(c, x, primes_only, [&](double u1, double u2) {
    double u = coordinate == 0 ? u1 : u2;
    bins[(std::size_t)std::min(grid - 1, (int)(u * grid))] += 1;
    ++total;
  });
  if (!total) throw std::domain_error("marginal_discrepancy: empty sample");
  std::vector<i64> pre((std::size_t)grid + 1, 0);
  for (int i = 0; i < grid; ++i) pre[(std::size_t)i + 1] = pre[(std::size_t)i] + bins[(std::size_t)i];
  double worst = 0;
  for (int i1 = 0; i1 <= grid; ++i1)
    for (int i2 = i1 + 1; i2 <= grid; ++i2) {
      double mass = (double)(pre[(std::size_t)i2] - pre[(std::size_t)i1]) / (double)total;
      double width = (double)(i2 - i1) / (double)grid;
      worst = std::max(worst, std::abs(mass - width));
    }
  return worst;
}

}  // namespace hyperlab::analytics
