#pragma once
// Equidistribution instrumentation: torus point samples drawn from the two
// matrix families, normalized Weyl sum tables, and axis-aligned box
// discrepancy on [0,1)^2.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hyperlab/elliptic.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/quaternion.hpp"
#include "hyperlab/stat_report.hpp"

namespace hyperlab::analytics {

// Point families on the unit square:
//   elliptic_all      angle pairs of every determinant-1 matrix, size nu <= x
//   elliptic_shifted  same points, size parameter nu + 2 <= x
//   elliptic_pairs    one point per primary coordinate pair (odd-size classes)
//   hyperbolic_all    diagonal-coordinate pairs of every coset, nu <= x
//   hyperbolic_pairs  one point per window pair
enum class SampleCase {
  elliptic_all,
  elliptic_shifted,
  elliptic_pairs,
  hyperbolic_all,
  hyperbolic_pairs,
};

SampleCase sample_case_from_name(const std::string& name);  // throws invalid_argument
std::string sample_case_name(SampleCase c);

// Visit every torus point of the family with size parameter <= x (primes_only
// restricts the size parameter to primes). Deterministic order.
void for_each_point(SampleCase c, i64 x, bool primes_only,
                    const std::function<void(double, double)>& visit);

struct TorusSample {
  SampleCase source;
  i64 x = 0;
  bool primes_only = false;
  std::vector<std::array<double, 2>> points;
};

TorusSample build_sample(SampleCase c, i64 x, bool primes_only);

// Normalized Weyl sums sum e(m1 u1 + m2 u2) / N for |m1|, |m2| <= max_freq;
// entry [m1 + max_freq][m2 + max_freq].
std::vector<std::vector<std::complex<double>>> weyl_table(const TorusSample& s, int max_freq,
                                                          int threads = 1);

// sup over grid-anchored boxes of |empirical mass - area| at resolution G.
double box_discrepancy(const TorusSample& s, int grid, int threads = 1);

// One-dimensional counterpart for a single coordinate (0 or 1), streaming.
double marginal_discrepancy(SampleCase c, i64 x, bool primes_only, int coordinate, int grid);

}  // namespace hyperlab::analytics
