#pragma once
// The arithmetic group of matrices [[z1, sqrt(5) z2], [sqrt(5) sigma(z2),
// sigma(z1)]] with z1, z2 in Z[sqrt(2)] and N(z1) - 5 N(z2) = 1: exact
// coordinate arithmetic, the Cartan-type decomposition along two hyperbolic
// one-parameter groups, coset enumeration by the size parameter N(z2), and
// the angular sums S_h in direct and factored form.

#include <complex>
#include <utility>
#include <vector>

#include "hyperlab/parallel.hpp"
#include "hyperlab/quadratic.hpp"
#include "hyperlab/sieve.hpp"
#include "hyperlab/stat_report.hpp"

namespace hyperlab::quaternion {

using quadratic::QuadInt;

struct QuatMat {
  i64 x0 = 0, x1 = 0, x2 = 0, x3 = 0;
  friend bool operator==(const QuatMat&, const QuatMat&) = default;
};

struct RealMat {
  double a = 0, b = 0, c = 0, d = 0;
};

// (x0^2 - 2 x1^2) - 5 (x2^2 - 2 x3^2); equals 1 on group elements.
i64 det_invariant(const QuatMat& q);

// Embedding into real 2x2 matrices; rejects non-group coordinates.
RealMat embed(const QuatMat& q);

QuatMat mul(const QuatMat& u, const QuatMat& v);
QuatMat inverse(const QuatMat& q);
QuatMat neg(const QuatMat& q);

// Coordinate pair (z1, z2) = (x0 + x1 sqrt2, x2 + x3 sqrt2).
std::pair<QuadInt, QuadInt> coordinate_pair(const QuatMat& q);
QuatMat from_class_pair(QuadInt z1, QuadInt z2);  // requires N(z1) - 5 N(z2) = 1

// Size parameter N(z2) for all-entries-positive representatives.
i64 nu(const QuatMat& q);

enum class Region { axis_locus, critical_locus, generic };

// Locate a real matrix relative to the singular set of the two-sided
// decomposition: product of entries zero (axis locus), |ad| + |bc| = 1 with
// all entries nonzero (critical locus; for determinant 1 this is exactly
// where ad >= 0 >= bc), else generic.
Region classify(const RealMat& g, double tol = 1e-9);

struct HypDecomposition {
  double y1 = 0, y2 = 0;   // diagonal coordinates, y = |ab/cd|^{1/2}, |ac/bd|^{1/2}
  double v = 0;            // middle boost parameter, >= 0
  int delta1 = 0, delta2 = 0;  // quarter-turn exponents in {0, 1}
  int sign = 1;            // overall +-1
};

double delta_of(const RealMat& g);  // 2 |ad + bc|

// Two-sided decomposition g = sign * A(y1) w^{delta1} B(v) w^{delta2} A(y2),
// A(y) = diag(sqrt y, 1/sqrt y), B(v) the symmetric boost, w the quarter
// turn. Requires classify(g) == generic.
HypDecomposition hyperbolic_decompose(const RealMat& g);
RealMat recompose(const HypDecomposition& d);

// All-positive coset representatives with nu = n: both matrices built from
// each window pair (z1, z2), the partner shifted by the square of the
// fundamental unit. Deterministic order; 2 * N2(5n+1) * N2(n) entries.
std::vector<QuatMat> enumerate_cosets(i64 n);

// Angular sum over the nu = n cosets with frequencies (n1, n2).
std::complex<double> S_h_direct(i64 n1, i64 n2, i64 n);
// Closed form: 0 unless n1 = n2 mod 2, else 2 U_{n1+n2}(5n+1) U_{n1-n2}(n).
std::complex<double> S_h_factored(i64 n1, i64 n2, i64 n);
std::complex<double> S_h_factored(i64 n1, i64 n2, i64 n,
                                  const std::vector<std::pair<i64, int>>& fac_5n1,
                                  const std::vector<std::pair<i64, int>>& fac_n,
                                  const quadratic::ClassTable& ct);

// Total coset count over 1 <= n <= x against the quadratic main term
// 10 (log eps)^2 / pi^2 * x, with the paired-count factor-2 cross check.
analytics::StatReport count_range_h(i64 x, int threads = 1, const ProgressFn& progress = {});

// Mangoldt-weighted count psi_h and the prime count pi_h with their
// respective references C * x and C * li(x).
analytics::StatReport psi_h(i64 x, int threads = 1, const ProgressFn& progress = {});

// Residue-restricted weighted sum over n = a mod 8 (a in {1, 7}) of
// N2(5n+1) Lambda(n) against C'/4 * x.
analytics::StatReport titchmarsh_sum(i64 x, int residue, int threads = 1,
                                     const ProgressFn& progress = {});

// Prime-indexed angular sums: sum of S_h(n1, n2, p) over primes p <= x.
analytics::StatReport prime_weyl_B(i64 n1, i64 n2, i64 x, int threads = 1,
                                   const ProgressFn& progress = {});

}  // namespace hyperlab::quaternion
