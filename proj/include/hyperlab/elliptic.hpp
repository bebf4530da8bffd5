#pragma once
// Integer matrices of determinant 1 parametrized by pairs of Gaussian
// integers, Cartan angle coordinates, the exact matrix enumeration by the
// entry-square-sum size, and the angular matrix sums S_e in both direct and
// factored form.

#include <complex>
#include <utility>
#include <vector>

#include "hyperlab/gaussian.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/sieve.hpp"
#include "hyperlab/stat_report.hpp"

namespace hyperlab::elliptic {

using gaussian::GaussInt;
using gaussian::PrimaryTable;

struct UniModularMat {
  i64 a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const UniModularMat&, const UniModularMat&) = default;
};

i64 det(const UniModularMat& g);
i64 nu_H(const UniModularMat& g);  // a^2 + b^2 + c^2 + d^2

// The coordinate pair z1 = (a+d) + i(b-c), z2 = (a-d) - i(b+c); norms are
// nu_H(g) + 2 and nu_H(g) - 2 for determinant-1 matrices.
std::pair<GaussInt, GaussInt> to_gauss_pair(const UniModularMat& g);

// Inverse of the pair coordinate map. Requires matching component parities
// and N(z1) - N(z2) = 4; the result then automatically has determinant 1.
UniModularMat from_gauss_pair(GaussInt z1, GaussInt z2);

struct CartanAngles {
  double theta1 = 0, theta2 = 0;  // in [0, pi): the rotation angles
  double r = 0;                   // radial part, cosh(r) = nu/2
};

// Angle coordinates from the polar decomposition k(theta1) a(r) k(theta2).
// Defined for nu_H(g) >= 3.
CartanAngles cartan_angles(const UniModularMat& g);

// All determinant-1 matrices with nu_H = n, deterministic order. n >= 2.
std::vector<UniModularMat> enumerate_norm(i64 n);

// Angular matrix sum over {nu_H = n} with frequencies (m1, m2), evaluated by
// exact Gaussian-integer powers (integer numerators, one final division).
// n >= 3.
std::complex<double> S_e_direct(i64 m1, i64 m2, i64 n);

// Same sum in closed form through the W angular sums. Defined for n >= 2;
// vanishes for odd frequencies and for n = 0, 1 mod 4.
std::complex<double> S_e_factored(i64 m1, i64 m2, i64 n);
std::complex<double> S_e_factored(i64 m1, i64 m2, i64 n,
                                  const std::vector<std::pair<i64, int>>& fac_plus,
                                  const std::vector<std::pair<i64, int>>& fac_minus,
                                  const PrimaryTable& pt);

// Total matrix count over 2 <= nu_H <= x against the slope-6 reference line.
analytics::StatReport count_range(i64 x, int threads = 1,
                                  const ProgressFn& progress = {});

// Prime-indexed angular sums: sum of S_e(m1, m2, p - shift) over primes
// p <= x (shift 0 or 2). For (m1, m2) = (0, 0) this is the matrix count with
// prime size parameter; the reference is the predicted main term multiple of
// li(x) for shift 2, and the ratio basis switches to the normalized complex
// sum for nonzero frequencies.
analytics::StatReport prime_weyl_A(i64 m1, i64 m2, int shift, i64 x, int threads = 1,
                                   const ProgressFn& progress = {});

}  // namespace hyperlab::elliptic
