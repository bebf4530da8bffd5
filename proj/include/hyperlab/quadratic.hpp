#pragma once
// The ring Z[sqrt(2)]: totally positive elements modulo the square of the
// fundamental unit eps = 1 + sqrt(2), canonical window representatives,
// the divisor function N2 twisted by the mod-8 character, the unit-circle
// coordinate lambda, and the multiplicative angular sums U_k.

#include <complex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperlab/arith.hpp"

namespace hyperlab::quadratic {

struct QuadInt {
  i64 a = 0, b = 0;  // a + b*sqrt(2)
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

i64 norm(QuadInt z);  // a^2 - 2 b^2
QuadInt sigma(QuadInt z);
QuadInt mul(QuadInt u, QuadInt v);
QuadInt neg(QuadInt z);

// Exact sign of the real embedding a + b*sqrt(2).
int sign_embed(QuadInt z);
bool is_totally_positive(QuadInt z);

// Quadratic character mod 8: +1 at 1,7; -1 at 3,5; 0 at even n.
int chi8(i64 n);

// Twisted divisor count sum_{d | n} chi8(d); n >= 1. Point query.
i64 N2(i64 n);

// Exact membership in the canonical window sqrt(n) <= z < eps^2 sqrt(n).
// Requires z totally positive with norm(z) = n > 0.
bool in_window(QuadInt z, i64 n);

// Walk z along multiplication by eps^{+-2} into the canonical window.
// Requires z totally positive with positive norm.
QuadInt reduce_class(QuadInt z);

// All window representatives of norm n (one per class), y ascending. n >= 1.
std::vector<QuadInt> class_reps_with_norm(i64 n);

// Angle of lambda(z) = (z/|sigma z|... ) : (pi / (4 log eps)) * log(z / sigma z),
// normalized into [0, 2*pi). Requires z totally positive.
double lambda_angle(QuadInt z);
std::complex<double> lambda_phase(QuadInt z);

// Window representative above a split rational prime q (chi8(q) = 1) or q = 2.
QuadInt solve_norm_prime(i64 q);

// Memoized split-prime representatives and their lambda angles.
class ClassTable {
 public:
  const QuadInt& rho(i64 q);
  double angle(i64 q);
  double angle_prebuilt(i64 q) const;
  void prebuild(const std::vector<i64>& primes);
  void prepare(const std::vector<i64>& primes, i64 limit);  // cache-or-build
  std::size_t size() const { return tab_.size(); }
  bool load_cache(const std::string& dir, i64 limit);
  bool save_cache(const std::string& dir, i64 limit) const;

 private:
  struct Entry {
    QuadInt r;
    double t = 0;
  };
  const Entry& get(i64 q);
  std::unordered_map<i64, Entry> tab_;
};

// Angular sum over window representatives: U_k(n) = sum lambda(z)^k over
// D_K(n). k must be even (domain error otherwise); n >= 1.
std::complex<double> U_k(i64 k, i64 n);
std::complex<double> U_k(i64 k, const std::vector<std::pair<i64, int>>& fac,
                         const ClassTable& ct);

// Window representatives rebuilt from a rational factorization (bulk paths).
std::vector<QuadInt> class_reps_from_factorization(const std::vector<std::pair<i64, int>>& fac,
                                                   ClassTable& ct);

}  // namespace hyperlab::quadratic
