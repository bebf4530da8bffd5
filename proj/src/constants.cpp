#include "hyperlab/constants.hpp"

#include <cmath>

#include "hyperlab/sieve.hpp"

namespace hyperlab::analytics {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = 1.0 / std::log(lm), frm = 1.0 / std::log(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double li(double x) {
  if (!(x >= 2.0)) throw std::domain_error("li: x must be >= 2");
  if (x == 2.0) return 0.0;
  double a = 2.0, b = x;
  double fa = 1.0 / std::log(a), fb = 1.0 / std::log(b);
  double m = 0.5 * (a + b);
  double fm = 1.0 / std::log(m);
  double whole = simpson(a, b, fa, fm, fb);
  double tol = 1e-13 * std::max(1.0, whole);
  return adaptive(a, b, fa, fm, fb, whole, tol, 60);
}

EulerProduct euler_product(int character_modulus, i64 omit, i64 cutoff) {
  if (character_modulus != 4 && character_modulus != 8)
    throw std::domain_error("euler_product: character modulus must be 4 or 8");
  if (cutoff < 3) throw std::domain_error("euler_product: cutoff too small");
  auto chi = [character_modulus](i64 p) -> int {
    if (character_modulus == 4) {
      i64 r = p % 4;
      return r == 1 ? 1 : (r == 3 ? -1 : 0);
    }
    i64 r = p % 8;
    if (r == 1 || r == 7) return 1;
    if (r == 3 || r == 5) return -1;
    return 0;
  };
  EulerProduct out;
  out.cutoff = cutoff;
  out.tail_bound = 1.0 / (double)cutoff;  // sum_{p > P} 1/(p(p-1)) < 1/P
  double v = 1.0;
  for (i64 p : primes_up_to(cutoff)) {
    if (p == omit) continue;
    int c = chi(p);
    if (c) v *= 1.0 + (double)c / ((double)p * (double)(p - 1));
  }
  out.value = v;
  return out;
}

double elliptic_prime_constant(i64 cutoff) {
  return 8.0 * kPi * euler_product(4, 0, cutoff).value;
}

double log_eps() { return std::log(1.0 + std::sqrt(2.0)); }

double hyperbolic_main_constant(i64 cutoff) {
  double L = log_eps() / std::sqrt(2.0);
  return (12.0 / 5.0) * L * euler_product(8, 5, cutoff).value;
}

double hyperbolic_titchmarsh_constant(i64 cutoff) {
  double L = log_eps() / std::sqrt(2.0);
  return (6.0 / 5.0) * L * euler_product(8, 5, cutoff).value;
}

}  // namespace hyperlab::analytics
