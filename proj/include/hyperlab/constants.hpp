#pragma once
// Main-term ingredients: the logarithmic integral, truncated Euler products
// over character-twisted primes, and the closed-form leading constants.

#include "hyperlab/arith.hpp"

namespace hyperlab::analytics {

// Logarithmic integral from 2: li(x) = int_2^x dt / log t, x >= 2.
// Adaptive Simpson quadrature, relative accuracy well below 1e-10.
double li(double x);

struct EulerProduct {
  double value = 0;
  double tail_bound = 0;  // |log remainder| < 1/cutoff
  i64 cutoff = 0;
};

// prod over primes p <= cutoff, p != omit, of (1 + chi(p) / (p (p - 1))),
// chi the quadratic character mod 4 or mod 8.
EulerProduct euler_product(int character_modulus, i64 omit, i64 cutoff);

// Slope of the prime main term on the elliptic side: 8 pi * prod_mod4.
double elliptic_prime_constant(i64 cutoff);

// Hyperbolic side: the prime-count / psi constant C = (12/5) L(1, chi8) *
// prod_{p != 5}, its half C' = C / 2 entering the residue-restricted sums,
// with L(1, chi8) = log(1 + sqrt 2) / sqrt 2.
double hyperbolic_main_constant(i64 cutoff);        // C
double hyperbolic_titchmarsh_constant(i64 cutoff);  // C'

// Fundamental-unit logarithm log(1 + sqrt 2).
double log_eps();

}  // namespace hyperlab::analytics
