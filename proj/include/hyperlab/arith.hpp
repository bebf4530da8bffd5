#pragma once
// Shared exact integer arithmetic helpers.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Raised when an internal consistency check fails (as opposed to a caller
// violating a documented precondition, which raises std::domain_error /
// std::invalid_argument).
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when a requested computation exceeds a configured resource bound.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// floor(sqrt(n)) computed exactly; n >= 0.
i64 isqrt64(i64 n);

// Exact sign of a + b*sqrt(2) as -1 / 0 / +1.
int sign_a_plus_b_sqrt2(i128 a, i128 b);

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);

// Tonelli-Shanks square root of a modulo an odd prime p.
// Returns nullopt when a is a non-residue.
std::optional<u64> sqrt_mod_prime(u64 a, u64 p);

// Trial-division factorization of n >= 1 into (prime, exponent) pairs,
// primes ascending. Intended for point queries only; bulk paths use a sieve.
std::vector<std::pair<i64, int>> factor_trial(i64 n);

}  // namespace hyperlab
