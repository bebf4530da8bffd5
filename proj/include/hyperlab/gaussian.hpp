#pragma once
// Gaussian integers Z[i]: primary normalization, norm-representation lists,
// factorization into primary irreducibles, and the multiplicative angular
// sums W_m / W^P_m attached to split-prime angles.

#include <complex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperlab/arith.hpp"

namespace hyperlab::gaussian {

struct GaussInt {
  i64 re = 0, im = 0;
  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

GaussInt operator+(GaussInt u, GaussInt v);
GaussInt operator-(GaussInt u, GaussInt v);
GaussInt operator*(GaussInt u, GaussInt v);
GaussInt operator-(GaussInt u);
GaussInt conj(GaussInt z);
i64 norm(GaussInt z);
bool is_unit(GaussInt z);

// z = 1 mod (1+i)^3.
bool is_primary(GaussInt z);

// The unique unit u with u*z primary, returned as (u, u*z).
// Requires norm(z) odd (hence nonzero).
std::pair<GaussInt, GaussInt> primary_associate(GaussInt z);

// All z with norm(z) = n, deterministic order. n = 0 yields {0}.
std::vector<GaussInt> reps_with_norm(i64 n);

// Primary z with norm(z) = n; n must be odd and >= 1.
std::vector<GaussInt> primary_reps_with_norm(i64 n);

// Primary irreducible w above a split rational prime p = 1 mod 4, normalized
// so that im(w) > 0. Cornacchia descent, exact.
GaussInt solve_norm_prime(i64 p);

// Angle of solve_norm_prime(p) in (0, pi).
double prime_angle(i64 p);

struct PrimePower {
  GaussInt irr;
  int exp = 0;
};

struct GaussFactorization {
  GaussInt unit{1, 0};
  int two_exponent = 0;               // power of (1+i)
  std::vector<PrimePower> odd_part;   // primary irreducibles, deterministic order
};

// Factor z != 0 as unit * (1+i)^t * prod(primary irreducibles^e).
GaussFactorization factor(GaussInt z);
GaussInt reassemble(const GaussFactorization& f);

// Memoized split-prime data (primary irreducible + its angle) used by the
// bulk evaluation paths. Lazy single-threaded fill; prebuild before sharing
// across worker threads (readers use the const lookup).
class PrimaryTable {
 public:
  const GaussInt& primary_above(i64 p);
  double angle(i64 p);
  double angle_prebuilt(i64 p) const;  // throws invariant_error when missing
  void prebuild(const std::vector<i64>& primes);
  // Cache-or-build covering every split prime in the list; consults the
  // environment cache directory.
  void prepare(const std::vector<i64>& primes, i64 limit);
  std::size_t size() const { return tab_.size(); }
  // Binary cache round-trip keyed by the covered prime bound.
  bool load_cache(const std::string& dir, i64 limit);
  bool save_cache(const std::string& dir, i64 limit) const;

 private:
  struct Entry {
    GaussInt w;
    double theta = 0;
  };
  const Entry& get(i64 p);
  std::unordered_map<i64, Entry> tab_;
};

// Angular sum over primary representations: W^P_m(n), n >= 1.
// Point-query form (trial factorization) and bulk form (caller-supplied
// factorization plus prebuilt angle table).
std::complex<double> weyl_WP(i64 m, i64 n);
std::complex<double> weyl_WP(i64 m, const std::vector<std::pair<i64, int>>& fac,
                             const PrimaryTable& pt);

// Angular sum over all representations: vanishes unless 4 | m, equals
// 4 * W^P_m otherwise. Extended by W_m(0) = delta_{m,0} / 4 so that the
// factored matrix sums remain valid at the norm-0 corner.
std::complex<double> weyl_W(i64 m, i64 n);
std::complex<double> weyl_W(i64 m, i64 n, const std::vector<std::pair<i64, int>>& fac,
                            const PrimaryTable& pt);

// Representation lists rebuilt from a rational factorization (bulk paths).
std::vector<GaussInt> reps_from_factorization(const std::vector<std::pair<i64, int>>& fac,
                                              PrimaryTable& pt);
std::vector<GaussInt> primary_reps_from_factorization(
    const std::vector<std::pair<i64, int>>& fac, PrimaryTable& pt);

}  // namespace hyperlab::gaussian
