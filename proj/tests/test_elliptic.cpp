#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <tuple>
#include <vector>

#include "hyperlab/elliptic.hpp"

using namespace hyperlab;
using namespace hyperlab::elliptic;
using gaussian::GaussInt;

namespace {

// Every determinant-1 matrix with entry square sum n, found by scanning three
// entries and solving for the fourth square.
std::vector<UniModularMat> bruteforce_norm(i64 n) {
  std::vector<UniModularMat> out;
  i64 s = (i64)std::sqrt((double)n) + 1;
  for (i64 a = -s; a <= s; ++a)
    for (i64 b = -s; b <= s; ++b) {
      if (a * a + b * b > n) continue;
      for (i64 c = -s; c <= s; ++c) {
        i64 rem = n - a * a - b * b - c * c;
        if (rem < 0) continue;
        i64 d = (i64)std::llround(std::sqrt((double)rem));
        if (d * d != rem) continue;
        for (i64 dd : {d, -d}) {
          if (a * dd - b * c != 1) continue;
          out.push_back({a, b, c, dd});
          if (d == 0) break;
        }
      }
    }
  return out;
}

std::tuple<i64, i64, i64, i64> key(const UniModularMat& g) { return {g.a, g.b, g.c, g.d}; }

void sort_mats(std::vector<UniModularMat>& v) {
  std::sort(v.begin(), v.end(),
            [](const UniModularMat& u, const UniModularMat& w) { return key(u) < key(w); });
}

std::complex<double> phase_of(GaussInt z) {
  return std::polar(1.0, std::atan2((double)z.im, (double)z.re));
}

// Float reference for the angular matrix sum, straight from the angles.
std::complex<double> S_e_bruteforce(i64 m1, i64 m2, i64 n) {
  std::complex<double> acc = 0;
  for (const auto& g : enumerate_norm(n)) {
    CartanAngles ca = cartan_angles(g);
    acc += std::polar(1.0, 2.0 * ((double)m1 * ca.theta1 + (double)m2 * ca.theta2));
  }
  return acc;
}

}  // namespace

TEST_CASE("pair coordinates of small matrices") {
  UniModularMat rot{0, 1, -1, 0};
  CHECK(det(rot) == 1);
  CHECK(nu_H(rot) == 2);
  auto [r1, r2] = to_gauss_pair(rot);
  CHECK(r1 == GaussInt{0, 2});
  CHECK(r2 == GaussInt{0, 0});

  UniModularMat shear{1, 1, 0, 1};
  CHECK(nu_H(shear) == 3);
  auto [s1, s2] = to_gauss_pair(shear);
  CHECK(s1 == GaussInt{2, 1});
  CHECK(s2 == GaussInt{0, -1});
  CHECK(from_gauss_pair(s1, s2) == shear);
}

TEST_CASE("pair coordinate map round trips") {
  int found = 0;
  for (i64 n = 2; n <= 200; ++n)
    for (const auto& g : enumerate_norm(n)) {
      auto [z1, z2] = to_gauss_pair(g);
      CHECK(gaussian::norm(z1) == n + 2);
      CHECK(gaussian::norm(z2) == n - 2);
      CHECK(from_gauss_pair(z1, z2) == g);
      ++found;
    }
  CHECK(found > 500);
  // norms must differ by exactly 4
  CHECK_THROWS_AS((void)from_gauss_pair(GaussInt{1, 0}, GaussInt{0, 0}), std::domain_error);
  CHECK_THROWS_AS((void)from_gauss_pair(GaussInt{3, 1}, GaussInt{1, 1}), std::domain_error);
  // component parities must match for integer matrix entries
  CHECK_THROWS_AS((void)from_gauss_pair(GaussInt{2, 1}, GaussInt{1, 0}), std::domain_error);
}

TEST_CASE("exact enumeration against the quadruple scan") {
  auto two = enumerate_norm(2);
  REQUIRE(two.size() == 4);
  sort_mats(two);
  CHECK(two[0] == UniModularMat{-1, 0, 0, -1});
  CHECK(two[1] == UniModularMat{0, -1, 1, 0});
  CHECK(two[2] == UniModularMat{0, 1, -1, 0});
  CHECK(two[3] == UniModularMat{1, 0, 0, 1});
  for (i64 n = 2; n <= 300; ++n) {
    auto mine = enumerate_norm(n);
    auto ref = bruteforce_norm(n);
    REQUIRE(mine.size() == ref.size());
    sort_mats(mine);
    sort_mats(ref);
    CHECK(mine == ref);
    // no duplicates
    CHECK(std::adjacent_find(mine.begin(), mine.end()) == mine.end());
    if (n % 4 == 0 || n % 4 == 1) {
      if (n > 2) CHECK(mine.empty());
    }
    if (n % 4 == 3) CHECK(mine.size() % 8 == 0);
  }
}

TEST_CASE("angle coordinates satisfy the defining identities") {
  for (i64 n = 3; n <= 150; ++n)
    for (const auto& g : enumerate_norm(n)) {
      CartanAngles ca = cartan_angles(g);
      CHECK(ca.theta1 >= 0.0);
      CHECK(ca.theta1 < M_PI);
      CHECK(ca.theta2 >= 0.0);
      CHECK(ca.theta2 < M_PI);
      CHECK(std::cosh(ca.r) == doctest::Approx((double)n / 2).epsilon(1e-12));
      auto [z1, z2] = to_gauss_pair(g);
      auto p1 = phase_of(z1), p2 = phase_of(z2);
      CHECK(std::abs(std::polar(1.0, 2 * ca.theta1) - p1 * p2) < 1e-12);
      CHECK(std::abs(std::polar(1.0, 2 * ca.theta2) - p1 * std::conj(p2)) < 1e-12);
      // inverting the matrix trades the two angles and adds a quarter turn
      UniModularMat gi{g.d, -g.b, -g.c, g.a};
      CartanAngles ci = cartan_angles(gi);
      CHECK(std::abs(std::polar(1.0, 2 * ci.theta1) * std::polar(1.0, 2 * ca.theta2) + 1.0) <
            1e-12);
    }
}

TEST_CASE("angular matrix sums, direct exact form") {
  CHECK(S_e_direct(0, 0, 3).real() == doctest::Approx(16.0));
  CHECK(S_e_direct(0, 0, 3).imag() == doctest::Approx(0.0));
  for (i64 n = 3; n <= 150; ++n)
    for (i64 m1 = -3; m1 <= 3; ++m1)
      for (i64 m2 = -3; m2 <= 3; ++m2)
        CHECK(std::abs(S_e_direct(m1, m2, n) - S_e_bruteforce(m1, m2, n)) < 1e-9);
}

TEST_CASE("angular matrix sums factor through the one-variable sums") {
  CHECK(S_e_factored(0, 0, 2).real() == doctest::Approx(4.0));
  for (i64 n = 3; n <= 400; ++n)
    for (i64 m1 = -4; m1 <= 4; ++m1)
      for (i64 m2 = -4; m2 <= 4; ++m2) {
        auto d = S_e_direct(m1, m2, n);
        auto f = S_e_factored(m1, m2, n);
        CHECK(std::abs(d - f) < 1e-9);
        // odd total frequency kills the sum identically, not just numerically
        if ((m1 + m2) % 2 != 0) {
          CHECK(f.real() == 0.0);
          CHECK(f.imag() == 0.0);
        }
      }
  // sizes 0 and 1 mod 4 carry no matrices at all
  for (i64 n : {4, 5, 8, 9, 100, 101}) {
    CHECK(S_e_factored(0, 0, n) == std::complex<double>(0, 0));
    CHECK(S_e_factored(2, 2, n) == std::complex<double>(0, 0));
  }
}

TEST_CASE("bulk factored path matches the point evaluation") {
  analytics::SpfSieve sv(5000);
  PrimaryTable pt;
  pt.prebuild(sv.primes());
  for (i64 n = 3; n <= 4000; n += 7)
    for (i64 m1 : {0, 1, 2, 4})
      for (i64 m2 : {0, -1, 3}) {
        auto a = S_e_factored(m1, m2, n);
        auto b = S_e_factored(m1, m2, n, sv.factorize(n + 2), sv.factorize(n - 2), pt);
        CHECK(std::abs(a - b) < 1e-12);
      }
}

TEST_CASE("matrix counting in ranges") {
  auto rep = count_range(3);
  CHECK(rep.count == 20);
  CHECK(rep.mode == "elliptic_count");
  CHECK(rep.x_hi == 3);
  // cross-check the table-driven count against the explicit enumeration
  i64 direct = 0;
  for (i64 n = 2; n <= 300; ++n) direct += (i64)enumerate_norm(n).size();
  CHECK(count_range(300).count == direct);
  // ratio approaches the slope-6 line already at moderate size
  auto mid = count_range(20000);
  CHECK(mid.reference == doctest::Approx(120000.0));
  CHECK(mid.ratio == doctest::Approx(1.0).epsilon(0.02));
  // thread split cannot change the answer
  auto par = count_range(20000, 4);
  CHECK(par.count == mid.count);
  CHECK(analytics::to_json(par) == analytics::to_json(mid));
}

TEST_CASE("prime-size angular sums") {
  // shift 0 at x = 20: sizes 2, 3, 7, 11 contribute 4 + 16 + 16 + 16 matrices
  auto rep = prime_weyl_A(0, 0, 0, 20);
  CHECK(rep.count == 52);
  CHECK(rep.mode == "elliptic_prime_weyl");
  CHECK(rep.metadata.at("shift") == "0");

  analytics::SpfSieve sv(200);
  for (int shift : {0, 2}) {
    // counts agree with the explicit enumeration at every prime size
    i64 want = 0;
    std::complex<double> wsum2 = 0, wsum3 = 0;
    for (i64 p = 2; p <= 100; ++p) {
      if (!sv.is_prime(p)) continue;
      i64 n = p - shift;
      if (n < 2) continue;
      want += (i64)enumerate_norm(n).size();
      if (n == 2) {
        wsum2 += S_e_factored(2, 0, 2);
        wsum3 += S_e_factored(1, 1, 2);
      } else if (n % 4 == 3) {
        wsum2 += S_e_direct(2, 0, n);
        wsum3 += S_e_direct(1, 1, n);
      }
    }
    auto c = prime_weyl_A(0, 0, shift, 100);
    CHECK(c.count == want);
    CHECK(std::abs(c.complex_sum.real() - (double)want) < 1e-9);
    auto w2 = prime_weyl_A(2, 0, shift, 100);
    CHECK(std::abs(w2.complex_sum - wsum2) < 1e-9);
    CHECK(w2.count == want);
    auto w3 = prime_weyl_A(1, 1, shift, 100);
    CHECK(std::abs(w3.complex_sum - wsum3) < 1e-9);
  }

  // deterministic under threading
  auto a = prime_weyl_A(2, 0, 2, 30000, 1);
  auto b = prime_weyl_A(2, 0, 2, 30000, 4);
  CHECK(analytics::to_json(a) == analytics::to_json(b));
  CHECK_THROWS_AS((void)prime_weyl_A(0, 0, 1, 100), std::domain_error);
}
