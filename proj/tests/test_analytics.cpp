#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "hyperlab/analytics.hpp"
#include "hyperlab/cache.hpp"
#include "hyperlab/constants.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/sieve.hpp"
#include "hyperlab/stat_report.hpp"

using namespace hyperlab;
using namespace hyperlab::analytics;

TEST_CASE("smallest-factor sieve against naive factoring") {
  SpfSieve sv(10000);
  CHECK(sv.limit() == 10000);
  for (i64 n = 2; n <= 10000; ++n) {
    i64 p = 0;
    for (i64 d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        p = d;
        break;
      }
    if (p == 0) p = n;
    CHECK(sv.spf(n) == p);
    CHECK(sv.is_prime(n) == (p == n));
    // factorization multiplies back and is sorted with positive exponents
    i64 prod = 1;
    i64 last = 0;
    for (auto [q, e] : sv.factorize(n)) {
      CHECK(q > last);
      CHECK(e >= 1);
      last = q;
      for (int i = 0; i < e; ++i) prod *= q;
    }
    CHECK(prod == n);
  }
  CHECK(sv.factorize(1).empty());
  // prime list agrees with the standalone bit sieve
  CHECK(sv.primes() == primes_up_to(10000));
  CHECK(primes_up_to(1) == std::vector<i64>{});
  CHECK(primes_up_to(2) == std::vector<i64>{2});
}

TEST_CASE("mangoldt weights") {
  SpfSieve sv(200);
  CHECK(sv.mangoldt(1) == 0.0);
  CHECK(sv.mangoldt(2) == doctest::Approx(std::log(2.0)));
  CHECK(sv.mangoldt(6) == 0.0);
  CHECK(sv.mangoldt(8) == doctest::Approx(std::log(2.0)));
  CHECK(sv.mangoldt(49) == doctest::Approx(std::log(7.0)));
  CHECK(sv.mangoldt(97) == doctest::Approx(std::log(97.0)));
  CHECK(sv.mangoldt(100) == 0.0);
  // Chebyshev sum stays near its size
  double psi = 0;
  for (i64 n = 1; n <= 200; ++n) psi += sv.mangoldt(n);
  CHECK(psi == doctest::Approx(200.0).epsilon(0.08));
}

TEST_CASE("memory cap guard") {
  CHECK_THROWS_AS(SpfSieve(10000, 1024), cap_error);
  CHECK_NOTHROW(SpfSieve(100, 1024));
}

TEST_CASE("multiplicative tables") {
  SpfSieve sv(5000);
  auto r4 = r4_table(sv);
  auto n2 = n2_table(sv);
  REQUIRE(r4.size() == 5001);
  REQUIRE(n2.size() == 5001);
  CHECK(r4[0] == 0);
  CHECK(n2[0] == 0);
  for (i64 n = 1; n <= 5000; ++n) {
    // quarter count of two-square representations, by direct lattice scan
    i64 cnt = 0;
    i64 s = (i64)std::sqrt((double)n) + 1;
    for (i64 a = -s; a <= s; ++a)
      for (i64 b = -s; b <= s; ++b)
        if (a * a + b * b == n) ++cnt;
    CHECK(4 * r4[(std::size_t)n] == cnt);
    // twisted divisor sum straight from the divisors
    i64 tw = 0;
    for (i64 d = 1; d <= n; ++d)
      if (n % d == 0) tw += quadratic::chi8(d);
    CHECK(n2[(std::size_t)n] == tw);
  }
}

TEST_CASE("logarithmic integral") {
  CHECK(li(10.0) == doctest::Approx(5.12043572466980515).epsilon(1e-10));
  CHECK(li(100.0) == doctest::Approx(29.0809778039621371).epsilon(1e-10));
  CHECK(li(1e4) == doctest::Approx(1245.09205211927097).epsilon(1e-10));
  CHECK(li(1e5) == doctest::Approx(9628.76383727068071).epsilon(1e-10));
  CHECK(li(3e5) == doctest::Approx(26085.6470283198226).epsilon(1e-10));
  CHECK(li(1e6) == doctest::Approx(78626.5039956820644).epsilon(1e-10));
  CHECK(li(2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)li(1.5), std::domain_error);
}

TEST_CASE("euler products and leading constants") {
  auto p4 = euler_product(4, 0, 10'000'000);
  CHECK(p4.value == doctest::Approx(0.851170827162566361).epsilon(1e-12));
  CHECK(p4.tail_bound == doctest::Approx(1e-7));
  CHECK(p4.cutoff == 10'000'000);
  auto p8 = euler_product(8, 5, 10'000'000);
  CHECK(p8.value == doctest::Approx(0.841366789799704774).epsilon(1e-12));
  CHECK_THROWS_AS((void)euler_product(3, 0, 100), std::domain_error);

  CHECK(elliptic_prime_constant(10'000'000) ==
        doctest::Approx(21.3922561405109289).epsilon(1e-12));
  double C = hyperbolic_main_constant(10'000'000);
  double Cp = hyperbolic_titchmarsh_constant(10'000'000);
  CHECK(C == doctest::Approx(1.25846644708544606).epsilon(1e-12));
  CHECK(Cp == doctest::Approx(0.629233223542723028).epsilon(1e-12));
  CHECK(C == doctest::Approx(2.0 * Cp).epsilon(1e-15));
  CHECK(log_eps() == doctest::Approx(0.881373587019543025).epsilon(1e-15));
  // truncation direction: lengthening the product only refines the value
  auto p4small = euler_product(4, 0, 100'000);
  CHECK(std::abs(p4small.value - p4.value) < p4small.tail_bound);
}

TEST_CASE("report merge and serialization") {
  StatReport a;
  a.mode = "elliptic_count";
  a.x_lo = 2;
  a.x_hi = 1000;
  a.count = 9007199254740993LL;  // above 2^53: integrity must survive the round trip
  a.weighted_sum = 1.25;
  a.complex_sum = {0.5, -2.0};
  a.metadata["ratio_basis"] = "count";
  a.reference = 9.007199254740992e15;
  finalize_ratio(a);

  StatReport b = a;
  b.x_lo = 1001;
  b.x_hi = 2000;
  b.count = 7;
  b.complex_sum = {1.0, 1.0};
  b.weighted_sum = 0.75;

  StatReport ab = merge(a, b), ba = merge(b, a);
  CHECK(to_json(ab) == to_json(ba));
  CHECK(ab.count == 9007199254741000LL);
  CHECK(ab.x_lo == 2);
  CHECK(ab.x_hi == 2000);
  CHECK(ab.weighted_sum == doctest::Approx(2.0));
  CHECK(ab.complex_sum.real() == doctest::Approx(1.5));

  StatReport c = a;
  c.mode = "hyperbolic_count";
  CHECK_THROWS_AS((void)merge(a, c), invariant_error);
  StatReport d = b;
  d.metadata["ratio_basis"] = "weighted_sum";
  CHECK_THROWS_AS((void)merge(a, d), invariant_error);

  // lossless serialization both ways, including the exact big count
  StatReport ja = from_json(to_json(a));
  CHECK(to_json(ja) == to_json(a));
  CHECK(ja.count == a.count);
  StatReport ca = from_csv(to_csv(a));
  CHECK(ca.count == a.count);
  CHECK(to_json(ca) == to_json(a));
  CHECK(to_csv(ca) == to_csv(a));
  // table output carries the headline numbers
  std::string tab = to_table(a);
  CHECK(tab.find("elliptic_count") != std::string::npos);
  CHECK(tab.find("9007199254740993") != std::string::npos);
}

TEST_CASE("metadata with awkward csv characters") {
  StatReport a;
  a.mode = "elliptic_count";
  a.metadata["note"] = "grid=8, boxes; \"anchored\"";
  a.metadata["ratio_basis"] = "count";
  StatReport back = from_csv(to_csv(a));
  CHECK(back.metadata.at("note") == a.metadata.at("note"));
  CHECK(to_json(back) == to_json(a));
}

TEST_CASE("block scheduler determinism") {
  auto work = [](i64 lo, i64 hi) {
    double s = 0;
    for (i64 i = lo; i < hi; ++i) s += std::sqrt((double)i);
    return s;
  };
  auto p1 = run_blocked<double>(1, 100001, 1 << 10, 1, work);
  auto p8 = run_blocked<double>(1, 100001, 1 << 10, 8, work);
  REQUIRE(p1.size() == p8.size());
  for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == p8[i]);
  int calls = 0;
  auto p2 = run_blocked<double>(1, 1001, 100, 2, work, [&](i64 done, i64 total) {
    CHECK(done <= total);
    ++calls;
  });
  CHECK(calls > 0);
  CHECK(p2.size() == 10);
}

TEST_CASE("sample construction by case and size") {
  auto e3 = build_sample(SampleCase::elliptic_all, 3, true);
  CHECK(e3.points.size() == 16);
  CHECK(e3.source == SampleCase::elliptic_all);
  CHECK(e3.primes_only);
  auto es9 = build_sample(SampleCase::elliptic_shifted, 9, true);
  CHECK(es9.points.size() == 16);
  auto h7 = build_sample(SampleCase::hyperbolic_all, 7, true);
  CHECK(h7.points.size() == 4);

  // unrestricted totals match the closed-form counts
  auto e100 = build_sample(SampleCase::elliptic_all, 100, false);
  i64 want = 0;
  for (i64 n = 3; n <= 100; ++n) want += (i64)elliptic::enumerate_norm(n).size();
  CHECK((i64)e100.points.size() == want);
  auto h20 = build_sample(SampleCase::hyperbolic_all, 20, false);
  i64 hw = 0;
  for (i64 n = 1; n <= 20; ++n) hw += (i64)quaternion::enumerate_cosets(n).size();
  CHECK((i64)h20.points.size() == hw);

  // the shifted family is the plain family with the size cut moved by two
  auto ea = build_sample(SampleCase::elliptic_all, 98, false);
  auto eb = build_sample(SampleCase::elliptic_shifted, 100, false);
  REQUIRE(ea.points.size() == eb.points.size());
  CHECK(ea.points == eb.points);

  // one point per primary pair in the odd-class family
  auto ep = build_sample(SampleCase::elliptic_pairs, 100, false);
  i64 pairs = 0;
  for (i64 n = 3; n <= 100; n += 4)
    pairs += (i64)(gaussian::primary_reps_with_norm(n + 2).size() *
                   gaussian::primary_reps_with_norm(n - 2).size());
  CHECK((i64)ep.points.size() == pairs);

  // the paired family is exactly the non-shifted half of the full one
  auto hp = build_sample(SampleCase::hyperbolic_pairs, 20, false);
  REQUIRE(hp.points.size() * 2 == h20.points.size());
  for (std::size_t i = 0; i < hp.points.size(); ++i) {
    CHECK(hp.points[i] == h20.points[2 * i]);
    double d1 = std::abs(h20.points[2 * i + 1][0] -
                         (hp.points[i][0] < 0.5 ? hp.points[i][0] + 0.5 : hp.points[i][0] - 0.5));
    CHECK(d1 < 1e-15);
  }

  CHECK(sample_case_from_name("E") == SampleCase::elliptic_all);
  CHECK(sample_case_from_name("script_H") == SampleCase::hyperbolic_pairs);
  CHECK(sample_case_from_name("hyperbolic_all") == SampleCase::hyperbolic_all);
  CHECK_THROWS_AS((void)sample_case_from_name("bogus"), std::invalid_argument);
  CHECK(sample_case_name(SampleCase::elliptic_shifted) == "elliptic_shifted");
}

namespace {

// Compare two torus-point multisets up to floating jitter.  Sorting alone is
// not enough: points that share one coordinate up to ~1e-16 can land in either
// order, so pair each point greedily with an unused partner nearby in the
// sorted sequence, measuring each coordinate as a distance on the circle.
void check_point_multisets_match(std::vector<std::array<double, 2>> a,
                                 std::vector<std::array<double, 2>> b) {
  REQUIRE(a.size() == b.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  auto circ = [](double x, double y) {
    double d = std::abs(x - y);
    return std::min(d, 1.0 - d);
  };
  std::vector<char> used(b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t lo = i >= 64 ? i - 64 : 0;
    std::size_t hi = std::min(b.size(), i + 64);
    bool matched = false;
    for (std::size_t j = lo; j < hi && !matched; ++j) {
      if (used[j]) continue;
      if (circ(a[i][0], b[j][0]) < 1e-9 && circ(a[i][1], b[j][1]) < 1e-9) {
        used[j] = 1;
        matched = true;
      }
    }
    INFO("point (", a[i][0], ", ", a[i][1], ")");
    CHECK(matched);
  }
}

}  // namespace

TEST_CASE("elliptic sample points against the matrix route") {
  auto s = build_sample(SampleCase::elliptic_all, 100, false);
  std::vector<std::array<double, 2>> direct;
  for (i64 n = 3; n <= 100; ++n)
    for (const auto& g : elliptic::enumerate_norm(n)) {
      elliptic::CartanAngles ca = elliptic::cartan_angles(g);
      direct.push_back({ca.theta1 / M_PI, ca.theta2 / M_PI});
    }
  check_point_multisets_match(s.points, direct);
}

TEST_CASE("hyperbolic sample points against the decomposition route") {
  auto s = build_sample(SampleCase::hyperbolic_all, 20, false);
  const double L4 = 4.0 * log_eps();
  std::vector<std::array<double, 2>> direct;
  auto frac = [](double t) { return t - std::floor(t); };
  for (i64 n = 1; n <= 20; ++n)
    for (const auto& q : quaternion::enumerate_cosets(n)) {
      auto d = quaternion::hyperbolic_decompose(quaternion::embed(q));
      direct.push_back({frac(std::log(d.y1) / L4), frac(std::log(d.y2) / L4)});
    }
  check_point_multisets_match(s.points, direct);
}

TEST_CASE("weyl sum tables") {
  TorusSample s;
  s.source = SampleCase::elliptic_all;
  s.points = {{0.0, 0.0}, {0.5, 0.5}};
  auto t = weyl_table(s, 2);
  REQUIRE(t.size() == 5);
  REQUIRE(t[0].size() == 5);
  auto at = [&](int m1, int m2) { return t[(std::size_t)(m1 + 2)][(std::size_t)(m2 + 2)]; };
  CHECK(std::abs(at(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(at(1, 1) - 1.0) < 1e-13);
  CHECK(std::abs(at(1, 0)) < 1e-13);
  CHECK(std::abs(at(0, 1)) < 1e-13);
  CHECK(std::abs(at(2, -1)) < 1e-13);
  CHECK(std::abs(at(2, 2) - 1.0) < 1e-13);
  CHECK(std::abs(at(-1, -1) - std::conj(at(1, 1))) < 1e-15);

  // threaded evaluation of a real sample is bit-deterministic
  auto big = build_sample(SampleCase::elliptic_all, 2000, false);
  auto w1 = weyl_table(big, 3, 1);
  auto w4 = weyl_table(big, 3, 4);
  for (std::size_t i = 0; i < w1.size(); ++i)
    for (std::size_t j = 0; j < w1[i].size(); ++j) {
      CHECK(w1[i][j].real() == w4[i][j].real());
      CHECK(w1[i][j].imag() == w4[i][j].imag());
    }
}

TEST_CASE("box discrepancy") {
  TorusSample s;
  s.source = SampleCase::elliptic_all;
  s.points = {{0.0, 0.0}};
  CHECK(box_discrepancy(s, 2) == doctest::Approx(0.75));
  // a perfect 16x16 lattice has tiny anchored-box discrepancy at grid 16
  TorusSample lat;
  lat.source = SampleCase::elliptic_all;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      lat.points.push_back({(double)i / 16.0, (double)j / 16.0});
  CHECK(box_discrepancy(lat, 16) == doctest::Approx(0.0));
  // on real data the threaded scan matches and shrinks with the sample
  auto small = build_sample(SampleCase::elliptic_all, 500, false);
  auto large = build_sample(SampleCase::elliptic_all, 5000, false);
  double ds = box_discrepancy(small, 8);
  double dl = box_discrepancy(large, 8, 4);
  CHECK(dl == doctest::Approx(box_discrepancy(large, 8, 1)));
  CHECK(dl < ds);
  CHECK(ds < 0.2);
}

TEST_CASE("marginal discrepancy") {
  double d0 = marginal_discrepancy(SampleCase::elliptic_all, 3000, false, 0, 1024);
  double d1 = marginal_discrepancy(SampleCase::elliptic_all, 3000, false, 1, 1024);
  CHECK(d0 > 0.0);
  CHECK(d0 < 0.2);
  CHECK(d1 > 0.0);
  CHECK(d1 < 0.2);
  CHECK_THROWS_AS((void)marginal_discrepancy(SampleCase::elliptic_all, 100, false, 2, 16),
                  std::domain_error);
}

TEST_CASE("memo files") {
  std::string dir = "/tmp/hyperlab_test_cache";
  std::remove((dir + "/probe.hpl").c_str());
  (void)std::system(("mkdir -p " + dir).c_str());
  std::vector<std::array<i64, 3>> rows = {
      {2, 1, 1}, {7, 3, 1}, {9007199254740993LL, -5, 2}};
  CHECK(cache::save_triples(dir, "probe", rows));
  auto back = cache::load_triples(dir, "probe");
  REQUIRE(back.has_value());
  CHECK(*back == rows);
  CHECK(!cache::load_triples(dir, "absent").has_value());
  // corrupt header
  {
    std::ofstream f(dir + "/bad.hpl", std::ios::binary);
    f << "NOPE";
  }
  CHECK(!cache::load_triples(dir, "bad").has_value());
  // truncated payload
  {
    std::string good;
    {
      std::ifstream f(dir + "/probe.hpl", std::ios::binary);
      good.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    std::ofstream f(dir + "/trunc.hpl", std::ios::binary);
    f.write(good.data(), (std::streamsize)good.size() - 8);
  }
  CHECK(!cache::load_triples(dir, "trunc").has_value());
  CHECK(!cache::save_triples("", "probe", rows));

  // environment variable plumbing
  setenv("HYPERLAB_CACHE_DIR", dir.c_str(), 1);
  auto env = cache::env_cache_dir();
  REQUIRE(env.has_value());
  CHECK(*env == dir);
  unsetenv("HYPERLAB_CACHE_DIR");
  CHECK(!cache::env_cache_dir().has_value());

  // the split-prime tables rebuild identically through the cache
  SpfSieve sv(2000);
  gaussian::PrimaryTable pt1, pt2;
  pt1.prepare(sv.primes(), 2000);
  CHECK(pt1.save_cache(dir, 2000));
  CHECK(pt2.load_cache(dir, 2000));
  for (i64 p : sv.primes())
    if (p % 4 == 1) CHECK(pt1.angle_prebuilt(p) == pt2.angle_prebuilt(p));
}
