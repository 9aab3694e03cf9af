#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "l1l2prox/quartic.hpp"

using namespace l1l2;

namespace {

// Long-double factored evaluation of the window polynomial, independent of the
// library's double-precision Horner path.
long double psi_ld(const QuarticCoeffs& c, long double t) {
  const long double k = static_cast<long double>(c.k);
  const long double s1 = c.s1;
  const long double s2 = c.s2;
  const long double mu = c.mu;
  const long double w = s2 - t;
  return t * t * w * w - mu * mu * (k * w * w + s1 * s1 * (2.0L * t - s2));
}

// Dense-scan reference root finder: sign changes on a fine grid, refined by
// bisection in long double.
std::vector<double> dense_roots(const QuarticCoeffs& c, double lo, double hi) {
  constexpr int kCells = 50000;
  std::vector<double> out;
  const long double a = lo;
  const long double b = hi;
  long double prev_t = a;
  long double prev_v = psi_ld(c, a);
  for (int i = 1; i <= kCells; ++i) {
    const long double t = a + (b - a) * i / kCells;
    const long double v = psi_ld(c, t);
    if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
      long double x0 = prev_t, x1 = t;
      for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (x0 + x1);
        const long double fm = psi_ld(c, mid);
        if (fm == 0) {
          x0 = x1 = mid;
          break;
        }
        if ((fm < 0) == (prev_v < 0))
          x0 = mid;
        else
          x1 = mid;
      }
      out.push_back(static_cast<double>(0.5L * (x0 + x1)));
    } else if (v == 0 && t > a && t < b) {
      out.push_back(static_cast<double>(t));
    }
    prev_t = t;
    prev_v = v;
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("quartic");

TEST_CASE("coeffs_from_sums expands the stationarity polynomial") {
  const QuarticCoeffs c = coeffs_from_sums(2, 3.0, 5.0, 1.0);
  CHECK(c.a4 == 1.0);
  CHECK(c.a3 == -10.0);
  CHECK(c.a2 == 23.0);
  CHECK(c.a1 == 2.0);
  CHECK(c.a0 == -5.0);
}

TEST_CASE("coeffs_from_sums hits the Cauchy-Schwarz boundary for equal components") {
  // k equal magnitudes give s1^2 == k*s2 exactly in binary for y in {0.5, 1, 2}.
  const QuarticCoeffs c = coeffs_from_sums(4, 4.0, 4.0, 0.5);
  CHECK(c.a0 == 0.0);
  CHECK(c.a1 == 0.0);
  CHECK(c.a2 == 15.0);
  CHECK(c.a3 == -8.0);
  CHECK(c.a4 == 1.0);
}

TEST_CASE("coeffs_from_sums rejects invalid inputs") {
  CHECK_THROWS_AS(coeffs_from_sums(1, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(coeffs_from_sums(2, 0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(coeffs_from_sums(2, -1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(coeffs_from_sums(2, 1.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(coeffs_from_sums(2, 1.0, 1.0, -1.0), Error);
  CHECK_NOTHROW(coeffs_from_sums(2, 1.0, 1.0, 0.0));
}

TEST_CASE("coeffs_from_sums separates rounding noise from genuine violations") {
  const double s1_ok = std::sqrt(10.0) * (1.0 + 1e-13);
  const double s1_bad = std::sqrt(10.0) * (1.0 + 1e-6);
  CHECK_NOTHROW(coeffs_from_sums(10, s1_ok, 1.0, 1.0));
  CHECK_THROWS_AS(coeffs_from_sums(10, s1_bad, 1.0, 1.0), CauchySchwarzError);
}

TEST_CASE("evaluate and derivative agree with direct arithmetic") {
  const QuarticCoeffs c = coeffs_from_sums(2, 3.0, 5.0, 1.0);
  for (double t : {0.0, 0.5, 1.0, 2.5, 4.0}) {
    const double direct = (((t - 10.0) * t + 23.0) * t + 2.0) * t - 5.0;
    const double ddirect = ((4.0 * t - 30.0) * t + 46.0) * t + 2.0;
    CHECK(evaluate(c, t) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(derivative(c, t) == doctest::Approx(ddirect).epsilon(1e-14));
  }
  CHECK(residual_scale(c, 2.0) > 0);
}

TEST_CASE("interval roots for a generic stationarity quartic") {
  const QuarticCoeffs c = coeffs_from_sums(2, 3.0, 5.0, 1.0);
  const IntervalRoots r = roots_in_interval(c, 0.0, 5.0);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == doctest::Approx(0.46820201123069444).epsilon(1e-12));
  CHECK(r.roots[1] == doctest::Approx(3.6481635285673888).epsilon(1e-12));
  CHECK(r.roots[0] < r.roots[1]);
  for (std::size_t i = 0; i < r.roots.size(); ++i)
    CHECK(residual_ok(c, r.roots[i], r.residuals[i]));

  // Narrowing the window drops the smaller root.
  const IntervalRoots upper = roots_in_interval(c, 2.0, 5.0);
  REQUIRE(upper.roots.size() == 1);
  CHECK(upper.roots[0] == doctest::Approx(3.6481635285673888).epsilon(1e-12));
}

TEST_CASE("interval roots in a shifted window") {
  const QuarticCoeffs c = coeffs_from_sums(2, 1.9, 1.81, 1.0);
  const IntervalRoots r = roots_in_interval(c, 0.1, 1.81);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == doctest::Approx(0.13907464068747424).epsilon(1e-12));
  CHECK(r.roots[1] == doctest::Approx(0.3680249531484111).epsilon(1e-12));
}

TEST_CASE("degenerate equal-component polynomial factors exactly") {
  // 4 copies of magnitude 1 with mu = 1/2: psi = t^2 (t^2 - 8 t + 15).
  const QuarticCoeffs c = coeffs_from_sums(4, 4.0, 4.0, 0.5);
  const std::vector<double> all = real_roots(c);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(all[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(all[2] == doctest::Approx(5.0).epsilon(1e-12));

  const IntervalRoots r = roots_in_interval(c, 0.0, 4.0);
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("mu zero collapses to a squared binomial with no interior roots") {
  const QuarticCoeffs c = coeffs_from_sums(3, 3.0, 5.0, 0.0);
  CHECK(c.a0 == 0.0);
  CHECK(c.a1 == 0.0);
  const IntervalRoots r = roots_in_interval(c, 0.0, 5.0);
  CHECK(r.roots.empty());  // endpoints 0 and s2 are excluded by the open window
}

TEST_CASE("real_roots on factored reference quartics") {
  QuarticCoeffs c{};
  c.a4 = 1.0;
  c.a3 = -10.0;
  c.a2 = 35.0;
  c.a1 = -50.0;
  c.a0 = 24.0;  // (x-1)(x-2)(x-3)(x-4)
  std::vector<double> r = real_roots(c);
  REQUIRE(r.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(r[i] == doctest::Approx(i + 1.0).epsilon(1e-10));

  c.a3 = -7.0;
  c.a2 = 17.0;
  c.a1 = -17.0;
  c.a0 = 6.0;  // (x-1)^2 (x-2)(x-3): the double root collapses after merging
  r = real_roots(c);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r[2] == doctest::Approx(3.0).epsilon(1e-8));

  c.a3 = -3.0;
  c.a2 = 3.0;
  c.a1 = -3.0;
  c.a0 = 2.0;  // (x-1)(x-2)(x^2+1)
  r = real_roots(c);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-10));

  c.a3 = 0.0;
  c.a2 = 0.0;
  c.a1 = 0.0;
  c.a0 = 1.0;  // x^4 + 1: no real roots
  CHECK(real_roots(c).empty());
}

TEST_CASE("window endpoints carry the expected signs") {
  // Magnitude and mu ranges keep the exact endpoint values well above the
  // Horner rounding noise of the s2^4-sized terms.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> mag(0.5, 4.0);
  std::uniform_real_distribution<double> mu_d(0.5, 4.0);
  std::uniform_int_distribution<std::size_t> kk(2, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = kk(rng);
    std::vector<double> z(k);
    for (double& v : z) v = mag(rng);
    std::sort(z.rbegin(), z.rend());
    double s1 = 0, s2 = 0;
    for (double v : z) {
      s1 += v;
      s2 += v * v;
    }
    const double mu = mu_d(rng);
    const QuarticCoeffs c = coeffs_from_sums(k, s1, s2, mu);
    // psi(0) = -mu^2 s2 (k s2 - s1^2) <= 0 and psi(s2) = -mu^2 s1^2 s2 < 0
    CHECK(evaluate(c, 0.0) <= 0.0);
    CHECK(evaluate(c, s2) < 0.0);
  }
}

TEST_CASE("interval roots match a dense long-double scan on random problems") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> mag(0.05, 5.0);
  std::uniform_real_distribution<double> mu_exp(-2.0, 1.0);
  std::uniform_int_distribution<std::size_t> kk(2, 8);
  int accepted = 0;
  for (int trial = 0; trial < 400 && accepted < 150; ++trial) {
    const std::size_t k = kk(rng);
    std::vector<double> z(k);
    for (double& v : z) v = mag(rng);
    std::sort(z.rbegin(), z.rend());
    double s1 = 0, s2 = 0;
    for (double v : z) {
      s1 += v;
      s2 += v * v;
    }
    const double mu = std::pow(10.0, mu_exp(rng));
    const QuarticCoeffs c = coeffs_from_sums(k, s1, s2, mu);
    const double lo = s2 - z.back() * s1;
    const double hi = s2;
    if (lo >= hi) continue;

    const std::vector<double> ref = dense_roots(c, lo, hi);
    // Skip instances where a reference root sits too close to the window edge
    // or two roots nearly coincide: those are adjudicated by explicit
    // tolerance rules, not by raw root-finding.
    bool fragile = false;
    const double margin = 1e-4 * hi;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (ref[i] - lo < margin || hi - ref[i] < margin) fragile = true;
      if (i > 0 && ref[i] - ref[i - 1] < margin) fragile = true;
    }
    if (fragile) continue;
    ++accepted;

    const IntervalRoots got = roots_in_interval(c, lo, hi);
    REQUIRE(got.roots.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
      CHECK(std::fabs(got.roots[i] - ref[i]) <= 1e-8 * hi);
  }
  CHECK(accepted >= 100);
}

TEST_CASE("near-boundary existence flips with a hair of slack") {
  // Two copies of magnitude 1: the window root exists iff mu < sqrt(2), and
  // just below the boundary it sits at 2 - sqrt(2) mu, about 2e-6.
  const double crit = std::sqrt(2.0);
  {
    const QuarticCoeffs c = coeffs_from_sums(2, 2.0, 2.0, crit * (1.0 - 1e-6));
    const IntervalRoots r = roots_in_interval(c, 0.0, 2.0);
    REQUIRE(r.roots.size() == 1);
    CHECK(std::fabs(r.roots[0] - 2e-6) < 1e-12);
  }
  {
    const QuarticCoeffs c = coeffs_from_sums(2, 2.0, 2.0, crit * (1.0 + 1e-6));
    const IntervalRoots r = roots_in_interval(c, 0.0, 2.0);
    CHECK(r.roots.empty());
  }
}

TEST_SUITE_END();
