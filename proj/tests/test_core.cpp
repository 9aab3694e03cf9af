#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "l1l2prox/core.hpp"

using namespace l1l2;

TEST_SUITE_BEGIN("core");

TEST_CASE("validate passes well-formed problems through") {
  const ProxProblem p{{1.0, 2.0}, 1.0, 1.0};
  CHECK(&validate(p) == &p);
  CHECK_NOTHROW(validate({{0.0, 0.0}, 0.5, 0.0}));
}

TEST_CASE("validate rejects each broken invariant") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate({{}, 1.0, 1.0}), EmptyVectorError);
  CHECK_THROWS_AS(validate({{1.0}, 0.0, 1.0}), BadMuError);
  CHECK_THROWS_AS(validate({{1.0}, -2.0, 1.0}), BadMuError);
  CHECK_THROWS_AS(validate({{1.0}, nan, 1.0}), BadMuError);
  CHECK_THROWS_AS(validate({{1.0}, 1.0, -0.1}), BadAError);
  CHECK_THROWS_AS(validate({{1.0}, 1.0, 1.1}), BadAError);
  CHECK_THROWS_AS(validate({{1.0}, 1.0, nan}), BadAError);
  CHECK_THROWS_AS(validate({{nan}, 1.0, 1.0}), NonFiniteError);
  CHECK_THROWS_AS(validate({{1.0, inf}, 1.0, 1.0}), NonFiniteError);
}

TEST_CASE("canonicalize sorts magnitudes and keeps signs") {
  const std::vector<double> y{-3.0, 1.0, 2.0};
  const CanonicalForm c = canonicalize(y);
  CHECK(c.sorted == std::vector<double>{3.0, 2.0, 1.0});
  CHECK(c.perm == std::vector<std::size_t>{0, 2, 1});
  CHECK(c.signs == std::vector<double>{-1.0, 1.0, 1.0});
}

TEST_CASE("canonicalize breaks magnitude ties by original index") {
  const std::vector<double> y{4.0, 4.0, 3.0, 3.0, 2.0, 2.0};
  const CanonicalForm c = canonicalize(y);
  CHECK(c.sorted == y);
  CHECK(c.perm == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});

  const std::vector<double> t{-2.0, 2.0};
  const CanonicalForm ct = canonicalize(t);
  CHECK(ct.perm == std::vector<std::size_t>{0, 1});
  CHECK(ct.signs == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("canonicalize maps zeros to zero signs") {
  const std::vector<double> y{0.0, 0.0};
  const CanonicalForm c = canonicalize(y);
  CHECK(c.sorted == std::vector<double>{0.0, 0.0});
  CHECK(c.signs == std::vector<double>{0.0, 0.0});
  CHECK(c.support_limit() == 0);
}

TEST_CASE("support_limit counts leading positive magnitudes") {
  CHECK(canonicalize(std::vector<double>{3.0, -2.0, 0.0, 0.0}).support_limit() == 2);
  CHECK(canonicalize(std::vector<double>{1.0, 2.0, 3.0}).support_limit() == 3);
}

TEST_CASE("canonicalize round-trips magnitudes bit-exactly") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> coin(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> len(1, 24);
    std::vector<double> y(len(rng));
    for (double& v : y) v = coin(rng) == 0 ? 0.0 : g(rng);
    if (coin(rng) == 1 && y.size() > 1) y[0] = -y[1];  // force a magnitude tie
    const CanonicalForm c = canonicalize(y);
    std::vector<bool> seen(y.size(), false);
    for (std::size_t i = 0; i < y.size(); ++i) {
      CHECK(c.sorted[i] == std::fabs(y[c.perm[i]]));
      if (i + 1 < y.size()) CHECK(c.sorted[i] >= c.sorted[i + 1]);
      CHECK(!seen[c.perm[i]]);
      seen[c.perm[i]] = true;
    }
    for (std::size_t j = 0; j < y.size(); ++j) CHECK(c.signs[j] * std::fabs(y[j]) == y[j]);
  }
}

TEST_CASE("reconstruct scales by the optimal radius and restores signs") {
  const std::vector<double> y{2.0, -2.0};
  const CanonicalForm c = canonicalize(y);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::vector<double> u{inv_sqrt2, inv_sqrt2};
  const std::vector<double> x = reconstruct(c, u);
  REQUIRE(x.size() == 2);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("reconstruct pads coordinates beyond the support with zeros") {
  const std::vector<double> y{3.0, 1.0, -2.0};
  const CanonicalForm c = canonicalize(y);
  const std::vector<double> u{1.0};
  const std::vector<double> x = reconstruct(c, u);
  CHECK(x == std::vector<double>{3.0, 0.0, 0.0});

  const CanonicalForm c1 = canonicalize(std::vector<double>{5.0});
  CHECK(reconstruct(c1, u) == std::vector<double>{5.0});
}

TEST_CASE("q_value at the origin is exactly half the norm plus mu a") {
  const ProxProblem p{{3.0, 4.0}, 2.0, 1.0};
  const std::vector<double> zero{0.0, 0.0};
  CHECK(q_value(zero, p) == 14.5);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    ProxProblem q;
    q.y.resize(4);
    for (double& v : q.y) v = g(rng);
    q.mu = 0.25 + trial * 0.1;
    q.a = trial % 3 == 0 ? 0.0 : (trial % 3 == 1 ? 0.5 : 1.0);
    const std::vector<double> z(4, 0.0);
    CHECK(q_value(z, q) == 0.5 * norm2sq(q.y) + q.mu * q.a);
  }
}

TEST_CASE("q_value dominates the quadratic part away from zero") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    ProxProblem p;
    p.y.resize(5);
    std::vector<double> x(5);
    for (double& v : p.y) v = g(rng);
    bool nonzero = false;
    for (double& v : x) {
      v = g(rng);
      nonzero = nonzero || v != 0;
    }
    REQUIRE(nonzero);
    double dist = 0;
    for (std::size_t i = 0; i < x.size(); ++i) dist += (x[i] - p.y[i]) * (x[i] - p.y[i]);
    CHECK(q_value(x, p) >= 0.5 * dist);
  }
}

TEST_CASE("q_value reproduces the published table objectives") {
  const ProxProblem p1{{4.0, 4.0, 3.0, 3.0, 2.0, 2.0}, 1.0, 1.0};
  const std::vector<double> x1{4.033, 4.033, 2.990, 2.990, 1.948, 1.948};
  CHECK(q_value(x1, p1) == doctest::Approx(2.360).epsilon(1e-3));

  const ProxProblem p2{{9.0, 7.0, 6.0, 4.0, 2.0}, 1.0, 1.0};
  const std::vector<double> x2{9.026, 7.004, 5.993, 3.970, 1.948};
  CHECK(q_value(x2, p2) == doctest::Approx(2.051).epsilon(1e-3));
}

TEST_SUITE_END();
