#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mpec/theta.hpp"

using namespace mpec;
using theta::ThetaFamily;
using Big = boost::multiprecision::cpp_dec_float_50;

TEST_CASE("eval: closed forms at hand-checked points") {
  CHECK(theta::eval(ThetaFamily::one(0.01), 0.0) == 0.0);
  CHECK(theta::eval(ThetaFamily::one(0.5), 0.5) == doctest::Approx(0.5).epsilon(1e-15));

  const double weibull = static_cast<double>(Big(1) - boost::multiprecision::exp(Big(-1)));
  CHECK(theta::eval(ThetaFamily::weibull(1.0, 1.0), 1.0) == doctest::Approx(weibull).epsilon(1e-15));
  CHECK(weibull == doctest::Approx(0.6321205588).epsilon(1e-10));

  const double lg = static_cast<double>(boost::multiprecision::log(Big(2)) /
                                        boost::multiprecision::log(Big(3)));
  CHECK(theta::eval(ThetaFamily::log(1.0), 1.0) == doctest::Approx(lg).epsilon(1e-15));
  CHECK(lg == doctest::Approx(0.6309297536).epsilon(1e-10));
}

TEST_CASE("eval is exactly zero at the origin for every kind") {
  for (double r : {1e-6, 1e-2, 1.0, 10.0}) {
    CHECK(theta::eval(ThetaFamily::one(r), 0.0) == 0.0);
    CHECK(theta::eval(ThetaFamily::log(r), 0.0) == 0.0);
    CHECK(theta::eval(ThetaFamily::weibull(0.5, r), 0.0) == 0.0);
    CHECK(theta::eval(ThetaFamily::weibull(2.0, r), 0.0) == 0.0);
  }
}

TEST_CASE("domain errors and construction checks") {
  CHECK_THROWS_AS(theta::eval(ThetaFamily::one(0.1), -1e-3), DomainError);
  CHECK_THROWS_AS(theta::deriv(ThetaFamily::log(0.1), -1.0), DomainError);
  CHECK_THROWS_AS(theta::deriv(ThetaFamily::weibull(0.5, 0.1), 0.0), SingularDerivative);
  CHECK_NOTHROW(theta::deriv(ThetaFamily::weibull(0.5, 0.1), 1e-3));
  CHECK_THROWS_AS(ThetaFamily::one(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaFamily::one(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaFamily::weibull(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaFamily::parse("cubic", 0.1), std::invalid_argument);
}

TEST_CASE("parse and name round trip") {
  CHECK(ThetaFamily::parse("one", 0.1) == ThetaFamily::one(0.1));
  CHECK(ThetaFamily::parse("weibull", 0.1) == ThetaFamily::weibull(1.0, 0.1));
  CHECK(ThetaFamily::parse("weibull:0.5", 0.1).shape() == 0.5);
  CHECK(ThetaFamily::parse("log", 0.2).name() == "log");
  CHECK(ThetaFamily::weibull(0.5, 1.0).name() == "weibull:0.5");
  CHECK(ThetaFamily::one(0.1).with_r(0.3).r() == 0.3);
}

TEST_CASE("deriv: hand-checked values") {
  CHECK(theta::deriv(ThetaFamily::one(1.0), 0.0) == 1.0);
  CHECK(theta::deriv(ThetaFamily::weibull(1.0, 2.0), 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  const Big d = Big("0.1") / ((Big("0.9") + Big("0.1")) * (Big("0.9") + Big("0.1")));
  CHECK(theta::deriv(ThetaFamily::one(0.1), 0.9) ==
        doctest::Approx(static_cast<double>(d)).epsilon(1e-15));
}

TEST_CASE("deriv agrees with central differences of eval") {
  const ThetaFamily fams[] = {ThetaFamily::one(0.1),          ThetaFamily::log(0.1),
                              ThetaFamily::weibull(1.0, 0.1), ThetaFamily::weibull(0.5, 0.1),
                              ThetaFamily::weibull(2.0, 0.1), ThetaFamily::one(1e-3)};
  for (const auto& fam : fams) {
    const double r = fam.r();
    for (int i = 0; i <= 20; ++i) {
      const double x = r / 10 * std::pow(100.0, i / 20.0);
      const double h = 1e-5 * x;
      const double fd = (theta::eval(fam, x + h) - theta::eval(fam, x - h)) / (2 * h);
      const double an = theta::deriv(fam, x);
      CAPTURE(fam.name());
      CAPTURE(x);
      // Plus the rounding noise of the difference quotient (θ ≤ 1), which
      // matters only in the flat tail of Weibull k = 2.
      CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an) + 10 * DBL_EPSILON / h);
    }
  }
}

TEST_CASE("validate_conditions accepts the built-in families") {
  for (const auto& fam : {ThetaFamily::one(1e-2), ThetaFamily::log(1e-2),
                          ThetaFamily::weibull(1.0, 1e-2), ThetaFamily::weibull(0.5, 1e-2)}) {
    const auto report = theta::validate_conditions(fam);
    CAPTURE(fam.name());
    for (const auto& c : report.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
    CHECK(report.all_passed());
  }
}

TEST_CASE("validate_conditions reports a witness for a linear clipped function") {
  theta::SmoothingFunction clipped{"clipped", [](double x, double) { return std::min(x, 1.0); },
                                   [](double x, double) { return x < 1.0 ? 1.0 : 0.0; }};
  const auto report = theta::validate_conditions(clipped, 0.1);
  CHECK_FALSE(report.all_passed());
  const theta::CheckResult* concave = nullptr;
  for (const auto& c : report.checks) {
    if (c.name.find("concav") != std::string::npos) concave = &c;
  }
  REQUIRE(concave != nullptr);
  CHECK_FALSE(concave->passed);
  REQUIRE(concave->witness.has_value());
  // On the linear part the midpoint equals the chord, so strictness fails.
  CHECK(concave->witness->x >= 0.0);
}

TEST_CASE("grid preconditions") {
  theta::SamplingGrid g;
  CHECK_NOTHROW(g.check());
  g.points = 50;
  CHECK_THROWS_AS(g.check(), std::invalid_argument);
  g.points = 128;
  g.r_sweep = {1e-1, 1e-2};
  CHECK_THROWS_AS(g.check(), std::invalid_argument);
  g.r_sweep = {1e-1, 1e-1, 1e-2};
  CHECK_THROWS_AS(g.check(), std::invalid_argument);

  const auto pts = theta::SamplingGrid{}.sample(0.01);
  CHECK(pts.front() == 0.0);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(std::find(pts.begin(), pts.end(), 0.01) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), 0.02) != pts.end());
}

TEST_CASE("membership in the dominating class") {
  const auto lg = theta::is_in_theta_geq1(ThetaFamily::log(0.1));
  CHECK(lg.member);
  const auto w1 = theta::is_in_theta_geq1(ThetaFamily::weibull(1.0, 0.1));
  CHECK(w1.member);
  const auto w05 = theta::is_in_theta_geq1(ThetaFamily::weibull(0.5, 0.1));
  CHECK(w05.member);
  const auto self = theta::is_in_theta_geq1(ThetaFamily::one(0.1));
  CHECK(self.member);
  CHECK(self.equal_everywhere);
  CHECK_FALSE(lg.equal_everywhere);
  // Weibull k = 2 starts flat, so θ¹ exceeds it near zero.
  const auto w2 = theta::is_in_theta_geq1(ThetaFamily::weibull(2.0, 0.1));
  CHECK_FALSE(w2.member);
  REQUIRE(w2.violation.has_value());
  const double x = w2.violation->x, r = w2.violation->r;
  CHECK(theta::eval(ThetaFamily::weibull(2.0, r), x) < x / (x + r));
}

TEST_CASE("product gate examples") {
  CHECK(theta::lemma2_gate(2.0, 0.005, 0.1));
  CHECK(theta::lemma2_gate(0.0, 7.3, 0.001));
  CHECK_FALSE(theta::lemma2_gate(1.0, 1.0, 0.5));
  const auto one = ThetaFamily::one(0.5);
  CHECK(theta::eval(one, 1.0) + theta::eval(one, 1.0) > 1.0);
}

TEST_CASE("product gate matches the product test on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 100.0), le(-4.0, 0.0);
  int disagreements = 0;
  for (int i = 0; i < 20000; ++i) {
    const double x = u(rng), y = u(rng), r = std::pow(10.0, le(rng));
    const double p = x * y, r2 = r * r;
    if (std::abs(p - r2) <= 1e-12 * std::max(1.0, p)) continue;
    if (theta::lemma2_gate(x, y, r) != (p <= r2)) ++disagreements;
  }
  CHECK(disagreements == 0);
  // The boundary manifold x·y = r² with exactly representable values.
  for (double r : {0.5, 0.25, 0.125, 1.0}) {
    for (double x : {0.0625, 0.25, 1.0, 4.0}) CHECK(theta::lemma2_gate(x, r * r / x, r));
  }
}

TEST_CASE("dominating families imply the product bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> le(-6.0, 2.0);
  for (const auto& base : {ThetaFamily::log(1.0), ThetaFamily::weibull(1.0, 1.0),
                           ThetaFamily::weibull(0.5, 1.0), ThetaFamily::one(1.0)}) {
    int violations = 0;
    for (int i = 0; i < 5000; ++i) {
      const double r = std::pow(10.0, le(rng) / 2 - 1);
      const auto fam = base.with_r(r);
      const double x = r * std::pow(10.0, le(rng)), y = r * std::pow(10.0, le(rng));
      if (theta::eval(fam, x) + theta::eval(fam, y) <= 1.0 && x * y > r * r * (1 + 1e-12)) {
        ++violations;
      }
    }
    CAPTURE(base.name());
    CHECK(violations == 0);
  }
}

TEST_CASE("sandwich: min zero passes the gate, the gate forces a small minimum") {
  const double eps = 1e-2;
  // For θ¹ the gate gives min(x, y) ≤ r, so r0 = eps works.
  const double r0 = eps;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (double r : {r0 / 2, r0 / 10}) {
    for (int i = 0; i < 5000; ++i) {
      const double x = u(rng), y = u(rng);
      CHECK(theta::lemma2_gate(0.0, y, r));
      CHECK(theta::lemma2_gate(x, 0.0, r));
      if (theta::lemma2_gate(x, y, r)) CHECK(std::min(x, y) <= eps);
    }
  }
}

TEST_CASE("batched kernels match their serial references") {
  std::vector<double> xs(4097);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 1e-4 * static_cast<double>(i);
  const auto fam = ThetaFamily::weibull(0.5, 0.01);
  CHECK(theta::eval_batch(fam, xs) == theta::eval_batch_serial(fam, xs));
  std::vector<double> ys(xs.rbegin(), xs.rend()), rs(xs.size(), 0.01);
  CHECK(theta::lemma2_gate_batch(xs, ys, rs) == theta::lemma2_gate_batch_serial(xs, ys, rs));
}
