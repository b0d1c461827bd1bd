#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "mpec/bench.hpp"
#include "mpec/model.hpp"

using namespace mpec;
using model::MpecPoint;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

MpecPoint pair_point(Vec z, Vec lambda) {
  MpecPoint p;
  p.z = std::move(z);
  p.lambda = std::move(lambda);
  return p;
}

}  // namespace

TEST_CASE("complementarity residual examples") {
  CHECK(model::complementarity_residual(v({0, 0, 0}), v({1, 2, 3})) == 0.0);
  CHECK(model::complementarity_residual(v({1, 0}), v({0, 1})) == 0.0);
  // Brute force over the components of min(z, λ).
  const Vec z = v({0.5}), lam = v({0.2});
  double brute = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) brute = std::max(brute, std::min(z[i], lam[i]));
  CHECK(model::complementarity_residual(z, lam) == brute);
  CHECK(brute == 0.2);
  // Negative entries clamp to zero.
  CHECK(model::complementarity_residual(v({-1.0}), v({3.0})) == 0.0);
  CHECK_THROWS_AS(model::complementarity_residual(v({1, 2}), v({1})), DimensionError);
}

TEST_CASE("active sets examples") {
  auto a = model::active_sets(pair_point(v({0, 1}), v({1, 0})), 1e-8);
  CHECK(a.z_active == std::vector<int>{0});
  CHECK(a.lambda_active == std::vector<int>{1});
  CHECK(a.biactive.empty());

  a = model::active_sets(pair_point(v({0, 0}), v({0, 5})), 1e-8);
  CHECK(a.biactive == std::vector<int>{0});

  a = model::active_sets(pair_point(v({1e-9, 2}), v({3, 1e-9})), 1e-8);
  CHECK(a.z_active == std::vector<int>{0});
  CHECK(a.lambda_active == std::vector<int>{1});

  CHECK_THROWS_AS(model::active_sets(pair_point(v({0}), v({0})), -1.0), std::invalid_argument);
  CHECK(model::active_sets(pair_point(v({0}), v({0}))).tolerance == model::kDefaultActiveTolerance);
}

TEST_CASE("active sets grow with the tolerance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> le(-10.0, 1.0);
  Vec z(40), lam(40);
  for (int i = 0; i < 40; ++i) {
    z[i] = std::pow(10.0, le(rng));
    lam[i] = std::pow(10.0, le(rng));
  }
  const MpecPoint pt = pair_point(z, lam);
  auto prev = model::active_sets(pt, 0.0);
  for (double tol : {1e-9, 1e-6, 1e-3, 1.0}) {
    const auto cur = model::active_sets(pt, tol);
    CHECK(std::includes(cur.z_active.begin(), cur.z_active.end(), prev.z_active.begin(),
                        prev.z_active.end()));
    CHECK(std::includes(cur.lambda_active.begin(), cur.lambda_active.end(),
                        prev.lambda_active.begin(), prev.lambda_active.end()));
    prev = cur;
  }
}

TEST_CASE("residuals vanish at known feasible points of the bench problems") {
  const auto reg = bench::register_builtin();
  int checked = 0;
  for (const auto* e : reg.entries()) {
    const auto& p = *e->problem;
    if (!p.known_solution) continue;
    const auto rep = model::residuals(p, *p.known_solution);
    CAPTURE(p.name);
    CHECK(rep.stationarity <= 1e-6);
    CHECK(rep.primal <= 1e-6);
    CHECK(rep.bound_violation == 0.0);
    CHECK(rep.upper_violation <= 1e-6);
    CHECK(rep.nonnegativity == 0.0);
    CHECK(rep.complementarity <= 1e-6);
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("residuals are nonnegative and detect perturbations") {
  const auto reg = bench::register_builtin();
  const auto& p = *reg.lookup("toy1").problem;
  // toy1: y − x − λ = 0, z = y; (x, y, z, λ) = (1, 1, 1, 0) is feasible.
  MpecPoint pt{v({1}), v({1}), v({1}), v({0})};
  CHECK(model::residuals(p, pt).max() == 0.0);
  pt.lambda[0] = 0.5;
  const auto rep = model::residuals(p, pt);
  CHECK(rep.stationarity == doctest::Approx(0.5));
  CHECK(rep.complementarity == doctest::Approx(0.5));
  CHECK(rep.max() >= 0.5);
  pt.z[0] = -0.25;
  CHECK(model::residuals(p, pt).nonnegativity == doctest::Approx(0.25));
  MpecPoint bad{v({1, 2}), v({1}), v({1}), v({0})};
  CHECK_THROWS_AS(model::residuals(p, bad), DimensionError);
}

TEST_CASE("problem validation and starts") {
  const auto reg = bench::register_builtin();
  for (const auto* e : reg.entries()) {
    CAPTURE(e->name());
    CHECK_NOTHROW(e->problem->validate());
    for (std::size_t s = 0; s < e->problem->start_count(); ++s) {
      const Vec x = e->problem->start(s);
      CHECK(x.size() == e->problem->n);
    }
    CHECK_THROWS_AS(e->problem->start(e->problem->start_count()), std::out_of_range);
  }
  model::MpecProblem broken = *reg.lookup("toy1").problem;
  broken.x_lower = v({2.0});
  broken.x_upper = v({1.0});
  CHECK_THROWS_AS(broken.validate(), DimensionError);
  broken = *reg.lookup("toy1").problem;
  broken.F = [](const Vec&, const Vec&) { return Vec::Zero(2).eval(); };
  CHECK_THROWS_AS(broken.validate(), DimensionError);
}

TEST_CASE("grad_y_g is the y block of the g Jacobian") {
  const auto reg = bench::register_builtin();
  const auto& p = *reg.lookup("Bilevel1").problem;
  const Vec x = v({3, 4}), y = v({1, 2});
  const Mat full = p.jac_g(x, y);
  CHECK(p.grad_y_g(x, y) == full.rightCols(p.m));
}
