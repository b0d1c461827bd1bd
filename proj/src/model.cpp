#include "mpec/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpec::model {

namespace {

void expect_size(const std::string& what, Eigen::Index got, int want) {
  if (got != want) {
    std::ostringstream msg;
    msg << what << ": expected size " << want << ", got " << got;
    throw DimensionError(msg.str());
  }
}

void expect_shape(const std::string& what, const Mat& mat, int rows, int cols) {
  if (mat.rows() != rows || mat.cols() != cols) {
    std::ostringstream msg;
    msg << what << ": expected " << rows << "x" << cols << ", got " << mat.rows() << "x"
        << mat.cols();
    throw DimensionError(msg.str());
  }
}

}  // namespace

void MpecProblem::validate() const {
  if (n < 0 || m < 0 || l < 0 || n_upper < 0) throw DimensionError(name + ": negative dimension");
  if (!f || !grad_f || !F || !jac_F || !g || !jac_g) {
    throw std::invalid_argument(name + ": missing required callback");
  }
  if (n_upper > 0 && (!h || !jac_h)) throw std::invalid_argument(name + ": missing h callbacks");
  expect_size(name + " x_lower", x_lower.size(), n);
  expect_size(name + " x_upper", x_upper.size(), n);
  for (int i = 0; i < n; ++i) {
    if (!(x_lower[i] <= x_upper[i])) throw DimensionError(name + ": lower bound above upper bound");
  }
  for (const Vec& s : starts) expect_size(name + " start", s.size(), n);

  const Vec x = default_start();
  const Vec y = Vec::Zero(m);
  expect_size(name + " grad_f", grad_f(x, y).size(), n + m);
  expect_size(name + " F", F(x, y).size(), m);
  expect_shape(name + " jac_F", jac_F(x, y), m, n + m);
  expect_size(name + " g", g(x, y).size(), l);
  expect_shape(name + " jac_g", jac_g(x, y), l, n + m);
  if (jac_grad_y_g) {
    const auto blocks = jac_grad_y_g(x, y);
    expect_size(name + " jac_grad_y_g", static_cast<Eigen::Index>(blocks.size()), l);
    for (const Mat& b : blocks) expect_shape(name + " jac_grad_y_g block", b, m, n + m);
  }
  if (n_upper > 0) {
    expect_size(name + " h", h(x, y).size(), n_upper);
    expect_shape(name + " jac_h", jac_h(x, y), n_upper, n + m);
  }
}

Mat MpecProblem::grad_y_g(const Vec& x, const Vec& y) const {
  return jac_g(x, y).rightCols(m);
}

Mat MpecProblem::weighted_grad_y_g_jacobian(const Vec& x, const Vec& y, const Vec& lambda) const {
  Mat out = Mat::Zero(m, n + m);
  if (!jac_grad_y_g) return out;
  const auto blocks = jac_grad_y_g(x, y);
  for (int i = 0; i < l; ++i) {
    if (lambda[i] != 0.0) out += lambda[i] * blocks[static_cast<std::size_t>(i)];
  }
  return out;
}

Vec MpecProblem::project_x(const Vec& x) const { return x.cwiseMax(x_lower).cwiseMin(x_upper); }

Vec MpecProblem::default_start() const { return project_x(Vec::Zero(n)); }

Vec MpecProblem::start(std::size_t index) const {
  if (starts.empty()) {
    if (index != 0) throw std::out_of_range(name + ": start index out of range");
    return default_start();
  }
  if (index >= starts.size()) throw std::out_of_range(name + ": start index out of range");
  return project_x(starts[index]);
}

double ResidualReport::max() const {
  return std::max({stationarity, primal, bound_violation, upper_violation, nonnegativity,
                   complementarity});
}

double complementarity_residual(const Vec& z, const Vec& lambda) {
  if (z.size() != lambda.size()) throw DimensionError("complementarity: size mismatch");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    worst = std::max(worst, std::min(std::max(z[i], 0.0), std::max(lambda[i], 0.0)));
  }
  return worst;
}

ResidualReport residuals(const MpecProblem& p, const MpecPoint& pt) {
  expect_size(p.name + " point x", pt.x.size(), p.n);
  expect_size(p.name + " point y", pt.y.size(), p.m);
  expect_size(p.name + " point z", pt.z.size(), p.l);
  expect_size(p.name + " point lambda", pt.lambda.size(), p.l);

  ResidualReport rep;
  if (p.m > 0) {
    const Vec stat = p.F(pt.x, pt.y) - p.grad_y_g(pt.x, pt.y).transpose() * pt.lambda;
    rep.stationarity = stat.lpNorm<Eigen::Infinity>();
  }
  if (p.l > 0) rep.primal = (p.g(pt.x, pt.y) - pt.z).lpNorm<Eigen::Infinity>();
  for (int i = 0; i < p.n; ++i) {
    rep.bound_violation = std::max(
        {rep.bound_violation, p.x_lower[i] - pt.x[i], pt.x[i] - p.x_upper[i]});
  }
  if (p.n_upper > 0) rep.upper_violation = std::max(0.0, -p.h(pt.x, pt.y).minCoeff());
  if (p.l > 0) {
    rep.nonnegativity = std::max({0.0, -pt.z.minCoeff(), -pt.lambda.minCoeff()});
    rep.complementarity = complementarity_residual(pt.z, pt.lambda);
  }
  return rep;
}

ActiveSets active_sets(const MpecPoint& pt, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("active_sets: tolerance must be nonnegative");
  if (pt.z.size() != pt.lambda.size()) throw DimensionError("active_sets: size mismatch");
  ActiveSets sets;
  sets.tolerance = tol;
  for (int i = 0; i < static_cast<int>(pt.z.size()); ++i) {
    const bool za = std::abs(pt.z[i]) <= tol;
    const bool la = std::abs(pt.lambda[i]) <= tol;
    if (za) sets.z_active.push_back(i);
    if (la) sets.lambda_active.push_back(i);
    if (za && la) sets.biactive.push_back(i);
  }
  return sets;
}

}  // namespace mpec::model
