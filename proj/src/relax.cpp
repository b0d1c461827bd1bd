#include "mpec/relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

namespace mpec::relax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using theta::Kind;
using theta::ThetaFamily;

// r²·ln(r/(λ+r) + r/(z+r)). The sum minus one equals (r² − λz)/((λ+r)(z+r)),
// which keeps the sign exact near the boundary λz = r².
double theta_one_row(double lam, double z, double r) {
  if (!(lam > -r && z > -r)) return kNaN;
  const double q = (r * r - lam * z) / ((lam + r) * (z + r));
  const double log_sum = q < -0.5 ? std::log(r / (lam + r) + r / (z + r)) : std::log1p(q);
  return r * r * log_sum;
}

// d/dλ of theta_one_row; swap the arguments for d/dz.
double theta_one_row_grad(double lam, double z, double r) {
  if (!(lam > -r && z > -r)) return kNaN;
  const double a = r / (lam + r);
  const double b = r / (z + r);
  return -r * a * a / (a + b);
}

// r·ln(e^{−λ/r} + e^{−z/r}) in log-sum-exp form.
double weibull_row(double lam, double z, double r) {
  return -std::min(lam, z) + r * std::log1p(std::exp(-std::abs(lam - z) / r));
}

// −1/(1 + e^{(λ−z)/r}) without overflow.
double weibull_row_grad(double lam, double z, double r) {
  const double t = (lam - z) / r;
  if (t > 0.0) {
    const double e = std::exp(-t);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(t));
}

double slack_slope(const ThetaFamily& family, double x) {
  const double d = theta::deriv_extended(family, x);
  return std::isinf(d) && d > 0.0 ? kSingularSlope : d;
}

void check_size(const RelaxedNlp& relaxed, const Vec& v) {
  if (v.size() != relaxed.layout.size()) {
    std::ostringstream msg;
    msg << "relax: decision vector has size " << v.size() << ", expected "
        << relaxed.layout.size();
    throw DimensionError(msg.str());
  }
}

struct Parts {
  Vec x, y, z, lambda, e;
};

Parts split(const Layout& lay, const Vec& v) {
  Parts p;
  p.x = v.segment(lay.x(), lay.n);
  p.y = v.segment(lay.y(), lay.m);
  p.z = v.segment(lay.z(), lay.l);
  p.lambda = v.segment(lay.lambda(), lay.l);
  if (lay.slack) p.e = v.segment(lay.e(), lay.l);
  return p;
}

void raise_non_finite(const Vec& values, int offset, const std::string& block) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "relax: non-finite value in " << block << " row " << i;
      throw EvaluationError(msg.str(), offset + static_cast<int>(i));
    }
  }
}

}  // namespace

std::string to_string(RelaxationForm form) {
  switch (form) {
    case RelaxationForm::SlackEquality:
      return "slack";
    case RelaxationForm::ScaledInequalityThetaOne:
      return "scaled-one";
    case RelaxationForm::ScaledInequalityWeibull1:
      return "scaled-weibull1";
  }
  return "?";
}

void check_compatible(const ThetaFamily& family, RelaxationForm form) {
  if (form == RelaxationForm::ScaledInequalityThetaOne && family.kind() != Kind::ThetaOne) {
    throw std::invalid_argument("relax: the scaled theta-one form needs theta 'one'");
  }
  if (form == RelaxationForm::ScaledInequalityWeibull1 &&
      !(family.kind() == Kind::Weibull && family.shape() == 1.0)) {
    throw std::invalid_argument("relax: the scaled Weibull form needs theta 'weibull:1'");
  }
}

RelaxationForm parse_form(const std::string& name, const ThetaFamily& family) {
  if (name == "slack") return RelaxationForm::SlackEquality;
  if (name == "scaled") {
    if (family.kind() == Kind::ThetaOne) return RelaxationForm::ScaledInequalityThetaOne;
    if (family.kind() == Kind::Weibull && family.shape() == 1.0) {
      return RelaxationForm::ScaledInequalityWeibull1;
    }
    throw std::invalid_argument("relax: scaled form requires theta 'one' or 'weibull:1', got '" +
                                family.name() + "'");
  }
  throw std::invalid_argument("relax: unknown form '" + name + "' (expected slack or scaled)");
}

ConstraintValues eval_constraints(const RelaxedNlp& relaxed, const Vec& v) {
  check_size(relaxed, v);
  const Layout& lay = relaxed.layout;
  const model::MpecProblem& p = *relaxed.problem;
  const Parts s = split(lay, v);
  const double r = relaxed.r;

  ConstraintValues out;
  out.eq.resize(relaxed.n_eq());
  out.ineq.resize(relaxed.n_ineq());

  if (lay.m > 0) {
    Vec stat = p.F(s.x, s.y);
    if (lay.l > 0) stat -= p.grad_y_g(s.x, s.y).transpose() * s.lambda;
    out.eq.head(lay.m) = stat;
  }
  if (lay.l > 0) out.eq.segment(lay.m, lay.l) = p.g(s.x, s.y) - s.z;
  if (lay.slack) {
    for (int i = 0; i < lay.l; ++i) {
      out.eq[lay.m + lay.l + i] = theta::eval_extended(relaxed.family, s.lambda[i]) +
                                  theta::eval_extended(relaxed.family, s.z[i]) + s.e[i] - 1.0;
    }
  }
  if (p.n_upper > 0) out.ineq.head(p.n_upper) = p.h(s.x, s.y);
  if (!lay.slack) {
    for (int i = 0; i < lay.l; ++i) {
      out.ineq[p.n_upper + i] = relaxed.form == RelaxationForm::ScaledInequalityThetaOne
                                    ? theta_one_row(s.lambda[i], s.z[i], r)
                                    : weibull_row(s.lambda[i], s.z[i], r);
    }
  }
  raise_non_finite(out.eq, 0, "equality");
  raise_non_finite(out.ineq, relaxed.n_eq(), "inequality");
  return out;
}

ConstraintJacobian eval_jacobian(const RelaxedNlp& relaxed, const Vec& v) {
  check_size(relaxed, v);
  const Layout& lay = relaxed.layout;
  const model::MpecProblem& p = *relaxed.problem;
  const Parts s = split(lay, v);
  const double r = relaxed.r;
  const int nxy = lay.n + lay.m;

  ConstraintJacobian out;
  out.eq = Mat::Zero(relaxed.n_eq(), lay.size());
  out.ineq = Mat::Zero(relaxed.n_ineq(), lay.size());

  if (lay.m > 0) {
    Mat dxy = p.jac_F(s.x, s.y);
    if (lay.l > 0) dxy -= p.weighted_grad_y_g_jacobian(s.x, s.y, s.lambda);
    out.eq.block(0, 0, lay.m, nxy) = dxy;
    if (lay.l > 0) out.eq.block(0, lay.lambda(), lay.m, lay.l) = -p.grad_y_g(s.x, s.y).transpose();
  }
  if (lay.l > 0) {
    out.eq.block(lay.m, 0, lay.l, nxy) = p.jac_g(s.x, s.y);
    out.eq.block(lay.m, lay.z(), lay.l, lay.l) = -Mat::Identity(lay.l, lay.l);
  }
  if (lay.slack) {
    for (int i = 0; i < lay.l; ++i) {
      const int row = lay.m + lay.l + i;
      out.eq(row, lay.lambda() + i) = slack_slope(relaxed.family, s.lambda[i]);
      out.eq(row, lay.z() + i) = slack_slope(relaxed.family, s.z[i]);
      out.eq(row, lay.e() + i) = 1.0;
    }
  }
  if (p.n_upper > 0) out.ineq.block(0, 0, p.n_upper, nxy) = p.jac_h(s.x, s.y);
  if (!lay.slack) {
    const bool one = relaxed.form == RelaxationForm::ScaledInequalityThetaOne;
    for (int i = 0; i < lay.l; ++i) {
      const int row = p.n_upper + i;
      const double lam = s.lambda[i];
      const double z = s.z[i];
      out.ineq(row, lay.lambda() + i) = one ? theta_one_row_grad(lam, z, r) : weibull_row_grad(lam, z, r);
      out.ineq(row, lay.z() + i) = one ? theta_one_row_grad(z, lam, r) : weibull_row_grad(z, lam, r);
    }
  }
  for (Eigen::Index i = 0; i < out.eq.rows(); ++i) {
    if (!out.eq.row(i).allFinite()) {
      throw EvaluationError("relax: non-finite Jacobian in equality row " + std::to_string(i),
                            static_cast<int>(i));
    }
  }
  for (Eigen::Index i = 0; i < out.ineq.rows(); ++i) {
    if (!out.ineq.row(i).allFinite()) {
      throw EvaluationError("relax: non-finite Jacobian in inequality row " + std::to_string(i),
                            relaxed.n_eq() + static_cast<int>(i));
    }
  }
  return out;
}

RelaxedNlp build(std::shared_ptr<const model::MpecProblem> problem, const ThetaFamily& family,
                 double r, RelaxationForm form) {
  if (!problem) throw std::invalid_argument("relax: null problem");
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("relax: r must be positive");
  check_compatible(family, form);
  problem->validate();

  RelaxedNlp out;
  out.problem = problem;
  out.family = family.with_r(r);
  out.r = r;
  out.form = form;
  out.layout = Layout{problem->n, problem->m, problem->l, form == RelaxationForm::SlackEquality};

  const Layout lay = out.layout;
  nlp::Nlp& nlp = out.nlp;
  nlp.n_var = lay.size();
  nlp.n_eq = lay.m + lay.l + (lay.slack ? lay.l : 0);
  nlp.n_ineq = problem->n_upper + (lay.slack ? 0 : lay.l);
  nlp.lower = Vec::Constant(nlp.n_var, -kInf);
  nlp.upper = Vec::Constant(nlp.n_var, kInf);
  nlp.lower.head(lay.n) = problem->x_lower;
  nlp.upper.head(lay.n) = problem->x_upper;
  nlp.lower.tail(nlp.n_var - lay.z()).setZero();

  // The callbacks hold their own copy of the relaxation data so the Nlp stays
  // valid when the RelaxedNlp is moved.
  auto self = std::make_shared<RelaxedNlp>(out);
  nlp.objective = [self](const Vec& v) {
    const Layout& l = self->layout;
    check_size(*self, v);
    const double f = self->problem->f(v.segment(l.x(), l.n), v.segment(l.y(), l.m));
    if (!std::isfinite(f)) throw EvaluationError("relax: non-finite objective", -1);
    return f;
  };
  nlp.gradient = [self](const Vec& v) {
    const Layout& l = self->layout;
    check_size(*self, v);
    Vec grad = Vec::Zero(l.size());
    grad.head(l.n + l.m) = self->problem->grad_f(v.segment(l.x(), l.n), v.segment(l.y(), l.m));
    if (!grad.allFinite()) throw EvaluationError("relax: non-finite objective gradient", -1);
    return grad;
  };
  nlp.constraints = [self](const Vec& v, Vec& eq, Vec& ineq) {
    ConstraintValues c = eval_constraints(*self, v);
    eq = std::move(c.eq);
    ineq = std::move(c.ineq);
  };
  nlp.jacobian = [self](const Vec& v, Mat& jeq, Mat& jineq) {
    ConstraintJacobian j = eval_jacobian(*self, v);
    jeq = std::move(j.eq);
    jineq = std::move(j.ineq);
  };
  nlp.validate();
  return out;
}

Vec embed(const RelaxedNlp& relaxed, const model::MpecPoint& pt) {
  const Layout& lay = relaxed.layout;
  if (pt.x.size() != lay.n || pt.y.size() != lay.m || pt.z.size() != lay.l ||
      pt.lambda.size() != lay.l) {
    throw DimensionError("relax: point does not match the problem dimensions");
  }
  Vec v = Vec::Zero(lay.size());
  v.segment(lay.x(), lay.n) = pt.x;
  v.segment(lay.y(), lay.m) = pt.y;
  v.segment(lay.z(), lay.l) = pt.z;
  v.segment(lay.lambda(), lay.l) = pt.lambda;
  reset_slack(relaxed, v);
  return v;
}

model::MpecPoint extract(const RelaxedNlp& relaxed, const Vec& v) {
  check_size(relaxed, v);
  const Parts s = split(relaxed.layout, v);
  return model::MpecPoint{s.x, s.y, s.z, s.lambda};
}

void reset_slack(const RelaxedNlp& relaxed, Vec& v) {
  const Layout& lay = relaxed.layout;
  check_size(relaxed, v);
  if (!lay.slack) return;
  for (int i = 0; i < lay.l; ++i) {
    const double lam = std::max(v[lay.lambda() + i], 0.0);
    const double z = std::max(v[lay.z() + i], 0.0);
    v[lay.e() + i] =
        std::max(0.0, 1.0 - theta::eval(relaxed.family, lam) - theta::eval(relaxed.family, z));
  }
}

Vec initial_point(const RelaxedNlp& relaxed, const Vec& x) {
  const model::MpecProblem& p = *relaxed.problem;
  if (x.size() != p.n) throw DimensionError("relax: start has the wrong size");
  model::MpecPoint pt;
  pt.x = p.project_x(x);
  pt.y = Vec::Zero(p.m);
  pt.z = p.l > 0 ? Vec(p.g(pt.x, pt.y).cwiseMax(0.0)) : Vec(0);
  pt.lambda = Vec::Zero(p.l);
  return embed(relaxed, pt);
}

double max_violation(const RelaxedNlp& relaxed, const Vec& v) {
  const ConstraintValues c = eval_constraints(relaxed, v);
  double worst = c.eq.size() > 0 ? c.eq.lpNorm<Eigen::Infinity>() : 0.0;
  for (Eigen::Index i = 0; i < c.ineq.size(); ++i) worst = std::max(worst, -c.ineq[i]);
  const nlp::Nlp& nlp = relaxed.nlp;
  for (int i = 0; i < nlp.n_var; ++i) {
    worst = std::max({worst, nlp.lower[i] - v[i], v[i] - nlp.upper[i]});
  }
  return worst;
}

double equality_jacobian_diagnostic(const RelaxedNlp& relaxed, const Vec& v, double feas_tol) {
  if (relaxed.form != RelaxationForm::SlackEquality) {
    throw std::invalid_argument("relax: the Jacobian diagnostic needs the slack form");
  }
  const ConstraintValues c = eval_constraints(relaxed, v);
  const double eq_violation = c.eq.size() > 0 ? c.eq.lpNorm<Eigen::Infinity>() : 0.0;
  if (!(eq_violation <= feas_tol)) {
    std::ostringstream msg;
    msg << "relax: point violates the equality rows by " << eq_violation;
    throw std::invalid_argument(msg.str());
  }
  const Layout& lay = relaxed.layout;
  const int k = lay.m + 2 * lay.l;
  if (k == 0) return 0.0;
  const Mat block = eval_jacobian(relaxed, v).eq.block(0, lay.y(), k, k);
  Eigen::JacobiSVD<Mat> svd(block);
  return svd.singularValues().minCoeff();
}

}  // namespace mpec::relax
