#include "mpec/nlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "projected_lbfgs.hpp"

namespace mpec::nlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inf_norm(const Vec& v) { return v.size() > 0 ? v.lpNorm<Eigen::Infinity>() : 0.0; }

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("nlp options: " + msg);
}

}  // namespace

void Nlp::validate() const {
  if (n_var < 0 || n_eq < 0 || n_ineq < 0) throw DimensionError("nlp: negative dimension");
  if (lower.size() != n_var || upper.size() != n_var) throw DimensionError("nlp: bound size");
  for (int i = 0; i < n_var; ++i) {
    if (!(lower[i] <= upper[i])) throw DimensionError("nlp: lower bound above upper bound");
  }
  if (!objective || !gradient || !constraints || !jacobian) {
    throw std::invalid_argument("nlp: missing callback");
  }
}

Vec Nlp::project(const Vec& v) const { return v.cwiseMax(lower).cwiseMin(upper); }

void NlpOptions::validate() const {
  require(tol_kkt > 0.0, "tol_kkt must be positive");
  require(tol_feas > 0.0, "tol_feas must be positive");
  require(max_outer > 0, "max_outer must be positive");
  require(max_inner > 0, "max_inner must be positive");
  require(penalty_init > 0.0, "penalty_init must be positive");
  require(penalty_growth > 1.0, "penalty_growth must exceed 1");
  require(penalty_max >= penalty_init, "penalty_max below penalty_init");
  require(multiplier_bound > 0.0, "multiplier_bound must be positive");
  require(lbfgs_memory > 0, "lbfgs_memory must be positive");
}

std::string to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "Optimal";
    case Status::MaxIterations:
      return "MaxIterations";
    case Status::Infeasible:
      return "Infeasible";
    case Status::EvaluationError:
      return "EvaluationError";
  }
  return "?";
}

Scaling Scaling::identity(const Nlp& nlp) {
  return Scaling{1.0, Vec::Ones(nlp.n_eq), Vec::Ones(nlp.n_ineq)};
}

KktMeasures measure_kkt(const Nlp& nlp, const Vec& v, const Vec& mult_eq, const Vec& mult_ineq,
                        const Scaling& scaling) {
  Vec ce(nlp.n_eq), ci(nlp.n_ineq);
  Mat je(nlp.n_eq, nlp.n_var), ji(nlp.n_ineq, nlp.n_var);
  KktMeasures out;
  out.objective = nlp.objective(v);
  const Vec grad = nlp.gradient(v);
  nlp.constraints(v, ce, ci);
  nlp.jacobian(v, je, ji);

  const double sf = scaling.objective;
  Vec lag = grad;
  if (nlp.n_eq > 0) lag -= je.transpose() * mult_eq;
  if (nlp.n_ineq > 0) lag -= ji.transpose() * mult_ineq;
  lag *= sf;

  const Vec scaled_eq_mult = (mult_eq.array() * sf / scaling.eq.array()).matrix();
  const Vec scaled_ineq_mult = (mult_ineq.array() * sf / scaling.ineq.array()).matrix();
  out.dual_scale = std::max(
      {1.0, inf_norm(scaled_eq_mult) / 100.0, inf_norm(scaled_ineq_mult) / 100.0,
       sf * inf_norm(grad) / 100.0});

  const Vec pg = detail::projected_gradient(v, lag, nlp.lower, nlp.upper);
  out.stationarity = inf_norm(pg) / out.dual_scale;
  out.bound_duals = (lag - pg) / sf;

  const Vec sce = (ce.array() * scaling.eq.array()).matrix();
  const Vec sci = (ci.array() * scaling.ineq.array()).matrix();
  out.feasibility = inf_norm(sce);
  for (int j = 0; j < nlp.n_ineq; ++j) {
    out.feasibility = std::max(out.feasibility, -sci[j]);
    out.complementarity =
        std::max(out.complementarity, std::abs(std::min(sci[j], scaled_ineq_mult[j])));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Augmented Lagrangian driver

namespace {

class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const Nlp& nlp, const Scaling& scaling, Counters& counters)
      : nlp_(nlp),
        scaling_(scaling),
        counters_(counters),
        ce_(nlp.n_eq),
        ci_(nlp.n_ineq),
        je_(nlp.n_eq, nlp.n_var),
        ji_(nlp.n_ineq, nlp.n_var) {}

  Vec mult_eq;    // scaled
  Vec mult_ineq;  // scaled
  double penalty = 10.0;

  /// Evaluates f and c at v; returns +inf when the callbacks fail.
  double value(const Vec& v) {
    try {
      ++counters_.objective;
      const double f = nlp_.objective(v);
      ++counters_.constraints;
      nlp_.constraints(v, ce_, ci_);
      if (!std::isfinite(f) || !ce_.allFinite() || !ci_.allFinite()) return kInf;
      last_v_ = v;
      last_f_ = f;
      sce_ = (ce_.array() * scaling_.eq.array()).matrix();
      sci_ = (ci_.array() * scaling_.ineq.array()).matrix();
      double phi = scaling_.objective * f;
      if (nlp_.n_eq > 0) phi += -mult_eq.dot(sce_) + 0.5 * penalty * sce_.squaredNorm();
      for (int j = 0; j < nlp_.n_ineq; ++j) {
        const double t = std::max(0.0, mult_ineq[j] - penalty * sci_[j]);
        phi += (t * t - mult_ineq[j] * mult_ineq[j]) / (2.0 * penalty);
      }
      return phi;
    } catch (const EvaluationError&) {
      return kInf;
    }
  }

  /// Gradient at the point of the most recent successful value() call.
  Vec gradient(const Vec& v) {
    if (last_v_.size() != v.size() || last_v_ != v) value(v);
    ++counters_.gradient;
    Vec grad = scaling_.objective * nlp_.gradient(v);
    ++counters_.jacobian;
    nlp_.jacobian(v, je_, ji_);
    if (nlp_.n_eq > 0) {
      const Vec w = ((mult_eq - penalty * sce_).array() * scaling_.eq.array()).matrix();
      grad -= je_.transpose() * w;
    }
    if (nlp_.n_ineq > 0) {
      Vec w(nlp_.n_ineq);
      for (int j = 0; j < nlp_.n_ineq; ++j) {
        w[j] = std::max(0.0, mult_ineq[j] - penalty * sci_[j]) * scaling_.ineq[j];
      }
      grad -= ji_.transpose() * w;
    }
    if (!grad.allFinite()) throw EvaluationError("nlp: non-finite gradient", -1);
    return grad;
  }

  /// Constraint values (scaled) at the last evaluated point.
  const Vec& scaled_eq() const { return sce_; }
  const Vec& scaled_ineq() const { return sci_; }
  double last_objective() const { return last_f_; }

 private:
  const Nlp& nlp_;
  const Scaling& scaling_;
  Counters& counters_;
  Vec ce_, ci_, sce_, sci_;
  Mat je_, ji_;
  Vec last_v_;
  double last_f_ = 0.0;
};

// ½‖s_E c_E‖² + ½‖min(0, s_I c_I)‖² minimised over the box.
void restore_feasibility(const Nlp& nlp, const Scaling& sc, Counters& cnt, const NlpOptions& opts,
                         Vec& v) {
  Vec ce(nlp.n_eq), ci(nlp.n_ineq), rce, rci;
  Mat je(nlp.n_eq, nlp.n_var), ji(nlp.n_ineq, nlp.n_var);
  Vec last;
  auto value = [&](const Vec& p) {
    try {
      ++cnt.constraints;
      nlp.constraints(p, ce, ci);
    } catch (const EvaluationError&) {
      return kInf;
    }
    if (!ce.allFinite() || !ci.allFinite()) return kInf;
    rce = (ce.array() * sc.eq.array()).matrix();
    rci = (ci.array() * sc.ineq.array()).cwiseMin(0.0).matrix();
    last = p;
    return 0.5 * (rce.squaredNorm() + rci.squaredNorm());
  };
  auto gradient = [&](const Vec& p) {
    if (last.size() != p.size() || last != p) value(p);
    ++cnt.jacobian;
    nlp.jacobian(p, je, ji);
    Vec grad = Vec::Zero(nlp.n_var);
    if (nlp.n_eq > 0) grad += je.transpose() * (rce.array() * sc.eq.array()).matrix();
    if (nlp.n_ineq > 0) grad += ji.transpose() * (rci.array() * sc.ineq.array()).matrix();
    if (!grad.allFinite()) throw EvaluationError("nlp: non-finite constraint Jacobian", -1);
    return grad;
  };
  double phi = value(v);
  if (!std::isfinite(phi) || std::sqrt(2.0 * phi) <= opts.tol_feas) return;
  Vec grad = gradient(v);
  detail::BoxFunction fn{value, gradient};
  detail::InnerOptions io{0.01 * opts.tol_feas, opts.max_inner, opts.lbfgs_memory};
  const detail::InnerResult res = detail::minimize_box(fn, nlp.lower, nlp.upper, v, phi, grad, io);
  cnt.minor += res.iterations;
}

Scaling compute_scaling(const Vec& grad, const Mat& je, const Mat& ji) {
  Scaling s;
  const double g = inf_norm(grad);
  s.objective = g > 100.0 ? 100.0 / g : 1.0;
  auto row_scale = [](const Mat& jac) {
    Vec out = Vec::Ones(jac.rows());
    for (Eigen::Index j = 0; j < jac.rows(); ++j) {
      const double norm = jac.row(j).lpNorm<Eigen::Infinity>();
      if (norm > 0.0 && std::isfinite(norm)) out[j] = std::clamp(1.0 / norm, 1e-6, 1e6);
    }
    return out;
  };
  s.eq = row_scale(je);
  s.ineq = row_scale(ji);
  return s;
}

}  // namespace

SolveResult solve(const Nlp& nlp, const Vec& x0, const NlpOptions& opts, const WarmStart* warm) {
  nlp.validate();
  opts.validate();
  if (x0.size() != nlp.n_var) throw DimensionError("nlp solve: starting point has wrong size");

  SolveResult result;
  Counters& cnt = result.counters;
  Vec v = nlp.project(x0);
  result.point = v;
  result.mult_eq = Vec::Zero(nlp.n_eq);
  result.mult_ineq = Vec::Zero(nlp.n_ineq);
  result.bound_duals = Vec::Zero(nlp.n_var);
  result.scaling = Scaling::identity(nlp);

  // Initial derivatives fix the scaling.
  Vec grad0;
  Mat je(nlp.n_eq, nlp.n_var), ji(nlp.n_ineq, nlp.n_var);
  try {
    ++cnt.gradient;
    grad0 = nlp.gradient(v);
    ++cnt.jacobian;
    nlp.jacobian(v, je, ji);
    if (!grad0.allFinite() || !je.allFinite() || !ji.allFinite()) {
      throw EvaluationError("non-finite derivatives at the starting point", -1);
    }
  } catch (const EvaluationError& e) {
    result.status = Status::EvaluationError;
    result.message = e.what();
    return result;
  }
  result.scaling = compute_scaling(grad0, je, ji);
  const Scaling& sc = result.scaling;

  AugmentedLagrangian al(nlp, sc, cnt);
  al.mult_eq = Vec::Zero(nlp.n_eq);
  al.mult_ineq = Vec::Zero(nlp.n_ineq);
  al.penalty = opts.penalty_init;
  if (warm != nullptr) {
    if (warm->mult_eq.size() == nlp.n_eq) {
      al.mult_eq = (warm->mult_eq.array() * sc.objective / sc.eq.array()).matrix();
    }
    if (warm->mult_ineq.size() == nlp.n_ineq) {
      al.mult_ineq = (warm->mult_ineq.array() * sc.objective / sc.ineq.array()).matrix();
    }
    if (warm->penalty > 0.0) al.penalty = std::clamp(warm->penalty, opts.penalty_init, opts.penalty_max);
  }
  const double bound = opts.multiplier_bound;
  al.mult_eq = al.mult_eq.cwiseMax(-bound).cwiseMin(bound);
  al.mult_ineq = al.mult_ineq.cwiseMax(0.0).cwiseMin(bound);

  detail::BoxFunction fn{[&](const Vec& p) { return al.value(p); },
                         [&](const Vec& p) { return al.gradient(p); }};

  if (opts.feasibility_phase) {
    try {
      restore_feasibility(nlp, sc, cnt, opts, v);
    } catch (const EvaluationError& e) {
      result.status = Status::EvaluationError;
      result.message = e.what();
      return result;
    }
  }

  double phi = al.value(v);
  if (!std::isfinite(phi)) {
    result.status = Status::EvaluationError;
    result.message = "objective or constraints not finite at the starting point";
    return result;
  }
  if (warm == nullptr || !(warm->penalty > 0.0)) {
    // Cold start: balance the penalty against the objective's magnitude
    // (penalty_init stays a floor), then re-evaluate with it.
    const double viol = 0.5 * (al.scaled_eq().squaredNorm() +
                               al.scaled_ineq().cwiseMin(0.0).squaredNorm());
    const double balanced = 10.0 * std::max(1.0, sc.objective * std::abs(al.last_objective())) /
                            std::max(1.0, viol);
    al.penalty = std::clamp(balanced, opts.penalty_init, std::max(opts.penalty_init, 1e6));
    phi = al.value(v);
  }

  // measure_kkt evaluates every callback once.
  auto measure = [&](const Vec& me, const Vec& mi) {
    ++cnt.objective;
    ++cnt.gradient;
    ++cnt.constraints;
    ++cnt.jacobian;
    return measure_kkt(nlp, v, me, mi, sc);
  };

  auto finish = [&](Status status, std::string message) {
    result.status = status;
    result.message = std::move(message);
    result.point = v;
    result.penalty = al.penalty;
    result.mult_eq = (al.mult_eq.array() * sc.eq.array() / sc.objective).matrix();
    result.mult_ineq = (al.mult_ineq.array() * sc.ineq.array() / sc.objective).matrix();
    const KktMeasures k = measure(result.mult_eq, result.mult_ineq);
    result.objective = k.objective;
    result.kkt_residual = k.stationarity;
    result.feasibility_residual = std::max(k.feasibility, k.complementarity);
    result.bound_duals = k.bound_duals;
    return result;
  };

  double inner_tol = std::max(opts.tol_kkt, 1e-2);
  double prev_violation = kInf;
  int stalled_at_cap = 0;
  std::vector<int> inactive(nlp.n_ineq, 0);

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    ++cnt.major;
    Vec grad;
    bool inner_moved = true;
    try {
      grad = al.gradient(v);
      phi = al.value(v);
      detail::InnerOptions io{inner_tol, opts.max_inner, opts.lbfgs_memory};
      const detail::InnerResult inner = detail::minimize_box(fn, nlp.lower, nlp.upper, v, phi, grad, io);
      cnt.minor += inner.iterations;
      inner_moved = inner.iterations > 0 || inner_tol <= 0.1 * opts.tol_kkt;
    } catch (const EvaluationError& e) {
      return finish(Status::EvaluationError, e.what());
    }
    // Refresh constraint values at the accepted point.
    al.value(v);

    double violation = inf_norm(al.scaled_eq());
    for (int j = 0; j < nlp.n_ineq; ++j) {
      violation = std::max(violation,
                           std::abs(std::min(al.scaled_ineq()[j], al.mult_ineq[j] / al.penalty)));
    }

    for (int j = 0; j < nlp.n_eq; ++j) {
      al.mult_eq[j] = std::clamp(al.mult_eq[j] - al.penalty * al.scaled_eq()[j], -bound, bound);
    }
    for (int j = 0; j < nlp.n_ineq; ++j) {
      al.mult_ineq[j] =
          std::clamp(al.mult_ineq[j] - al.penalty * al.scaled_ineq()[j], 0.0, bound);
      // A multiplier left over from an earlier violation decays only by ρ·c
      // per iteration; drop it once the row stays strictly inactive.
      inactive[j] = al.scaled_ineq()[j] > opts.tol_feas ? inactive[j] + 1 : 0;
      if (inactive[j] >= 2) al.mult_ineq[j] = 0.0;
    }

    const Vec me = (al.mult_eq.array() * sc.eq.array() / sc.objective).matrix();
    const Vec mi = (al.mult_ineq.array() * sc.ineq.array() / sc.objective).matrix();
    const KktMeasures k = measure(me, mi);
    if (k.stationarity <= opts.tol_kkt && k.feasibility <= opts.tol_feas &&
        k.complementarity <= opts.tol_feas) {
      return finish(Status::Optimal, "converged");
    }

    // An inner solve that did not move while its tolerance can still
    // tighten (warm start) says nothing about the penalty.
    if (inner_moved && violation > 0.25 * prev_violation && violation > 0.1 * opts.tol_feas) {
      if (al.penalty >= opts.penalty_max) {
        if (violation > 0.99 * prev_violation && ++stalled_at_cap >= 3) {
          return finish(Status::Infeasible, "feasibility stalled with penalty at its cap");
        }
      } else {
        al.penalty = std::min(al.penalty * opts.penalty_growth, opts.penalty_max);
      }
    } else {
      stalled_at_cap = 0;
    }
    prev_violation = violation;
    inner_tol = std::max(0.1 * opts.tol_kkt, 0.1 * inner_tol);
  }
  return finish(Status::MaxIterations, "outer iteration limit reached");
}

// ---------------------------------------------------------------------------
// Derivative checker

namespace {

struct Stencil {
  std::vector<double> offsets;  // multiples of h
  std::vector<double> weights;  // divided by h
};

// One-sided second-order forward difference and central difference.
const Stencil kCentral{{-1.0, 1.0}, {-0.5, 0.5}};
const Stencil kForward{{0.0, 1.0, 2.0}, {-1.5, 2.0, -0.5}};
const Stencil kBackward{{0.0, -1.0, -2.0}, {1.5, -2.0, 0.5}};

struct Probe {
  double f = 0.0;
  Vec ce, ci;
};

Probe evaluate(const Nlp& nlp, const Vec& v) {
  Probe p;
  p.ce.resize(nlp.n_eq);
  p.ci.resize(nlp.n_ineq);
  p.f = nlp.objective(v);
  nlp.constraints(v, p.ce, p.ci);
  if (!std::isfinite(p.f) || !p.ce.allFinite() || !p.ci.allFinite()) {
    throw EvaluationError("check_derivatives: non-finite value at a probe point", -1);
  }
  return p;
}

}  // namespace

DerivativeReport check_derivatives(const Nlp& nlp, const Vec& v, double tolerance) {
  nlp.validate();
  if (v.size() != nlp.n_var) throw DimensionError("check_derivatives: point has wrong size");

  const Vec grad = nlp.gradient(v);
  Mat je(nlp.n_eq, nlp.n_var), ji(nlp.n_ineq, nlp.n_var);
  nlp.jacobian(v, je, ji);
  const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());

  DerivativeReport report;
  auto record = [&](const std::string& block, int row, int col, double analytic, double numeric) {
    const double rel = std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
    DerivativeEntry e{block, row, col, analytic, numeric, rel};
    ++report.entries_checked;
    if (rel > report.max_rel_error || report.entries_checked == 1) {
      report.max_rel_error = std::max(report.max_rel_error, rel);
      if (rel >= report.worst.rel_error) report.worst = e;
    }
    if (!(rel <= tolerance)) report.flagged.push_back(e);
  };

  for (int i = 0; i < nlp.n_var; ++i) {
    const double h = cbrt_eps * std::max(1.0, std::abs(v[i]));
    const Stencil* st = &kCentral;
    if (v[i] - 2.0 * h < nlp.lower[i]) st = &kForward;
    else if (v[i] + 2.0 * h > nlp.upper[i]) st = &kBackward;

    // Difference quotient at step `step` for every output.
    auto quotient = [&](double step) {
      Probe acc;
      acc.ce = Vec::Zero(nlp.n_eq);
      acc.ci = Vec::Zero(nlp.n_ineq);
      for (std::size_t k = 0; k < st->offsets.size(); ++k) {
        Vec p = v;
        p[i] += st->offsets[k] * step;
        const Probe val = evaluate(nlp, p);
        acc.f += st->weights[k] * val.f / step;
        acc.ce += st->weights[k] * val.ce / step;
        acc.ci += st->weights[k] * val.ci / step;
      }
      return acc;
    };
    const Probe coarse = quotient(h);
    const Probe fine = quotient(0.5 * h);
    // Richardson: both stencils have a leading h² error term.
    const double df = (4.0 * fine.f - coarse.f) / 3.0;
    const Vec dce = (4.0 * fine.ce - coarse.ce) / 3.0;
    const Vec dci = (4.0 * fine.ci - coarse.ci) / 3.0;

    record("objective", 0, i, grad[i], df);
    for (int r = 0; r < nlp.n_eq; ++r) record("eq", r, i, je(r, i), dce[r]);
    for (int r = 0; r < nlp.n_ineq; ++r) record("ineq", r, i, ji(r, i), dci[r]);
  }
  return report;
}

}  // namespace mpec::nlp
