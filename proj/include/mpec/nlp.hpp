#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpec/common.hpp"

namespace mpec::nlp {

/// A smooth NLP
///
///   min f(v)  s.t.  c_E(v) = 0,  c_I(v) ≥ 0,  lower ≤ v ≤ upper.
///
/// Infinite bounds are allowed. Callbacks may throw EvaluationError.
struct Nlp {
  int n_var = 0;
  int n_eq = 0;
  int n_ineq = 0;
  Vec lower;
  Vec upper;
  std::function<double(const Vec&)> objective;
  std::function<Vec(const Vec&)> gradient;
  std::function<void(const Vec&, Vec& eq, Vec& ineq)> constraints;
  std::function<void(const Vec&, Mat& jac_eq, Mat& jac_ineq)> jacobian;

  /// Throws DimensionError / std::invalid_argument on inconsistent data.
  void validate() const;
  Vec project(const Vec& v) const;
};

struct NlpOptions {
  double tol_kkt = 1e-8;
  double tol_feas = 1e-8;
  int max_outer = 100;
  int max_inner = 500;
  double penalty_init = 10.0;
  double penalty_growth = 10.0;
  double penalty_max = 1e12;
  /// Safeguard interval [−bound, bound] for multiplier estimates.
  double multiplier_bound = 1e10;
  int lbfgs_memory = 20;
  /// Before the first outer iteration, minimise the squared constraint
  /// violation over the box from x0 when x0 is infeasible.
  bool feasibility_phase = true;

  /// Throws std::invalid_argument on invalid settings.
  void validate() const;
};

enum class Status { Optimal, MaxIterations, Infeasible, EvaluationError };

std::string to_string(Status status);

/// Mirrors the effort columns of the benchmark tables: outer (major) and
/// inner (minor) iterations, and callback invocation counts.
struct Counters {
  int major = 0;
  int minor = 0;
  int objective = 0;
  int gradient = 0;
  int constraints = 0;
  int jacobian = 0;
};

/// Internal scaling: the solver works on s_f·f and s_j·c_j. Scales are fixed
/// from gradients at the starting point.
struct Scaling {
  double objective = 1.0;
  Vec eq;
  Vec ineq;

  static Scaling identity(const Nlp& nlp);
};

struct SolveResult {
  Status status = Status::MaxIterations;
  Vec point;
  /// Multipliers of the unscaled problem: ∇f = J_Eᵀμ_E + J_Iᵀμ_I + bound duals.
  Vec mult_eq;
  Vec mult_ineq;
  Vec bound_duals;
  double objective = 0.0;
  /// Scaled projected Lagrangian gradient, see KktMeasures.
  double kkt_residual = 0.0;
  /// max(constraint violation, |min(c_I, μ_I)|) on the scaled constraints.
  double feasibility_residual = 0.0;
  double penalty = 0.0;
  Scaling scaling;
  Counters counters;
  std::string message;
};

/// Warm start for multipliers (unscaled) and penalty.
struct WarmStart {
  Vec mult_eq;
  Vec mult_ineq;
  double penalty = 0.0;
};

/// First-order optimality measures of a primal–dual point, on the scaled
/// problem:
///   stationarity    ‖v − P(v − s_f ∇_v L)‖∞ / s_d,
///   feasibility     max(‖s_E c_E‖∞, ‖max(0, −s_I c_I)‖∞),
///   complementarity max_i |min(s_I c_I, μ̃_I)|,
/// with L = f − μ_Eᵀc_E − μ_Iᵀc_I, μ̃ the scaled multipliers and
/// s_d = max(1, max(‖μ̃‖∞, ‖s_f ∇f‖∞) / 100).
struct KktMeasures {
  double stationarity = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
  double dual_scale = 1.0;
  double objective = 0.0;
  Vec bound_duals;
};

KktMeasures measure_kkt(const Nlp& nlp, const Vec& v, const Vec& mult_eq, const Vec& mult_ineq,
                        const Scaling& scaling);

/// Augmented Lagrangian (Powell–Hestenes–Rockafellar) with a projected
/// limited-memory BFGS inner solver for the bound constraints.
SolveResult solve(const Nlp& nlp, const Vec& x0, const NlpOptions& opts = {},
                  const WarmStart* warm = nullptr);

// ---------------------------------------------------------------------------
// Derivative checking

struct DerivativeEntry {
  std::string block;  // "objective", "eq", "ineq"
  int row = 0;
  int col = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct DerivativeReport {
  double max_rel_error = 0.0;
  DerivativeEntry worst;
  std::vector<DerivativeEntry> flagged;
  int entries_checked = 0;

  bool passed() const { return flagged.empty(); }
};

inline constexpr double kDerivativeTolerance = 1e-5;

/// Central differences with step h_i = cbrt(ε)·max(1, |v_i|) and one level of
/// Richardson extrapolation. Near a finite bound the stencil switches to the
/// one-sided second-order formula so probes stay inside the box. The relative
/// error of an entry is |analytic − numeric| / max(1, |analytic|).
/// Throws EvaluationError when a probe cannot be evaluated.
DerivativeReport check_derivatives(const Nlp& nlp, const Vec& v,
                                   double tolerance = kDerivativeTolerance);

}  // namespace mpec::nlp
