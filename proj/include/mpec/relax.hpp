#pragma once

#include <memory>
#include <string>

#include "mpec/model.hpp"
#include "mpec/nlp.hpp"
#include "mpec/theta.hpp"

namespace mpec::relax {

/// How the complementarity pair (z_i, λ_i) is relaxed.
///
///   SlackEquality             θ_r(λ_i) + θ_r(z_i) + e_i − 1 = 0, e_i ≥ 0
///   ScaledInequalityThetaOne  r²·ln(r/(λ_i + r) + r/(z_i + r)) ≥ 0
///   ScaledInequalityWeibull1  r·ln(e^{−λ_i/r} + e^{−z_i/r}) ≥ 0
///
/// Both scaled rows are nonnegative exactly when θ_r(λ_i) + θ_r(z_i) ≤ 1 for
/// their family; the logarithm keeps the rows well scaled as r → 0.
enum class RelaxationForm { SlackEquality, ScaledInequalityThetaOne, ScaledInequalityWeibull1 };

inline constexpr RelaxationForm kDefaultForm = RelaxationForm::ScaledInequalityThetaOne;

std::string to_string(RelaxationForm form);

/// "slack" or "scaled"; "scaled" picks the scaled form matching the family.
/// Throws std::invalid_argument for unknown names or an incompatible family.
RelaxationForm parse_form(const std::string& name, const theta::ThetaFamily& family);

/// Throws std::invalid_argument unless the family suits the form.
void check_compatible(const theta::ThetaFamily& family, RelaxationForm form);

/// Slope used for θ′ in the slack rows where the closed form is unbounded
/// (Weibull k < 1 at 0). Keeps the Jacobian finite.
inline constexpr double kSingularSlope = 1e8;

/// Offsets into the decision vector v = (x, y, z, λ, e). The slack block e is
/// present only for SlackEquality.
struct Layout {
  int n = 0;
  int m = 0;
  int l = 0;
  bool slack = false;

  int x() const { return 0; }
  int y() const { return n; }
  int z() const { return n + m; }
  int lambda() const { return n + m + l; }
  int e() const { return n + m + 2 * l; }
  int size() const { return n + m + (slack ? 3 : 2) * l; }
};

/// Relaxed NLP at a fixed r. Equality rows: F − ∇_y gᵀλ (m), g − z (l), and
/// for SlackEquality the l slack rows. Inequality rows: the upper-level block
/// h (n_upper), then the l scaled rows for the inequality forms. Bounds: the
/// x box, y free, z, λ, e ≥ 0.
struct RelaxedNlp {
  std::shared_ptr<const model::MpecProblem> problem;
  theta::ThetaFamily family = theta::ThetaFamily::one(1.0);
  double r = 1.0;
  RelaxationForm form = kDefaultForm;
  Layout layout;
  nlp::Nlp nlp;

  int n_eq() const { return nlp.n_eq; }
  int n_ineq() const { return nlp.n_ineq; }
};

/// Throws std::invalid_argument for r ≤ 0 or an incompatible family. The
/// family's own r is replaced by `r`.
RelaxedNlp build(std::shared_ptr<const model::MpecProblem> problem,
                 const theta::ThetaFamily& family, double r, RelaxationForm form);

struct ConstraintValues {
  Vec eq;
  Vec ineq;
};

struct ConstraintJacobian {
  Mat eq;
  Mat ineq;
};

/// Row values at v. A non-finite row raises EvaluationError whose row() is
/// the equality row index, or n_eq + the inequality row index.
ConstraintValues eval_constraints(const RelaxedNlp& relaxed, const Vec& v);
ConstraintJacobian eval_jacobian(const RelaxedNlp& relaxed, const Vec& v);

/// Decision vector for an MPEC point, with e_i = max(0, 1 − θ(λ_i) − θ(z_i)).
Vec embed(const RelaxedNlp& relaxed, const model::MpecPoint& pt);
model::MpecPoint extract(const RelaxedNlp& relaxed, const Vec& v);

/// Start built from upper-level values x: y = 0, z = max(g(x, 0), 0), λ = 0.
Vec initial_point(const RelaxedNlp& relaxed, const Vec& x);

/// Recomputes the slack block from z and λ (no-op for the scaled forms).
void reset_slack(const RelaxedNlp& relaxed, Vec& v);

/// Largest violation of rows and bounds at v (0 when feasible).
double max_violation(const RelaxedNlp& relaxed, const Vec& v);

/// Smallest singular value of ∂c_E/∂(y, z, λ), the square (m + 2l) block of
/// the SlackEquality Jacobian. Throws std::invalid_argument for other forms
/// or when the equality rows at v exceed `feas_tol`.
double equality_jacobian_diagnostic(const RelaxedNlp& relaxed, const Vec& v,
                                    double feas_tol = 1e-6);

}  // namespace mpec::relax
