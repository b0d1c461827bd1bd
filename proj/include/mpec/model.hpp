#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpec/common.hpp"

namespace mpec::model {

/// Callbacks take the upper-level variables x (size n) and lower-level
/// variables y (size m). Jacobians are with respect to the stacked (x, y), so
/// they have n + m columns.
using ScalarFn = std::function<double(const Vec& x, const Vec& y)>;
using VectorFn = std::function<Vec(const Vec& x, const Vec& y)>;
using MatrixFn = std::function<Mat(const Vec& x, const Vec& y)>;
using MatrixListFn = std::function<std::vector<Mat>(const Vec& x, const Vec& y)>;

/// A point (x, y, z, λ) of the complementarity-constrained problem.
struct MpecPoint {
  Vec x;
  Vec y;
  Vec z;
  Vec lambda;
};

/// Data of the complementarity-constrained problem
///
///   min f(x, y)
///   s.t. x ∈ X (box), h(x, y) ≥ 0,
///        F(x, y) − ∇_y g(x, y)ᵀ λ = 0,
///        g(x, y) = z,
///        z ≥ 0, λ ≥ 0, λᵀz = 0.
///
/// The upper-level block h is optional (n_upper = 0 leaves it out). Problems
/// are immutable after construction and callbacks must be pure.
struct MpecProblem {
  std::string name;
  int n = 0;
  int m = 0;
  int l = 0;
  int n_upper = 0;

  ScalarFn f;
  VectorFn grad_f;  // n + m
  VectorFn F;       // m
  MatrixFn jac_F;   // m × (n + m)
  VectorFn g;       // l
  MatrixFn jac_g;   // l × (n + m)
  /// Per row i, ∂(∇_y g_i)/∂(x, y) as an m × (n + m) matrix. May be left empty
  /// when g is affine in y.
  MatrixListFn jac_grad_y_g;
  VectorFn h;      // n_upper
  MatrixFn jac_h;  // n_upper × (n + m)

  Vec x_lower;
  Vec x_upper;

  std::optional<double> known_optimal_value;
  std::optional<MpecPoint> known_solution;
  /// Starting values for x. An empty list means the default start.
  std::vector<Vec> starts;

  /// Throws DimensionError when sizes or bounds are inconsistent.
  void validate() const;

  /// ∇_y g(x, y) as an l × m matrix (the y columns of jac_g).
  Mat grad_y_g(const Vec& x, const Vec& y) const;
  /// Σ_i λ_i ∂(∇_y g_i)/∂(x, y), an m × (n + m) matrix.
  Mat weighted_grad_y_g_jacobian(const Vec& x, const Vec& y, const Vec& lambda) const;

  /// Zeros projected onto the box.
  Vec default_start() const;
  /// Registered start `index` (or the default start when none are registered),
  /// projected onto the box. Throws std::out_of_range for a bad index.
  Vec start(std::size_t index) const;
  std::size_t start_count() const { return starts.empty() ? 1 : starts.size(); }
  Vec project_x(const Vec& x) const;
};

struct ResidualReport {
  double stationarity = 0.0;     // ‖F − ∇_y gᵀλ‖∞
  double primal = 0.0;           // ‖g(x, y) − z‖∞
  double bound_violation = 0.0;  // x outside the box
  double upper_violation = 0.0;  // max(0, −min h)
  double nonnegativity = 0.0;    // max(0, −min z, −min λ)
  double complementarity = 0.0;  // max_i min(z_i⁺, λ_i⁺)

  double max() const;
};

ResidualReport residuals(const MpecProblem& p, const MpecPoint& pt);

/// Complementarity residual alone: max_i min(max(z_i, 0), max(λ_i, 0)).
double complementarity_residual(const Vec& z, const Vec& lambda);

inline constexpr double kDefaultActiveTolerance = 1e-6;

struct ActiveSets {
  std::vector<int> z_active;       // {i : |z_i| ≤ tol}
  std::vector<int> lambda_active;  // {i : |λ_i| ≤ tol}
  std::vector<int> biactive;
  double tolerance = kDefaultActiveTolerance;
};

/// Zero-based index sets. Throws std::invalid_argument for tol < 0.
ActiveSets active_sets(const MpecPoint& pt, double tol = kDefaultActiveTolerance);

}  // namespace mpec::model
