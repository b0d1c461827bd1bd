#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpec/common.hpp"

namespace mpec::theta {

enum class Kind { ThetaOne, Weibull, ThetaLog };

/// A smoothing family θ_r: [0, ∞) → [0, 1) that softly counts nonzeros.
///
///   ThetaOne:    x / (x + r)
///   Weibull(k):  1 − exp(−(x/r)^k)
///   ThetaLog:    log(1 + x) / log(1 + x + r)
///
/// Instances are immutable values; construction rejects r ≤ 0 and k ≤ 0.
class ThetaFamily {
 public:
  static ThetaFamily one(double r);
  static ThetaFamily weibull(double k, double r);
  static ThetaFamily log(double r);

  /// Parses "one", "log", "weibull:<k>" (also "weibull" for k = 1).
  static ThetaFamily parse(const std::string& spec, double r);

  Kind kind() const { return kind_; }
  double r() const { return r_; }
  /// Weibull shape k; 1 for the other kinds.
  double shape() const { return k_; }

  ThetaFamily with_r(double r) const;

  /// "one", "log" or "weibull:<k>".
  std::string name() const;

  bool operator==(const ThetaFamily&) const = default;

 private:
  ThetaFamily(Kind kind, double k, double r);

  Kind kind_;
  double k_;
  double r_;
};

/// θ_r(x). Throws DomainError for x < 0. Returns the literal 0 at x = 0.
double eval(const ThetaFamily& family, double x);

/// dθ_r/dx. Throws DomainError for x < 0 and SingularDerivative for
/// Weibull k < 1 at x = 0.
double deriv(const ThetaFamily& family, double x);

/// Closed forms without the x ≥ 0 guard, for relaxation rows whose
/// finite-difference probes and line-search trials may step slightly below a
/// bound. Outside the natural domain of the closed form the result is NaN.
double eval_extended(const ThetaFamily& family, double x);
double deriv_extended(const ThetaFamily& family, double x);

/// Sampling specification for the condition checks.
///
/// Points are log-spaced on [x_max·1e−8, x_max] plus {0, r, 2r}; when
/// `x_max` is 0 the range is [0, 10·max(1, r)].
struct SamplingGrid {
  int points = 128;
  double x_max = 0.0;
  std::vector<double> r_sweep{1e-1, 1e-2, 1e-3};

  /// Sorted, deduplicated sample points for parameter r.
  std::vector<double> sample(double r) const;
  /// Throws std::invalid_argument unless points ≥ 100 and the sweep has at
  /// least three strictly decreasing positive values.
  void check() const;
};

/// A θ-like function given by callables, so the checks can also run on
/// functions that are not one of the built-in kinds.
struct SmoothingFunction {
  std::string name;
  std::function<double(double x, double r)> value;
  std::function<double(double x, double r)> derivative;
};

SmoothingFunction as_function(const ThetaFamily& family);

struct Witness {
  double x = 0.0;
  double r = 0.0;
  double other = 0.0;  // second sample point for pairwise checks
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::optional<Witness> witness;
  std::string detail;
};

struct ValidationReport {
  std::string function_name;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Margin for strict midpoint concavity.
inline constexpr double kConcavityMargin = 1e-12;
/// 1 − θ_r(x) must fall below this at the smallest swept r for x ≥ 1.
inline constexpr double kLimitThreshold = 0.05;

/// Checks the four defining conditions on samples: monotone, strictly
/// concave (midpoint test), θ_r(0) = 0, θ_r(x) → 1 as r → 0, θ′_r(0) > 0, and
/// the range [0, 1]. Runs at `r` and at every swept r.
///
/// Pairs whose values are both within rounding of the supremum 1 are
/// numerically saturated; they are checked for non-convexity but not for
/// strictness.
ValidationReport validate_conditions(const SmoothingFunction& fn, double r,
                                     const SamplingGrid& grid = {});
ValidationReport validate_conditions(const ThetaFamily& family, const SamplingGrid& grid = {});

struct MembershipResult {
  bool member = true;
  bool equal_everywhere = true;
  std::optional<Witness> violation;
};

/// Θ^{≥1} dominance test: eval(family, x) ≥ x/(x + r) at every sampled x, for
/// the family's own r and every swept r.
MembershipResult is_in_theta_geq1(const ThetaFamily& family, const SamplingGrid& grid = {});

/// θ¹_r(x) + θ¹_r(y) ≤ 1. Within a few ulps of the boundary the sum cannot
/// resolve the inequality, and the equivalent product form x·y ≤ r² decides.
bool lemma2_gate(double x, double y, double r);

// Batched kernels. The parallel versions use OpenMP with the thread cap from
// MPEC_SMOOTH_THREADS; the serial versions are the reference implementation.
std::vector<double> eval_batch(const ThetaFamily& family, std::span<const double> xs);
std::vector<double> eval_batch_serial(const ThetaFamily& family, std::span<const double> xs);

std::vector<std::uint8_t> lemma2_gate_batch(std::span<const double> x, std::span<const double> y,
                                            std::span<const double> r);
std::vector<std::uint8_t> lemma2_gate_batch_serial(std::span<const double> x,
                                                   std::span<const double> y,
                                                   std::span<const double> r);

}  // namespace mpec::theta
