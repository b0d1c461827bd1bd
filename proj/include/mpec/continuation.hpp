#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpec/model.hpp"
#include "mpec/nlp.hpp"
#include "mpec/relax.hpp"
#include "mpec/theta.hpp"

namespace mpec::continuation {

/// Geometric schedule r0, r0·factor, … down to r_min (inclusive, up to
/// rounding). r0 == r_min gives a single step.
struct Schedule {
  double r0 = 1e-1;
  double factor = 0.1;
  double r_min = 1e-6;

  /// Throws std::invalid_argument unless r0 ≥ r_min > 0 and 0 < factor < 1.
  void validate() const;
  std::vector<double> values() const;
};

struct StepRecord {
  double r = 0.0;
  nlp::SolveResult result;
  double value = 0.0;            // f at the step's solution
  double complementarity = 0.0;  // max_i min(z_i, λ_i)
  double feasibility = 0.0;      // largest row/bound violation of the relaxed NLP
};

/// Least-squares fit of log y = log c + p·log r.
struct PowerFit {
  bool available = false;
  double slope = 0.0;
  double coefficient = 0.0;
  int points = 0;
  std::string reason;  // why the fit is unavailable
};

PowerFit fit_power_law(const std::vector<double>& r, const std::vector<double>& y);

struct ContinuationTrace {
  std::string problem;
  std::string theta;
  relax::RelaxationForm form = relax::kDefaultForm;
  std::vector<StepRecord> steps;  // strictly decreasing r
  double v_ref = 0.0;
  bool v_ref_known = false;  // true when taken from the problem's known value
  /// Fit of |v_r − v_ref| ≈ c·r^p over Optimal steps with |v_r − v_ref| ≥ 10·tol_kkt.
  PowerFit fit;
  /// Every Optimal step is already within 10·tol_kkt of v_ref.
  bool converged_early = false;
  nlp::Counters total;

  bool empty() const { return steps.empty(); }
  const StepRecord& last() const { return steps.back(); }
  /// Final decision vector of the last step.
  Vec final_point() const { return steps.empty() ? Vec() : steps.back().result.point; }
};

/// Solves the relaxation for each r of the schedule, warm-starting from the
/// previous step (slack block re-initialised for SlackEquality). `start` is
/// either a full decision vector of the first relaxed NLP or upper-level
/// values x, in which case relax::initial_point completes it.
ContinuationTrace run(std::shared_ptr<const model::MpecProblem> problem,
                      const theta::ThetaFamily& family, relax::RelaxationForm form,
                      const Schedule& sched, const Vec& start, const nlp::NlpOptions& opts = {});

struct DistanceTrace {
  std::vector<double> r;
  std::vector<double> distance;  // ‖(x, y, z, λ)(r) − X*‖₂
  PowerFit order;
};

/// Distances of the Optimal steps to `reference`, or to the last Optimal
/// step when no reference is given. Throws std::invalid_argument("missing
/// reference comparisons") when the trace has no Optimal step.
DistanceTrace distance_trace(const model::MpecProblem& problem, const ContinuationTrace& trace,
                             const std::optional<model::MpecPoint>& reference = std::nullopt);

/// Columns r,status,v_r,kkt,feas,comp,itM,itm,nObj,nGrad,nConstr,nJac.
std::string to_csv(const ContinuationTrace& trace);

}  // namespace mpec::continuation
