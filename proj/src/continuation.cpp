#include "mpec/continuation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mpec/format.hpp"

namespace mpec::continuation {

void Schedule::validate() const {
  if (!(r_min > 0.0) || !std::isfinite(r_min)) {
    throw std::invalid_argument("schedule: r_min must be positive");
  }
  if (!(r0 >= r_min) || !std::isfinite(r0)) {
    throw std::invalid_argument("schedule: r0 must be at least r_min");
  }
  if (!(factor > 0.0 && factor < 1.0)) {
    throw std::invalid_argument("schedule: factor must lie in (0, 1)");
  }
}

std::vector<double> Schedule::values() const {
  validate();
  std::vector<double> out;
  // Multiply from r0 by powers of the factor so that 1e-1·0.1^k stays close
  // to the decimal values; snap to r_min within rounding.
  for (int k = 0;; ++k) {
    double r = r0 * std::pow(factor, k);
    if (r < r_min * (1.0 - 1e-9)) break;
    if (std::abs(r - r_min) <= 1e-9 * r_min) r = r_min;
    out.push_back(r);
    if (r == r_min) break;
  }
  return out;
}

PowerFit fit_power_law(const std::vector<double>& r, const std::vector<double>& y) {
  if (r.size() != y.size()) throw DimensionError("fit: size mismatch");
  PowerFit fit;
  fit.points = static_cast<int>(r.size());
  if (fit.points < 3) {
    fit.reason = "fit unavailable: fewer than 3 qualifying steps";
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit: values must be positive");
    const double lx = std::log(r[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = fit.points;
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 1e-300)) {
    fit.reason = "fit unavailable: r values do not vary";
    return fit;
  }
  fit.slope = (n * sxy - sx * sy) / den;
  fit.coefficient = std::exp((sy - fit.slope * sx) / n);
  fit.available = true;
  return fit;
}

namespace {

void accumulate(nlp::Counters& total, const nlp::Counters& c) {
  total.major += c.major;
  total.minor += c.minor;
  total.objective += c.objective;
  total.gradient += c.gradient;
  total.constraints += c.constraints;
  total.jacobian += c.jacobian;
}

}  // namespace

ContinuationTrace run(std::shared_ptr<const model::MpecProblem> problem,
                      const theta::ThetaFamily& family, relax::RelaxationForm form,
                      const Schedule& sched, const Vec& start, const nlp::NlpOptions& opts) {
  if (!problem) throw std::invalid_argument("continuation: null problem");
  relax::check_compatible(family, form);
  opts.validate();
  const std::vector<double> rs = sched.values();

  ContinuationTrace trace;
  trace.problem = problem->name;
  trace.theta = family.name();
  trace.form = form;

  Vec v;
  nlp::WarmStart warm;
  bool have_warm = false;
  for (double r : rs) {
    const relax::RelaxedNlp relaxed = relax::build(problem, family, r, form);
    if (v.size() == 0) {
      if (start.size() == relaxed.layout.size()) {
        v = start;
      } else if (start.size() == problem->n) {
        v = relax::initial_point(relaxed, start);
      } else {
        throw DimensionError("continuation: start matches neither x nor the decision vector");
      }
    }
    relax::reset_slack(relaxed, v);

    StepRecord step;
    step.r = r;
    step.result = nlp::solve(relaxed.nlp, v, opts, have_warm ? &warm : nullptr);
    accumulate(trace.total, step.result.counters);
    const Vec& p = step.result.point;
    const model::MpecPoint pt = relax::extract(relaxed, p);
    try {
      step.value = problem->f(pt.x, pt.y);
      step.feasibility = relax::max_violation(relaxed, p);
    } catch (const EvaluationError&) {
      step.value = std::numeric_limits<double>::quiet_NaN();
      step.feasibility = std::numeric_limits<double>::infinity();
    }
    step.complementarity = model::complementarity_residual(pt.z, pt.lambda);

    if (step.result.status != nlp::Status::EvaluationError) {
      v = p;
      warm.mult_eq = step.result.mult_eq;
      warm.mult_ineq = step.result.mult_ineq;
      warm.penalty = step.result.penalty;
      have_warm = true;
    }
    trace.steps.push_back(std::move(step));
  }

  // Reference value and fit.
  const StepRecord* last_optimal = nullptr;
  for (const StepRecord& s : trace.steps) {
    if (s.result.status == nlp::Status::Optimal) last_optimal = &s;
  }
  if (problem->known_optimal_value) {
    trace.v_ref = *problem->known_optimal_value;
    trace.v_ref_known = true;
  } else if (last_optimal != nullptr) {
    trace.v_ref = last_optimal->value;
  } else {
    trace.v_ref = trace.steps.back().value;
  }

  const double floor = 10.0 * opts.tol_kkt;
  std::vector<double> fr, fy;
  int optimal = 0;
  bool all_small = true;
  for (const StepRecord& s : trace.steps) {
    if (s.result.status != nlp::Status::Optimal) continue;
    ++optimal;
    const double gap = std::abs(s.value - trace.v_ref);
    if (gap >= floor) {
      all_small = false;
      fr.push_back(s.r);
      fy.push_back(gap);
    }
  }
  trace.converged_early = optimal > 0 && all_small;
  if (optimal < 3) {
    trace.fit.reason = "fit unavailable: fewer than 3 Optimal steps";
  } else if (trace.converged_early) {
    trace.fit.reason = "fit unavailable: converged early, all gaps below 10*tol_kkt";
  } else {
    trace.fit = fit_power_law(fr, fy);
  }
  return trace;
}

DistanceTrace distance_trace(const model::MpecProblem& problem, const ContinuationTrace& trace,
                             const std::optional<model::MpecPoint>& reference) {
  auto stack = [&](const Vec& v) {
    // (x, y, z, λ) are the leading n + m + 2l entries of every layout.
    return Vec(v.head(problem.n + problem.m + 2 * problem.l));
  };
  const StepRecord* last_optimal = nullptr;
  for (const StepRecord& s : trace.steps) {
    if (s.result.status == nlp::Status::Optimal) last_optimal = &s;
  }
  if (last_optimal == nullptr) throw std::invalid_argument("missing reference comparisons");

  Vec ref;
  if (reference) {
    const model::MpecPoint& pt = *reference;
    if (pt.x.size() != problem.n || pt.y.size() != problem.m || pt.z.size() != problem.l ||
        pt.lambda.size() != problem.l) {
      throw DimensionError("distance_trace: reference has the wrong dimensions");
    }
    ref.resize(problem.n + problem.m + 2 * problem.l);
    ref << pt.x, pt.y, pt.z, pt.lambda;
  } else {
    ref = stack(last_optimal->result.point);
  }

  DistanceTrace out;
  std::vector<double> fr, fd;
  for (const StepRecord& s : trace.steps) {
    if (s.result.status != nlp::Status::Optimal) continue;
    const double d = (stack(s.result.point) - ref).norm();
    out.r.push_back(s.r);
    out.distance.push_back(d);
    if (d > 1e-12 * (1.0 + ref.norm())) {
      fr.push_back(s.r);
      fd.push_back(d);
    }
  }
  out.order = fit_power_law(fr, fd);
  return out;
}

std::string to_csv(const ContinuationTrace& trace) {
  std::ostringstream os;
  os << "r,status,v_r,kkt,feas,comp,itM,itm,nObj,nGrad,nConstr,nJac\n";
  for (const StepRecord& s : trace.steps) {
    const nlp::Counters& c = s.result.counters;
    os << format_number(s.r) << ',' << nlp::to_string(s.result.status) << ','
       << format_number(s.value) << ',' << format_number(s.result.kkt_residual) << ','
       << format_number(s.feasibility) << ',' << format_number(s.complementarity) << ','
       << c.major << ',' << c.minor << ',' << c.objective << ',' << c.gradient << ','
       << c.constraints << ',' << c.jacobian << '\n';
  }
  return os.str();
}

}  // namespace mpec::continuation
