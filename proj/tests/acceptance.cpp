// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpec/bench.hpp"
#include "mpec/cli.hpp"
#include "mpec/continuation.hpp"
#include "mpec/format.hpp"
#include "mpec/model.hpp"
#include "mpec/nlp.hpp"
#include "mpec/relax.hpp"
#include "mpec/theta.hpp"

using namespace mpec;
using relax::RelaxationForm;
using theta::ThetaFamily;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    out.passed = false;
    out.detail += " (over the " + format_number(limit_s) + " s budget)";
  }
  if (!out.passed) ++failures;
  std::printf("%s %s: %s [%.2f s] %s\n", out.passed ? "PASS" : "FAIL", id, title, secs,
              out.detail.c_str());
  std::fflush(stdout);
}

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

ThetaFamily family_for(RelaxationForm form, double r) {
  return form == RelaxationForm::ScaledInequalityWeibull1 ? ThetaFamily::weibull(1.0, r)
                                                          : ThetaFamily::one(r);
}

const RelaxationForm kForms[] = {RelaxationForm::SlackEquality,
                                 RelaxationForm::ScaledInequalityThetaOne,
                                 RelaxationForm::ScaledInequalityWeibull1};

Outcome ac1() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 100.0), le(-4.0, 0.0);
  int disagreements = 0, band = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng), y = u(rng), r = std::pow(10.0, le(rng));
    const double p = x * y, r2 = r * r;
    if (std::abs(p - r2) <= 1e-12 * std::max(1.0, p)) {
      ++band;
      continue;
    }
    if (theta::lemma2_gate(x, y, r) != (p <= r2)) ++disagreements;
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements, " +
                                  std::to_string(band) + " samples in the boundary band"};
}

Outcome ac2() {
  theta::SamplingGrid grid;
  grid.r_sweep = {1e-1, 1e-2, 1e-3};
  std::string bad;
  for (const auto& fam : {ThetaFamily::log(1e-1), ThetaFamily::weibull(0.5, 1e-1),
                          ThetaFamily::weibull(1.0, 1e-1)}) {
    const auto res = theta::is_in_theta_geq1(fam, grid);
    if (!res.member) {
      bad += " " + fam.name();
      if (res.violation) {
        bad += "@x=" + format_number(res.violation->x) + ",r=" + format_number(res.violation->r);
      }
    }
  }
  return {bad.empty(), bad.empty() ? "log, weibull:0.5, weibull:1 dominate x/(x+r)"
                                   : "violations:" + bad};
}

// Random (x, y) with a complementary (z, λ) pair: the shared rows of the
// relaxation are those of the original problem, so its violation can never
// exceed the original one.
Outcome ac3() {
  const auto reg = bench::register_builtin();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0), le(-4.0, 4.0);
  int nest_viol = 0, prod_viol = 0, feasible_pts = 0, pair_checks = 0, points = 0;
  const ThetaFamily dominating[] = {ThetaFamily::one(1.0), ThetaFamily::log(1.0),
                                    ThetaFamily::weibull(1.0, 1.0),
                                    ThetaFamily::weibull(0.5, 1.0)};
  for (const auto* e : reg.entries()) {
    const auto& p = e->problem;
    std::vector<relax::RelaxedNlp> rels;
    for (auto form : kForms) {
      for (double r : {1e-1, 1e-3}) rels.push_back(relax::build(p, family_for(form, r), r, form));
    }
    std::vector<relax::RelaxedNlp> slack;
    for (const auto& fam : dominating) {
      for (double r : {1e-1, 1e-3}) {
        slack.push_back(relax::build(p, fam.with_r(r), r, RelaxationForm::SlackEquality));
      }
    }
    auto mpec_points = [&](int count) {
      std::vector<model::MpecPoint> pts;
      if (p->known_solution) pts.push_back(*p->known_solution);
      while (static_cast<int>(pts.size()) < count) {
        model::MpecPoint pt{Vec(p->n), Vec(p->m), Vec(p->l), Vec(p->l)};
        for (int i = 0; i < p->n; ++i) {
          const double lo = std::max(p->x_lower[i], -10.0), hi = std::min(p->x_upper[i], 10.0);
          pt.x[i] = lo + (hi - lo) * u(rng);
        }
        for (int i = 0; i < p->m; ++i) pt.y[i] = -10.0 + 20.0 * u(rng);
        for (int i = 0; i < p->l; ++i) {
          const double pick = u(rng);
          pt.z[i] = pick < 0.4 ? 0.0 : 10.0 * u(rng);
          pt.lambda[i] = pick >= 0.4 && pick < 0.8 ? 0.0 : (pt.z[i] == 0.0 ? 10.0 * u(rng) : 0.0);
        }
        pts.push_back(std::move(pt));
      }
      return pts;
    };
    for (const auto& pt : mpec_points(1000)) {
      ++points;
      const double base = model::residuals(*p, pt).max();
      if (base <= 1e-6) ++feasible_pts;
      for (const auto& rel : rels) {
        const double relaxed = relax::max_violation(rel, relax::embed(rel, pt));
        if (relaxed > base * (1 + 1e-12) + 1e-12) ++nest_viol;
      }
    }
    // Pairs on a log scale around r for the second inclusion.
    const int lo_row = p->m + p->l;
    for (int k = 0; k < 1000; ++k) {
      auto pt = mpec_points(1).back();
      for (const auto& rel : slack) {
        const double r = rel.r;
        for (int i = 0; i < p->l; ++i) {
          pt.z[i] = r * std::pow(10.0, le(rng));
          pt.lambda[i] = r * std::pow(10.0, le(rng));
        }
        const Vec w = relax::embed(rel, pt);
        const Vec eq = relax::eval_constraints(rel, w).eq;
        for (int i = 0; i < p->l; ++i) {
          if (eq[lo_row + i] > 0.0) continue;  // pair row infeasible
          ++pair_checks;
          if (pt.lambda[i] * pt.z[i] > r * r * (1 + 1e-12)) ++prod_viol;
        }
      }
    }
  }
  std::ostringstream msg;
  msg << points << " points (" << feasible_pts << " feasible for the original problem), "
      << nest_viol << " nesting violations; " << pair_checks << " relaxation-feasible pairs, "
      << prod_viol << " with λz > r²";
  return {nest_viol == 0 && prod_viol == 0 && pair_checks > 0, msg.str()};
}

Outcome ac4() {
  const auto reg = bench::register_builtin();
  int checks = 0;
  std::string bad;
  double worst = 0.0;
  for (const auto* e : reg.entries()) {
    const auto& p = e->problem;
    for (auto form : kForms) {
      for (double r : {1e-1, 1e-3}) {
        const auto rel = relax::build(p, family_for(form, r), r, form);
        for (std::size_t s = 0; s < p->start_count(); ++s) {
          const Vec w = relax::initial_point(rel, p->start(s));
          const auto rep = nlp::check_derivatives(rel.nlp, w);
          ++checks;
          worst = std::max(worst, rep.max_rel_error);
          if (!rep.passed()) {
            bad += " " + p->name + "/" + relax::to_string(form) + "/r=" + format_number(r) +
                   "/start" + std::to_string(s);
          }
        }
      }
    }
  }
  return {bad.empty(), std::to_string(checks) + " checks, worst relative error " +
                           format_number(worst) + (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome ac5() {
  const auto reg = bench::register_builtin();
  const auto sub = reg.subset({"toy1", "toy2"});
  std::string detail;
  bool ok = true;
  for (int table : {1, 2}) {
    bench::SuiteOptions opts;
    opts.table = table;
    opts.family = table == 1 ? ThetaFamily::one(1e-2) : ThetaFamily::weibull(1.0, 1e-2);
    opts.form = table == 1 ? RelaxationForm::ScaledInequalityThetaOne
                           : RelaxationForm::ScaledInequalityWeibull1;
    for (const auto& row : bench::run_suite(sub, opts)) {
      const double oracle = bench::run_oracle(reg.lookup(row.problem)).value;
      const double gap = std::abs(row.objective - oracle);
      if (!(gap <= 1e-6)) ok = false;
      detail += row.problem + "/" + row.theta + " gap " + format_number(gap) + "; ";
    }
  }
  return {ok, detail};
}

Outcome table_suite(int table) {
  const auto reg = bench::register_builtin();
  std::vector<std::string> names;
  for (const auto* e : reg.entries()) {
    if (e->source == bench::Source::MacMPEC) names.push_back(e->name());
  }
  bench::SuiteOptions opts;
  opts.table = table;
  opts.family = table == 1 ? ThetaFamily::one(1e-2) : ThetaFamily::weibull(1.0, 1e-2);
  opts.form = table == 1 ? RelaxationForm::ScaledInequalityThetaOne
                         : RelaxationForm::ScaledInequalityWeibull1;
  const auto rows = bench::run_suite(reg.subset(names), opts);
  int passed = 0;
  std::string bad;
  for (const auto& row : rows) {
    if (row.passed) {
      ++passed;
    } else {
      bad += " " + row.problem + " " + row.start_label + " got " + format_number(row.objective) +
             " target " + (row.target ? format_number(*row.target) : "none") + " (" +
             nlp::to_string(row.status) + ")";
    }
  }
  return {bench::all_passed(rows) && !rows.empty(),
          std::to_string(passed) + "/" + std::to_string(rows.size()) + " rows" +
              (bad.empty() ? "" : "; failing:" + bad)};
}

continuation::ContinuationTrace toy1_trace(RelaxationForm form) {
  const auto reg = bench::register_builtin();
  const auto& p = reg.lookup("toy1").problem;
  continuation::Schedule sched{1e-1, 0.1, 1e-5};
  return continuation::run(p, ThetaFamily::one(1e-1), form, sched, p->start(0));
}

Outcome ac8() {
  const auto trace = toy1_trace(RelaxationForm::ScaledInequalityThetaOne);
  std::ostringstream msg;
  msg << trace.steps.size() << " steps, ";
  if (trace.converged_early) {
    msg << "every |v_r - v0| below 10 tol_kkt (flagged converged early)";
    return {true, msg.str()};
  }
  if (!trace.fit.available) {
    msg << "fit unavailable: " << trace.fit.reason;
    return {false, msg.str()};
  }
  msg << "slope " << format_number(trace.fit.slope) << " over " << trace.fit.points << " points";
  return {trace.fit.slope >= 1.5 && trace.fit.slope <= 2.5, msg.str()};
}

// F = (y1 + y2 − x, y1 + y2 − x), g = (y1 + y2, y1 + y2): two identical rows.
std::shared_ptr<model::MpecProblem> duplicated_rows() {
  auto p = std::make_shared<model::MpecProblem>();
  p->name = "dup";
  p->n = 1;
  p->m = 2;
  p->l = 2;
  Mat A(2, 2);
  A << 1, 1, 1, 1;
  p->f = [](const Vec& x, const Vec& y) { return x.squaredNorm() + y.squaredNorm(); };
  p->grad_f = [](const Vec& x, const Vec& y) {
    Vec g(3);
    g << 2 * x, 2 * y;
    return g;
  };
  p->F = [A](const Vec& x, const Vec& y) { return Vec(A * y - Vec::Constant(2, x[0])); };
  p->jac_F = [A](const Vec&, const Vec&) {
    Mat J(2, 3);
    J << -Vec::Ones(2), A;
    return J;
  };
  p->g = [A](const Vec&, const Vec& y) { return Vec(A * y); };
  p->jac_g = [A](const Vec&, const Vec&) {
    Mat J(2, 3);
    J << Vec::Zero(2), A;
    return J;
  };
  p->x_lower = v({-10});
  p->x_upper = v({10});
  return p;
}

Outcome ac9() {
  const auto trace = toy1_trace(RelaxationForm::SlackEquality);
  const auto reg = bench::register_builtin();
  const auto& p = reg.lookup("toy1").problem;
  double smallest = INFINITY;
  for (const auto& step : trace.steps) {
    const auto rel = relax::build(p, ThetaFamily::one(step.r), step.r, RelaxationForm::SlackEquality);
    smallest = std::min(smallest, relax::equality_jacobian_diagnostic(rel, step.result.point));
  }
  const auto dup = relax::build(duplicated_rows(), ThetaFamily::one(0.1), 0.1,
                                RelaxationForm::SlackEquality);
  const model::MpecPoint origin{v({0}), v({0, 0}), v({0, 0}), v({0, 0})};
  const double degenerate = relax::equality_jacobian_diagnostic(dup, relax::embed(dup, origin));
  return {!trace.steps.empty() && smallest > 1e-10 && degenerate < 1e-12,
          "toy1 min sigma " + format_number(smallest) + " over " +
              std::to_string(trace.steps.size()) + " steps; rank-deficient fixture sigma " +
              format_number(degenerate)};
}

std::string suite_csv(const char* theta) {
  const char* argv[] = {"mpec-smooth", "suite", "--theta", theta, "--output", "csv"};
  std::ostringstream out, err;
  cli::run(6, argv, out, err);
  return out.str();
}

Outcome ac10() {
  std::string detail;
  bool ok = true;
  for (const char* theta : {"one", "weibull:1"}) {
    const std::string a = suite_csv(theta), b = suite_csv(theta);
    const bool same = a == b && !a.empty();
    ok = ok && same;
    detail += std::string(theta) + (same ? " identical (" : " DIFFERENT (") +
              std::to_string(a.size()) + " bytes); ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  report("AC1", "product gate equivalence", 1.0, ac1);
  report("AC2", "dominating class membership", 1.0, ac2);
  report("AC3", "feasible-set nesting", 0.0, ac3);
  report("AC4", "derivative correctness", 0.0, ac4);
  report("AC5", "toy oracle equivalence", 30.0, ac5);
  report("AC6", "theta-one table reproduction", 120.0, [] { return table_suite(1); });
  report("AC7", "Weibull-1 table reproduction", 120.0, [] { return table_suite(2); });
  report("AC8", "expansion order on toy1", 10.0, ac8);
  report("AC9", "equality Jacobian diagnostic", 0.0, ac9);
  report("AC10", "deterministic suite CSV", 0.0, ac10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
