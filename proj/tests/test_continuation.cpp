#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpec/bench.hpp"
#include "mpec/continuation.hpp"

using namespace mpec;
using continuation::Schedule;
using relax::RelaxationForm;
using theta::ThetaFamily;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

continuation::ContinuationTrace trace_for(const std::string& name, Schedule sched,
                                          RelaxationForm form = RelaxationForm::ScaledInequalityThetaOne) {
  const auto reg = bench::register_builtin();
  const auto& p = reg.lookup(name).problem;
  const auto fam = form == RelaxationForm::ScaledInequalityWeibull1 ? ThetaFamily::weibull(1.0, 0.1)
                                                                    : ThetaFamily::one(0.1);
  return continuation::run(p, fam, form, sched, p->start(0));
}

}  // namespace

TEST_CASE("schedule values and validation") {
  const auto vals = Schedule{1e-1, 0.1, 1e-4}.values();
  REQUIRE(vals.size() == 4);
  CHECK(vals.front() == 1e-1);
  CHECK(vals.back() == doctest::Approx(1e-4).epsilon(1e-12));
  for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] < vals[i - 1]);
  CHECK(Schedule{1e-2, 0.5, 1e-2}.values().size() == 1);

  CHECK_THROWS_AS((Schedule{1e-3, 0.1, 1e-2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Schedule{1e-1, 1.0, 1e-2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Schedule{1e-1, 0.0, 1e-2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Schedule{1e-1, 0.1, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("power-law fit recovers a known slope") {
  std::vector<double> r, y;
  for (double x : {1e-1, 1e-2, 1e-3, 1e-4}) {
    r.push_back(x);
    y.push_back(3.0 * x * x);
  }
  const auto fit = continuation::fit_power_law(r, y);
  REQUIRE(fit.available);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.coefficient == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(fit.points == 4);

  const auto single = continuation::fit_power_law({1e-2}, {1e-4});
  CHECK_FALSE(single.available);
  CHECK_FALSE(single.reason.empty());
}

TEST_CASE("toy3 values approach the limit at second order") {
  const auto trace = trace_for("toy3", {1e-1, 0.1, 1e-5});
  REQUIRE(trace.steps.size() == 5);
  CHECK(trace.v_ref_known);
  CHECK(trace.v_ref == doctest::Approx(0.5));
  for (std::size_t i = 1; i < trace.steps.size(); ++i) CHECK(trace.steps[i].r < trace.steps[i - 1].r);
  REQUIRE(trace.fit.available);
  CHECK(trace.fit.slope >= 1.5);
  CHECK(trace.fit.slope <= 2.5);
  CHECK_FALSE(trace.converged_early);
}

TEST_CASE("a single r gives no fit") {
  const auto trace = trace_for("toy3", {1e-2, 0.1, 1e-2});
  REQUIRE(trace.steps.size() == 1);
  CHECK_FALSE(trace.fit.available);
  CHECK_FALSE(trace.fit.reason.empty());
}

TEST_CASE("toy1 is flagged as converged early") {
  for (auto form : {RelaxationForm::ScaledInequalityThetaOne, RelaxationForm::ScaledInequalityWeibull1,
                    RelaxationForm::SlackEquality}) {
    const auto trace = trace_for("toy1", {1e-1, 0.1, 1e-5}, form);
    CAPTURE(relax::to_string(form));
    REQUIRE(trace.steps.size() == 5);
    for (const auto& s : trace.steps) CHECK(s.result.status == nlp::Status::Optimal);
    CHECK(trace.converged_early);
    CHECK(trace.last().value == doctest::Approx(trace.v_ref).epsilon(1e-7));
  }
}

TEST_CASE("counters are summed over the steps") {
  const auto trace = trace_for("toy3", {1e-1, 0.1, 1e-3});
  nlp::Counters sum;
  for (const auto& s : trace.steps) {
    sum.major += s.result.counters.major;
    sum.minor += s.result.counters.minor;
    sum.objective += s.result.counters.objective;
    sum.jacobian += s.result.counters.jacobian;
  }
  CHECK(trace.total.major == sum.major);
  CHECK(trace.total.minor == sum.minor);
  CHECK(trace.total.objective == sum.objective);
  CHECK(trace.total.jacobian == sum.jacobian);
}

TEST_CASE("distance trace") {
  const auto reg = bench::register_builtin();
  const auto& p = *reg.lookup("toy3").problem;
  const auto trace = trace_for("toy3", {1e-1, 0.1, 1e-4});
  const auto d = continuation::distance_trace(p, trace);
  REQUIRE(d.r.size() == trace.steps.size());
  CHECK(d.distance.back() == 0.0);
  for (double x : d.distance) CHECK(x >= 0.0);

  continuation::ContinuationTrace empty;
  CHECK_THROWS_WITH_AS(continuation::distance_trace(p, empty), "missing reference comparisons",
                       std::invalid_argument);
}

TEST_CASE("trace CSV has one row per step with the documented columns") {
  const auto trace = trace_for("toy1", {1e-1, 0.1, 1e-3});
  const std::string csv = continuation::to_csv(trace);
  std::stringstream ss(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(ss, line)) {
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  }
  REQUIRE(rows.size() == 1 + trace.steps.size());
  CHECK(rows[0] == "r,status,v_r,kkt,feas,comp,itM,itm,nObj,nGrad,nConstr,nJac");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i], ',');
    REQUIRE(cells.size() == 12);
    CHECK(std::stod(cells[0]) == doctest::Approx(trace.steps[i - 1].r));
    CHECK(cells[1] == "Optimal");
  }
  CHECK(csv == continuation::to_csv(trace_for("toy1", {1e-1, 0.1, 1e-3})));
}
