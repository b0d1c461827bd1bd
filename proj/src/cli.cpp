#include "mpec/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "mpec/bench.hpp"
#include "mpec/continuation.hpp"
#include "mpec/format.hpp"
#include "mpec/relax.hpp"
#include "mpec/theta.hpp"

namespace mpec::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

nlp::NlpOptions solver_options(const CliConfig& c) {
  nlp::NlpOptions o;
  o.tol_kkt = c.tol_kkt;
  o.tol_feas = c.tol_feas;
  o.max_outer = c.max_outer;
  o.max_inner = c.max_inner;
  o.penalty_init = c.penalty_init;
  o.penalty_growth = c.penalty_growth;
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return o;
}

theta::ThetaFamily family_of(const CliConfig& c, double r) {
  try {
    return theta::ThetaFamily::parse(c.theta, r);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

relax::RelaxationForm form_of(const CliConfig& c, const theta::ThetaFamily& family) {
  try {
    return relax::parse_form(c.form, family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

const bench::BenchEntry& entry_of(const bench::Registry& reg, const std::string& name) {
  if (name.empty()) throw UsageError("--problem is required");
  try {
    return reg.lookup(name);
  } catch (const bench::UnknownProblem& e) {
    throw UsageError(std::string(e.what()) + "; known: " + join(reg.names(), ", "));
  }
}

std::string render(const std::vector<bench::SuiteRow>& rows, const CliConfig& c) {
  const std::vector<std::string> header{c.echo()};
  if (c.output == "csv") return bench::to_csv(rows, header);
  if (c.output == "md") return bench::to_markdown(rows, header);
  return bench::to_text(rows, header);
}

// ---------------------------------------------------------------------------

int cmd_solve(const CliConfig& c, std::ostream& out) {
  const bench::Registry reg = bench::register_builtin();
  const bench::BenchEntry& entry = entry_of(reg, c.problem);
  if (c.start >= entry.problem->start_count()) throw UsageError("--start index out of range");

  bench::SuiteOptions opts;
  opts.family = family_of(c, c.r.value_or(c.rmin));
  opts.form = form_of(c, opts.family);
  opts.nlp = solver_options(c);
  opts.table = 0;
  if (c.r) {
    opts.mode = bench::SuiteMode::SingleR;
    opts.fixed_r = *c.r;
  } else {
    opts.mode = bench::SuiteMode::Continuation;
    opts.fixed_r = c.rmin;
    opts.r0 = c.r0;
    opts.factor = c.factor;
  }
  if (!(opts.fixed_r > 0.0)) throw UsageError("r must be positive");
  // Table targets for this start still apply to a fixed-r solve.
  const bench::SuiteRow row = bench::run_row(entry, c.start, opts);
  out << render({row}, c);
  if (c.output == "text") {
    out << "objective " << format_number(row.objective);
    if (row.target) out << " target " << format_number(*row.target);
    out << " status " << nlp::to_string(row.status) << (row.passed ? " pass" : " FAIL") << '\n';
  }
  if (row.target) return row.passed ? kExitOk : kExitFailure;
  return row.status == nlp::Status::Optimal ? kExitOk : kExitFailure;
}

int cmd_suite(const CliConfig& c, std::ostream& out) {
  bench::Registry reg = bench::register_builtin();
  if (!c.problems.empty()) {
    for (const std::string& n : c.problems) entry_of(reg, n);
    reg = reg.subset(c.problems);
  }
  bench::SuiteOptions opts;
  opts.family = family_of(c, c.r.value_or(1e-2));
  opts.form = form_of(c, opts.family);
  opts.nlp = solver_options(c);
  if (c.r) {
    opts.table = 0;
    opts.fixed_r = *c.r;
  } else if (c.table != 0) {
    opts.table = c.table;
  } else {
    opts.table = opts.form == relax::RelaxationForm::ScaledInequalityWeibull1 ? 2 : 1;
  }
  if (c.mode == "single") {
    opts.mode = bench::SuiteMode::SingleR;
  } else if (c.mode == "continuation") {
    opts.mode = bench::SuiteMode::Continuation;
  } else {
    throw UsageError("--mode must be continuation or single");
  }
  opts.r0 = c.r0;
  opts.factor = c.factor;
  opts.parallel = !c.serial;
  const std::vector<bench::SuiteRow> rows = bench::run_suite(reg, opts);
  out << render(rows, c);
  return bench::all_passed(rows) ? kExitOk : kExitFailure;
}

int cmd_validate_theta(const CliConfig& c, std::ostream& out) {
  const theta::ThetaFamily family = family_of(c, c.r.value_or(1e-1));
  const theta::ValidationReport report = theta::validate_conditions(family);
  const theta::MembershipResult member = theta::is_in_theta_geq1(family);

  // Property sampling: the θ¹ gate against x·y ≤ r², and for members of the
  // dominating class the implication θ(x) + θ(y) ≤ 1 ⟹ x·y ≤ r².
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int gate_disagreements = 0;
  int implication_violations = 0;
  for (int i = 0; i < c.samples; ++i) {
    const double x = 100.0 * unit(rng);
    const double y = 100.0 * unit(rng);
    const double r = std::pow(10.0, -4.0 + 4.0 * unit(rng));
    const double xy = x * y;
    const bool band = std::abs(xy - r * r) <= 1e-12 * std::max(1.0, xy);
    if (!band && theta::lemma2_gate(x, y, r) != (xy <= r * r)) ++gate_disagreements;
    const theta::ThetaFamily fr = family.with_r(r);
    if (member.member && !band && theta::eval(fr, x) + theta::eval(fr, y) <= 1.0 && xy > r * r) {
      ++implication_violations;
    }
  }

  std::ostringstream os;
  os << "# " << c.echo() << '\n';
  if (c.output == "csv") {
    os << "check,passed,witness_x,witness_r,detail\n";
    for (const theta::CheckResult& ch : report.checks) {
      os << ch.name << ',' << (ch.passed ? "true" : "false") << ','
         << (ch.witness ? format_number(ch.witness->x) : "") << ','
         << (ch.witness ? format_number(ch.witness->r) : "") << ',' << ch.detail << '\n';
    }
    os << "theta_geq1_member," << (member.member ? "true" : "false") << ",,,\n";
    os << "product_gate," << (gate_disagreements == 0 ? "true" : "false") << ",,,"
       << gate_disagreements << " disagreements\n";
    os << "product_implication," << (implication_violations == 0 ? "true" : "false") << ",,,"
       << implication_violations << " violations\n";
  } else {
    os << "theta " << family.name() << " r=" << format_number(family.r()) << '\n';
    for (const theta::CheckResult& ch : report.checks) {
      os << "  " << ch.name << ": " << (ch.passed ? "pass" : "FAIL");
      if (ch.witness) {
        os << " (x=" << format_number(ch.witness->x) << ", r=" << format_number(ch.witness->r)
           << ")";
      }
      if (!ch.detail.empty()) os << " " << ch.detail;
      os << '\n';
    }
    os << "  theta>=1 membership: " << (member.member ? "true" : "false");
    if (member.member && member.equal_everywhere) os << " (equal to theta-one)";
    if (member.violation) {
      os << " (x=" << format_number(member.violation->x)
         << ", r=" << format_number(member.violation->r) << ")";
    }
    os << '\n';
    os << "  product gate vs x*y<=r^2: " << gate_disagreements << " disagreements in " << c.samples
       << " samples\n";
    if (member.member) {
      os << "  sum<=1 implies x*y<=r^2: " << implication_violations << " violations\n";
    }
  }
  out << os.str();
  const bool ok = report.all_passed() && gate_disagreements == 0 && implication_violations == 0;
  return ok ? kExitOk : kExitFailure;
}

int cmd_expansion(const CliConfig& c, std::ostream& out) {
  const bench::Registry reg = bench::register_builtin();
  const bench::BenchEntry& entry = entry_of(reg, c.problem.empty() ? "toy3" : c.problem);
  if (c.start >= entry.problem->start_count()) throw UsageError("--start index out of range");
  const theta::ThetaFamily family = family_of(c, c.r0);
  const relax::RelaxationForm form = form_of(c, family);
  continuation::Schedule sched{c.r0, c.factor, c.rmin};
  try {
    sched.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const nlp::NlpOptions opts = solver_options(c);
  const continuation::ContinuationTrace trace = continuation::run(
      entry.problem, family, form, sched, entry.problem->start(c.start), opts);

  std::ostringstream os;
  os << "# " << c.echo() << '\n';
  os << continuation::to_csv(trace);
  os << "# v_ref=" << format_number(trace.v_ref) << (trace.v_ref_known ? " (known)" : " (last step)")
     << '\n';
  if (trace.fit.available) {
    os << "# fit slope=" << format_number(trace.fit.slope)
       << " coefficient=" << format_number(trace.fit.coefficient)
       << " points=" << trace.fit.points << '\n';
  } else {
    os << "# " << trace.fit.reason << '\n';
  }
  if (trace.converged_early) os << "# converged early\n";
  bool any_optimal = false;
  for (const auto& s : trace.steps) any_optimal |= s.result.status == nlp::Status::Optimal;
  if (any_optimal) {
    const continuation::DistanceTrace dist =
        continuation::distance_trace(*entry.problem, trace, entry.problem->known_solution);
    os << "# distance";
    for (std::size_t i = 0; i < dist.r.size(); ++i) {
      os << ' ' << format_number(dist.r[i]) << ':' << format_number(dist.distance[i]);
    }
    os << '\n';
    if (dist.order.available) os << "# distance order=" << format_number(dist.order.slope) << '\n';
  }
  out << os.str();
  return any_optimal ? kExitOk : kExitFailure;
}

}  // namespace

std::string CliConfig::echo() const {
  std::ostringstream os;
  os << "config: command=" << command;
  if (!problem.empty()) os << " problem=" << problem;
  if (!problems.empty()) os << " problems=" << join(problems, ",");
  os << " theta=" << theta << " form=" << form;
  if (r) os << " r=" << format_number(*r);
  os << " r0=" << format_number(r0) << " factor=" << format_number(factor)
     << " rmin=" << format_number(rmin) << " start=" << start << " table=" << table
     << " mode=" << mode << " output=" << output << " seed=" << seed << " samples=" << samples
     << " tol_kkt=" << format_number(tol_kkt) << " tol_feas=" << format_number(tol_feas)
     << " max_outer=" << max_outer << " max_inner=" << max_inner
     << " penalty_init=" << format_number(penalty_init)
     << " penalty_growth=" << format_number(penalty_growth);
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Smoothing solver for complementarity-constrained programs"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--theta", cfg.theta, "one | log | weibull:k");
    sub->add_option("--form", cfg.form, "slack | scaled")
        ->check(CLI::IsMember({"slack", "scaled"}));
    sub->add_option("--output", cfg.output, "csv | md | text")
        ->check(CLI::IsMember({"csv", "md", "text"}));
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol-kkt", cfg.tol_kkt);
    sub->add_option("--tol-feas", cfg.tol_feas);
    sub->add_option("--max-outer", cfg.max_outer);
    sub->add_option("--max-inner", cfg.max_inner);
    sub->add_option("--penalty-init", cfg.penalty_init);
    sub->add_option("--penalty-growth", cfg.penalty_growth);
  };
  auto schedule = [&](CLI::App* sub) {
    sub->add_option("--r0", cfg.r0, "first r of the schedule");
    sub->add_option("--factor", cfg.factor, "ratio between successive r");
    sub->add_option("--rmin", cfg.rmin, "last r of the schedule");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one problem");
  common(solve);
  schedule(solve);
  solve->add_option("--problem", cfg.problem)->required();
  solve->add_option("--r", cfg.r, "solve once at this r instead of the schedule");
  solve->add_option("--start", cfg.start, "start index");

  CLI::App* suite = app.add_subcommand("suite", "run the benchmark suite");
  common(suite);
  schedule(suite);
  suite->add_option("--r", cfg.r, "use this r for every row instead of the table values");
  suite->add_option("--table", cfg.table, "1 or 2 (default from theta)")
      ->check(CLI::IsMember({0, 1, 2}));
  suite->add_option("--mode", cfg.mode, "continuation | single");
  suite->add_option("--problems", cfg.problems, "restrict to these problems")->delimiter(',');
  suite->add_flag("--serial", cfg.serial, "run rows without OpenMP");

  CLI::App* validate = app.add_subcommand("validate-theta", "check a smoothing family");
  common(validate);
  validate->add_option("--r", cfg.r, "family parameter (default 0.1)");
  validate->add_option("--samples", cfg.samples, "random pairs for the lemma checks")
      ->check(CLI::PositiveNumber);

  CLI::App* expansion = app.add_subcommand("expansion", "continuation trace and slope fit");
  common(expansion);
  schedule(expansion);
  expansion->add_option("--problem", cfg.problem, "default toy3");
  expansion->add_option("--start", cfg.start, "start index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    std::ostringstream report;
    int code = kExitOk;
    if (cfg.command == "solve") code = cmd_solve(cfg, report);
    else if (cfg.command == "suite") code = cmd_suite(cfg, report);
    else if (cfg.command == "validate-theta") code = cmd_validate_theta(cfg, report);
    else code = cmd_expansion(cfg, report);

    if (cfg.out.empty()) {
      out << report.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw UsageError("cannot open '" + cfg.out + "' for writing");
      file << report.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace mpec::cli
