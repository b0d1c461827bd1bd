#include "mpec/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "mpec/format.hpp"
#include "mpec/parallel.hpp"
#include "problems.hpp"

namespace mpec::bench {

std::string to_string(Source source) { return source == Source::Toy ? "toy" : "macmpec"; }

const TableData& BenchEntry::table(int which) const {
  if (which == 1) return table1;
  if (which == 2) return table2;
  throw std::invalid_argument("bench: table must be 1 or 2");
}

// ---------------------------------------------------------------------------
// Oracle

OracleResult run_oracle(const BenchEntry& entry) {
  if (!entry.oracle) throw std::invalid_argument("bench: " + entry.name() + " has no oracle");
  const model::MpecProblem& p = *entry.problem;
  if (p.n != 1 || p.m != 1 || p.l != 1 || p.n_upper != 0) {
    throw std::invalid_argument("bench: grid oracle needs a scalar toy");
  }
  const GridOracle& grid = *entry.oracle;
  const int count = static_cast<int>(std::llround((grid.hi - grid.lo) / grid.step));
  auto at = [&](int i) { return grid.lo + i * grid.step; };

  OracleResult best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  Vec x(1), y(1);
  auto consider = [&](double xv, double yv) {
    x[0] = xv;
    y[0] = yv;
    const double f = p.f(x, y);
    if (f < best.value) best = OracleResult{f, xv, yv};
  };
  for (int i = 0; i <= count; ++i) {
    x[0] = at(i);
    if (x[0] < p.x_lower[0] || x[0] > p.x_upper[0]) continue;
    // Case z = g = 0: y = 0 and λ = F/∂_y g must be nonnegative.
    y[0] = 0.0;
    const double gy = p.jac_g(x, y)(0, 1);
    if (gy != 0.0 && p.F(x, y)[0] / gy >= 0.0) consider(x[0], 0.0);
    // Case λ = 0: F(x, y) = 0 with y ≥ 0, roots bracketed on the y grid.
    y[0] = at(0);
    double prev_y = y[0];
    double prev_f = p.F(x, y)[0];
    for (int j = 1; j <= count; ++j) {
      y[0] = at(j);
      const double fj = p.F(x, y)[0];
      if (prev_f == 0.0 || (prev_f < 0.0) != (fj < 0.0)) {
        const double root = prev_f == fj ? prev_y : prev_y - prev_f * (y[0] - prev_y) / (fj - prev_f);
        if (root >= 0.0) consider(x[0], root);
      }
      prev_y = y[0];
      prev_f = fj;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Registry

void Registry::add(BenchEntry entry) {
  if (!entry.problem) throw std::invalid_argument("bench: entry without problem");
  const std::string name = entry.problem->name;
  entries_.insert_or_assign(name, std::move(entry));
}

const BenchEntry& Registry::lookup(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownProblem("unknown problem '" + name + "'");
  return it->second;
}

bool Registry::contains(const std::string& name) const { return entries_.count(name) > 0; }

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

std::vector<const BenchEntry*> Registry::entries() const {
  std::vector<const BenchEntry*> out;
  for (const auto& [name, entry] : entries_) out.push_back(&entry);
  return out;
}

Registry Registry::subset(const std::vector<std::string>& names) const {
  Registry out;
  for (const std::string& n : names) out.add(lookup(n));
  return out;
}

Registry register_builtin() {
  Registry reg;
  for (BenchEntry& e : detail::builtin_entries()) reg.add(std::move(e));
  return reg;
}

// ---------------------------------------------------------------------------
// Suite

bool matches_target(double value, double target) {
  if (!std::isfinite(value)) return false;
  if (target == 0.0) return std::abs(value) <= kAbsoluteTolerance;
  return std::abs(value - target) <= kRelativeTolerance * std::abs(target);
}

namespace {

struct Task {
  const BenchEntry* entry;
  std::size_t start;
};

std::vector<Task> collect(const Registry& registry) {
  std::vector<Task> tasks;
  for (const BenchEntry* e : registry.entries()) {
    for (std::size_t s = 0; s < e->problem->start_count(); ++s) tasks.push_back({e, s});
  }
  return tasks;
}

}  // namespace

SuiteRow run_row(const BenchEntry& entry, std::size_t start, const SuiteOptions& opts) {
  const model::MpecProblem& p = *entry.problem;
  SuiteRow row;
  row.problem = p.name;
  row.start = start;
  row.theta = opts.family.name();
  row.form = relax::to_string(opts.form);

  const TableData* table = opts.table == 0 ? nullptr : &entry.table(opts.table);
  const TableRow* trow = nullptr;
  const TableData& labels = table != nullptr ? *table : entry.table1;
  for (const TableRow& t : labels.rows) {
    if (t.start == start) trow = &t;
  }
  row.start_label = trow != nullptr ? trow->start_label : (p.starts.empty() ? "no" : "#" + std::to_string(start));
  row.reported_x = trow != nullptr ? trow->reported_x : "";
  if (trow != nullptr) {
    row.target = trow->objective;
  } else if (p.known_optimal_value) {
    row.target = *p.known_optimal_value;
  }
  row.r = (table != nullptr && table->r > 0.0) ? table->r : opts.fixed_r;

  try {
    continuation::Schedule sched;
    sched.r_min = row.r;
    sched.r0 = opts.mode == SuiteMode::SingleR ? row.r : std::max(opts.r0, row.r);
    sched.factor = opts.factor;
    const continuation::ContinuationTrace trace =
        continuation::run(entry.problem, opts.family, opts.form, sched, p.start(start), opts.nlp);
    const continuation::StepRecord& last = trace.last();
    row.status = last.result.status;
    row.objective = last.value;
    row.kkt = last.result.kkt_residual;
    row.feasibility = last.feasibility;
    row.complementarity = last.complementarity;
    row.counters = trace.total;
    row.x = last.result.point.head(p.n);
    row.message = last.result.message;
    const bool solved = row.status != nlp::Status::EvaluationError &&
                        row.status != nlp::Status::Infeasible &&
                        row.feasibility <= kFeasibilityTolerance;
    row.passed = solved && row.target.has_value() && matches_target(row.objective, *row.target);
  } catch (const std::exception& ex) {
    row.status = nlp::Status::EvaluationError;
    row.objective = std::numeric_limits<double>::quiet_NaN();
    row.message = ex.what();
    row.passed = false;
  }
  return row;
}

std::vector<SuiteRow> run_suite(const Registry& registry, const SuiteOptions& opts) {
  if (!opts.parallel) return run_suite_serial(registry, opts);
  const std::vector<Task> tasks = collect(registry);
  std::vector<SuiteRow> rows(tasks.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] = run_row(*tasks[i].entry, tasks[i].start, opts);
  }
  return rows;
}

std::vector<SuiteRow> run_suite_serial(const Registry& registry, const SuiteOptions& opts) {
  std::vector<SuiteRow> rows;
  for (const Task& t : collect(registry)) rows.push_back(run_row(*t.entry, t.start, opts));
  return rows;
}

bool all_passed(const std::vector<SuiteRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.passed; });
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string header_lines(const std::vector<std::string>& header) {
  std::string out;
  for (const std::string& h : header) out += "# " + h + "\n";
  return out;
}

std::string vector_text(const Vec& x) {
  if (x.size() == 1) return format_number(x[0]);
  std::string out = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) out += ",";
    out += format_number(x[i]);
  }
  return out + ")";
}

std::vector<std::vector<std::string>> table_cells(const std::vector<SuiteRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Problem", "r", "Start", "Obj.val.", "Target", "Opt.x", "Status", "Pass",
                   "(itM,itm)", "Obj.", "grad", "constr.", "Jac"});
  for (const SuiteRow& r : rows) {
    const nlp::Counters& c = r.counters;
    cells.push_back({r.problem, format_number(r.r), r.start_label, format_number(r.objective),
                     r.target ? format_number(*r.target) : "-", vector_text(r.x),
                     nlp::to_string(r.status), r.passed ? "yes" : "no",
                     "(" + std::to_string(c.major) + "," + std::to_string(c.minor) + ")",
                     std::to_string(c.objective), std::to_string(c.gradient),
                     std::to_string(c.constraints), std::to_string(c.jacobian)});
  }
  return cells;
}

}  // namespace

std::string to_csv(const std::vector<SuiteRow>& rows, const std::vector<std::string>& header) {
  std::ostringstream os;
  os << header_lines(header);
  os << "problem,start,theta,form,r,status,obj,kkt,feas,comp,itM,itm,nObj,nGrad,nConstr,nJac\n";
  for (const SuiteRow& r : rows) {
    const nlp::Counters& c = r.counters;
    os << r.problem << ',' << r.start << ',' << r.theta << ',' << r.form << ','
       << format_number(r.r) << ',' << nlp::to_string(r.status) << ','
       << format_number(r.objective) << ',' << format_number(r.kkt) << ','
       << format_number(r.feasibility) << ',' << format_number(r.complementarity) << ','
       << c.major << ',' << c.minor << ',' << c.objective << ',' << c.gradient << ','
       << c.constraints << ',' << c.jacobian << '\n';
  }
  return os.str();
}

std::string to_markdown(const std::vector<SuiteRow>& rows, const std::vector<std::string>& header) {
  const auto cells = table_cells(rows);
  std::ostringstream os;
  os << header_lines(header);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << '|';
    for (const std::string& c : cells[i]) os << ' ' << c << " |";
    os << '\n';
    if (i == 0) {
      os << '|';
      for (std::size_t j = 0; j < cells[i].size(); ++j) os << "---|";
      os << '\n';
    }
  }
  return os.str();
}

std::string to_text(const std::vector<SuiteRow>& rows, const std::vector<std::string>& header) {
  const auto cells = table_cells(rows);
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t j = 0; j < line.size(); ++j) width[j] = std::max(width[j], line[j].size());
  }
  std::ostringstream os;
  os << header_lines(header);
  for (const auto& line : cells) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      os << std::left << std::setw(static_cast<int>(width[j])) << line[j];
      if (j + 1 < line.size()) os << "  ";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mpec::bench
