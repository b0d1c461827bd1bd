#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mpec/continuation.hpp"
#include "mpec/model.hpp"
#include "mpec/nlp.hpp"
#include "mpec/relax.hpp"
#include "mpec/theta.hpp"

namespace mpec::bench {

enum class Source { Toy, MacMPEC };

std::string to_string(Source source);

/// One row of the published tables for a given start.
struct TableRow {
  std::size_t start = 0;      // index into problem.starts (0 for the default start)
  std::string start_label;    // as printed: "no", "(25,25)", …
  double objective = 0.0;     // value the suite is checked against
  std::string reported_x;     // Opt.x column as printed
};

/// Per-table data: the r used for the problem and its rows.
struct TableData {
  double r = 0.0;
  std::vector<TableRow> rows;
};

/// Dense-grid oracle for scalar toys (n = m = l = 1, g(x, y) = y): x and y
/// range over [lo, hi] with the given step, complementarity is enforced by
/// splitting into the cases y = 0 and λ = 0.
struct GridOracle {
  double lo = -3.0;
  double hi = 3.0;
  double step = 1e-3;
};

struct OracleResult {
  double value = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct BenchEntry {
  std::shared_ptr<const model::MpecProblem> problem;
  Source source = Source::MacMPEC;
  TableData table1;  // θ¹ scaled form
  TableData table2;  // Weibull-1 scaled form
  std::optional<GridOracle> oracle;

  const std::string& name() const { return problem->name; }
  const TableData& table(int which) const;
};

/// Brute-force minimum over the oracle grid. Throws std::invalid_argument
/// when the entry has no oracle or is not a scalar toy.
OracleResult run_oracle(const BenchEntry& entry);

class UnknownProblem : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Name-keyed problem registry; iteration is in name order.
class Registry {
 public:
  void add(BenchEntry entry);
  /// Throws UnknownProblem.
  const BenchEntry& lookup(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;
  std::vector<const BenchEntry*> entries() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// Registry restricted to the given names (order irrelevant).
  Registry subset(const std::vector<std::string>& names) const;

 private:
  std::map<std::string, BenchEntry> entries_;
};

/// Toys (toy1, toy2, toy3) and the MacMPEC subset of the tables.
Registry register_builtin();

enum class SuiteMode {
  Continuation,  // schedule from r0 down to the row's r, report the last step
  SingleR,       // one solve at the row's r
};

struct SuiteOptions {
  theta::ThetaFamily family = theta::ThetaFamily::one(1e-2);
  relax::RelaxationForm form = relax::kDefaultForm;
  SuiteMode mode = SuiteMode::Continuation;
  /// Where the row's r comes from: 1 or 2 for the tables, 0 for `fixed_r`.
  int table = 1;
  double fixed_r = 1e-2;
  double r0 = 1e-1;
  double factor = 0.1;
  nlp::NlpOptions nlp;
  bool parallel = true;
};

inline constexpr double kRelativeTolerance = 1e-3;
inline constexpr double kAbsoluteTolerance = 1e-4;
/// A row also fails if the relaxed point violates the constraints by more.
inline constexpr double kFeasibilityTolerance = 1e-6;

/// Target check: relative 1e−3, or absolute 1e−4 for a zero target.
bool matches_target(double value, double target);

struct SuiteRow {
  std::string problem;
  std::size_t start = 0;
  std::string start_label;
  std::string theta;
  std::string form;
  double r = 0.0;
  nlp::Status status = nlp::Status::MaxIterations;
  double objective = 0.0;
  double kkt = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
  nlp::Counters counters;  // summed over the continuation steps
  std::optional<double> target;
  std::string reported_x;
  Vec x;  // upper-level part of the solution
  bool passed = false;
  std::string message;
};

/// One row per (problem, start), sorted by problem name then start index.
/// Per-row failures are recorded in the row; the suite never aborts.
std::vector<SuiteRow> run_suite(const Registry& registry, const SuiteOptions& opts);
/// Reference implementation without OpenMP.
std::vector<SuiteRow> run_suite_serial(const Registry& registry, const SuiteOptions& opts);

/// Solves one row.
SuiteRow run_row(const BenchEntry& entry, std::size_t start, const SuiteOptions& opts);

bool all_passed(const std::vector<SuiteRow>& rows);

/// Columns problem,start,theta,form,r,status,obj,kkt,feas,comp,itM,itm,
/// nObj,nGrad,nConstr,nJac. `header` lines are emitted first as "# …".
std::string to_csv(const std::vector<SuiteRow>& rows, const std::vector<std::string>& header = {});
std::string to_markdown(const std::vector<SuiteRow>& rows,
                        const std::vector<std::string>& header = {});
std::string to_text(const std::vector<SuiteRow>& rows, const std::vector<std::string>& header = {});

}  // namespace mpec::bench
