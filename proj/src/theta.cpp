#include "mpec/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "mpec/parallel.hpp"

namespace mpec::theta {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
// Values this close to the supremum 1 are treated as numerically saturated.
constexpr double kSaturation = 1e-9;

void require_nonnegative(double x) {
  if (!(x >= 0.0)) {
    std::ostringstream msg;
    msg << "theta: argument must be nonnegative, got " << x;
    throw DomainError(msg.str());
  }
}

std::string format_shape(double k) {
  std::ostringstream out;
  out << k;
  return out.str();
}

}  // namespace

ThetaFamily::ThetaFamily(Kind kind, double k, double r) : kind_(kind), k_(k), r_(r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("theta: smoothing parameter r must be positive and finite");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("theta: Weibull shape k must be positive and finite");
  }
}

ThetaFamily ThetaFamily::one(double r) { return ThetaFamily(Kind::ThetaOne, 1.0, r); }
ThetaFamily ThetaFamily::weibull(double k, double r) { return ThetaFamily(Kind::Weibull, k, r); }
ThetaFamily ThetaFamily::log(double r) { return ThetaFamily(Kind::ThetaLog, 1.0, r); }

ThetaFamily ThetaFamily::parse(const std::string& spec, double r) {
  if (spec == "one") return one(r);
  if (spec == "log") return log(r);
  if (spec == "weibull") return weibull(1.0, r);
  const std::string prefix = "weibull:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string shape = spec.substr(prefix.size());
    std::size_t used = 0;
    double k = 0.0;
    try {
      k = std::stod(shape, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != shape.size()) {
      throw std::invalid_argument("theta: cannot parse Weibull shape in '" + spec + "'");
    }
    return weibull(k, r);
  }
  throw std::invalid_argument("theta: unknown family '" + spec + "' (expected one, log, weibull:k)");
}

ThetaFamily ThetaFamily::with_r(double r) const { return ThetaFamily(kind_, k_, r); }

std::string ThetaFamily::name() const {
  switch (kind_) {
    case Kind::ThetaOne:
      return "one";
    case Kind::ThetaLog:
      return "log";
    case Kind::Weibull:
      return "weibull:" + format_shape(k_);
  }
  return "?";
}

double eval_extended(const ThetaFamily& family, double x) {
  const double r = family.r();
  switch (family.kind()) {
    case Kind::ThetaOne:
      return x > -r ? x / (x + r) : kNaN;
    case Kind::Weibull: {
      if (x == 0.0) return 0.0;
      if (family.shape() == 1.0) return -std::expm1(-x / r);
      return x > 0.0 ? -std::expm1(-std::pow(x / r, family.shape())) : kNaN;
    }
    case Kind::ThetaLog:
      if (x == 0.0) return 0.0;
      return (x > -r && x > -1.0) ? std::log1p(x) / std::log1p(x + r) : kNaN;
  }
  return kNaN;
}

double deriv_extended(const ThetaFamily& family, double x) {
  const double r = family.r();
  switch (family.kind()) {
    case Kind::ThetaOne:
      return x > -r ? r / ((x + r) * (x + r)) : kNaN;
    case Kind::Weibull: {
      const double k = family.shape();
      if (k == 1.0) return std::exp(-x / r) / r;
      if (x > 0.0) {
        const double t = x / r;
        return (k / r) * std::pow(t, k - 1.0) * std::exp(-std::pow(t, k));
      }
      if (x == 0.0) return k > 1.0 ? 0.0 : kInf;
      return kNaN;
    }
    case Kind::ThetaLog: {
      if (!(x > -r && x > -1.0)) return kNaN;
      const double num = std::log1p(x);
      const double den = std::log1p(x + r);
      return (den / (1.0 + x) - num / (1.0 + x + r)) / (den * den);
    }
  }
  return kNaN;
}

double eval(const ThetaFamily& family, double x) {
  require_nonnegative(x);
  return eval_extended(family, x);
}

double deriv(const ThetaFamily& family, double x) {
  require_nonnegative(x);
  if (family.kind() == Kind::Weibull && family.shape() < 1.0 && x == 0.0) {
    throw SingularDerivative("theta: Weibull derivative is unbounded at 0 for k < 1");
  }
  return deriv_extended(family, x);
}

// ---------------------------------------------------------------------------
// Sampling and condition checks

void SamplingGrid::check() const {
  if (points < 100) throw std::invalid_argument("theta: sampling grid needs at least 100 points");
  if (x_max < 0.0) throw std::invalid_argument("theta: x_max must be nonnegative");
  if (r_sweep.size() < 3) throw std::invalid_argument("theta: r sweep needs at least 3 values");
  for (std::size_t i = 0; i < r_sweep.size(); ++i) {
    if (!(r_sweep[i] > 0.0)) throw std::invalid_argument("theta: swept r values must be positive");
    if (i > 0 && !(r_sweep[i] < r_sweep[i - 1])) {
      throw std::invalid_argument("theta: r sweep must be strictly decreasing");
    }
  }
}

std::vector<double> SamplingGrid::sample(double r) const {
  const double hi = x_max > 0.0 ? x_max : 10.0 * std::max(1.0, r);
  const double lo = hi * 1e-8;
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(points) + 3);
  pts.push_back(0.0);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) pts.push_back(lo * std::exp(step * i));
  pts.back() = hi;
  if (r <= hi) pts.push_back(r);
  if (2.0 * r <= hi) pts.push_back(2.0 * r);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

SmoothingFunction as_function(const ThetaFamily& family) {
  return SmoothingFunction{
      family.name(),
      [family](double x, double r) { return eval(family.with_r(r), x); },
      [family](double x, double r) { return deriv(family.with_r(r), x); },
  };
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

void fail(CheckResult& check, Witness w, std::string detail) {
  if (!check.passed) return;  // keep the first witness
  check.passed = false;
  check.witness = w;
  check.detail = std::move(detail);
}

std::vector<double> swept_values(double r, const SamplingGrid& grid) {
  std::vector<double> rs{r};
  for (double s : grid.r_sweep) {
    if (std::find(rs.begin(), rs.end(), s) == rs.end()) rs.push_back(s);
  }
  return rs;
}

}  // namespace

ValidationReport validate_conditions(const SmoothingFunction& fn, double r,
                                     const SamplingGrid& grid) {
  if (!(r > 0.0)) throw std::invalid_argument("theta: r must be positive");
  grid.check();

  CheckResult monotone;
  monotone.name = "monotone";
  CheckResult concave;
  concave.name = "strictly_concave";
  CheckResult zero;
  zero.name = "zero_at_origin";
  CheckResult range;
  range.name = "range";
  CheckResult limit;
  limit.name = "limit_to_one";
  CheckResult slope;
  slope.name = "positive_slope_at_origin";
  int skipped_saturated = 0;

  for (double rr : swept_values(r, grid)) {
    const std::vector<double> xs = grid.sample(rr);
    std::vector<double> vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = fn.value(xs[i], rr);

    if (fn.value(0.0, rr) != 0.0) fail(zero, {0.0, rr}, "value at 0 is not exactly 0");

    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(vs[i] >= 0.0 && vs[i] <= 1.0)) fail(range, {xs[i], rr}, "value outside [0, 1]");
    }

    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double a = xs[i];
      const double b = xs[i + 1];
      if (vs[i] > vs[i + 1]) fail(monotone, {a, rr, b}, "value decreases between samples");

      const double gap = fn.value(0.5 * (a + b), rr) - 0.5 * (vs[i] + vs[i + 1]);
      const bool saturated = vs[i] >= 1.0 - kSaturation && vs[i + 1] >= 1.0 - kSaturation;
      const double scale = std::max(std::abs(vs[i]), std::abs(vs[i + 1]));
      if (saturated) {
        ++skipped_saturated;
        if (gap < -kConcavityMargin) fail(concave, {a, rr, b}, "midpoint below chord");
      } else if (!(gap > kConcavityMargin * scale)) {
        fail(concave, {a, rr, b}, "midpoint not strictly above chord");
      }
    }

    double d0 = 0.0;
    try {
      d0 = fn.derivative(0.0, rr);
    } catch (const SingularDerivative&) {
      d0 = kInf;
    }
    if (!(d0 > 0.0)) fail(slope, {0.0, rr}, "derivative at 0 is not positive");
  }

  const double r_small = grid.r_sweep.back();
  for (double x : grid.sample(r_small)) {
    if (x < 1.0) continue;
    if (1.0 - fn.value(x, r_small) > kLimitThreshold) {
      fail(limit, {x, r_small}, "1 - theta(x) above threshold at the smallest r");
    }
  }

  if (skipped_saturated > 0) {
    concave.detail += (concave.detail.empty() ? "" : "; ") + std::to_string(skipped_saturated) +
                      " saturated pairs checked non-strictly";
  }

  ValidationReport report;
  report.function_name = fn.name;
  report.checks = {monotone, concave, zero, range, limit, slope};
  return report;
}

ValidationReport validate_conditions(const ThetaFamily& family, const SamplingGrid& grid) {
  return validate_conditions(as_function(family), family.r(), grid);
}

MembershipResult is_in_theta_geq1(const ThetaFamily& family, const SamplingGrid& grid) {
  grid.check();
  MembershipResult result;
  for (double rr : swept_values(family.r(), grid)) {
    const ThetaFamily f = family.with_r(rr);
    for (double x : grid.sample(rr)) {
      const double v = eval(f, x);
      const double base = x / (x + rr);
      if (v != base) result.equal_everywhere = false;
      if (!(v >= base)) {
        result.member = false;
        if (!result.violation) result.violation = Witness{x, rr};
      }
    }
  }
  return result;
}

bool lemma2_gate(double x, double y, double r) {
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("lemma2_gate: arguments must be nonnegative");
  if (!(r > 0.0)) throw std::invalid_argument("lemma2_gate: r must be positive");
  const double sum = x / (x + r) + y / (y + r);
  constexpr double kBand = 4.0 * std::numeric_limits<double>::epsilon();
  if (std::abs(sum - 1.0) <= kBand) return x * y <= r * r;
  return sum <= 1.0;
}

// ---------------------------------------------------------------------------
// Batched kernels

std::vector<double> eval_batch_serial(const ThetaFamily& family, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval(family, xs[i]);
  return out;
}

std::vector<double> eval_batch(const ThetaFamily& family, std::span<const double> xs) {
  for (double x : xs) require_nonnegative(x);
  std::vector<double> out(xs.size());
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for num_threads(max_threads()) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = eval_extended(family, xs[i]);
  return out;
}

namespace {
void check_batch_sizes(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || a != c) throw DimensionError("lemma2_gate_batch: input spans differ in length");
}
}  // namespace

std::vector<std::uint8_t> lemma2_gate_batch_serial(std::span<const double> x,
                                                   std::span<const double> y,
                                                   std::span<const double> r) {
  check_batch_sizes(x.size(), y.size(), r.size());
  std::vector<std::uint8_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = lemma2_gate(x[i], y[i], r[i]) ? 1 : 0;
  return out;
}

std::vector<std::uint8_t> lemma2_gate_batch(std::span<const double> x, std::span<const double> y,
                                            std::span<const double> r) {
  check_batch_sizes(x.size(), y.size(), r.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !(y[i] >= 0.0) || !(r[i] > 0.0)) {
      throw DomainError("lemma2_gate_batch: invalid sample at index " + std::to_string(i));
    }
  }
  std::vector<std::uint8_t> out(x.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for num_threads(max_threads()) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = lemma2_gate(x[i], y[i], r[i]) ? 1 : 0;
  return out;
}

}  // namespace mpec::theta
