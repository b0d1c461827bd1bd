#pragma once

#include <functional>
#include <string>

#include "mpec/common.hpp"

namespace mpec::nlp::detail {

/// Smooth function on a box. `value` returns +inf when the point cannot be
/// evaluated; `gradient` is only called at points whose value was the most
/// recent one computed.
struct BoxFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

struct InnerOptions {
  double tolerance = 1e-8;
  int max_iterations = 500;
  int memory = 20;
};

struct InnerResult {
  int iterations = 0;
  bool converged = false;
  double projected_gradient = 0.0;
  std::string stop_reason;
};

/// v − P(v − g), the projected gradient step.
Vec projected_gradient(const Vec& v, const Vec& g, const Vec& lower, const Vec& upper);

/// Projected limited-memory BFGS. Variables that sit on a bound with the
/// gradient pushing outward are fixed for the quasi-Newton step; the rest use
/// the two-loop recursion restricted to the free subspace. Steps follow the
/// projected path P(v + αd) with Armijo backtracking.
///
/// On entry `f` and `g` hold the value and gradient at `v`; on exit they are
/// updated to the final iterate.
InnerResult minimize_box(const BoxFunction& fn, const Vec& lower, const Vec& upper, Vec& v,
                         double& f, Vec& g, const InnerOptions& opts);

}  // namespace mpec::nlp::detail
