#include "projected_lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace mpec::nlp::detail {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxBacktracks = 60;

struct Pair {
  Vec s;
  Vec y;
};

Vec project(const Vec& v, const Vec& lower, const Vec& upper) {
  return v.cwiseMax(lower).cwiseMin(upper);
}

// Two-loop recursion on the free subspace. Returns H·q for the masked q.
Vec two_loop(const std::deque<Pair>& memory, const Vec& q_in, const Eigen::ArrayXd& free,
             double fallback_scale) {
  Vec q = q_in;
  const std::size_t k = memory.size();
  std::vector<double> alpha(k, 0.0);
  std::vector<double> rho(k, 0.0);
  std::vector<bool> use(k, false);
  double gamma = fallback_scale;
  bool have_gamma = false;

  for (std::size_t j = k; j-- > 0;) {
    const Vec s = (memory[j].s.array() * free).matrix();
    const Vec y = (memory[j].y.array() * free).matrix();
    const double sy = s.dot(y);
    if (!(sy > 1e-12 * s.norm() * y.norm()) || sy <= 0.0) continue;
    use[j] = true;
    rho[j] = 1.0 / sy;
    alpha[j] = rho[j] * s.dot(q);
    q -= alpha[j] * y;
    if (!have_gamma) {
      gamma = sy / y.squaredNorm();
      have_gamma = true;
    }
  }
  q *= gamma;
  for (std::size_t j = 0; j < k; ++j) {
    if (!use[j]) continue;
    const Vec s = (memory[j].s.array() * free).matrix();
    const Vec y = (memory[j].y.array() * free).matrix();
    const double beta = rho[j] * y.dot(q);
    q += (alpha[j] - beta) * s;
  }
  return q;
}

}  // namespace

Vec projected_gradient(const Vec& v, const Vec& g, const Vec& lower, const Vec& upper) {
  return v - project(v - g, lower, upper);
}

InnerResult minimize_box(const BoxFunction& fn, const Vec& lower, const Vec& upper, Vec& v,
                         double& f, Vec& g, const InnerOptions& opts) {
  InnerResult result;
  std::deque<Pair> memory;
  const Eigen::Index n = v.size();
  double last_scale = 0.0;

  for (int it = 0;; ++it) {
    const Vec pg = projected_gradient(v, g, lower, upper);
    const double pg_norm = n > 0 ? pg.lpNorm<Eigen::Infinity>() : 0.0;
    result.projected_gradient = pg_norm;
    if (pg_norm <= opts.tolerance) {
      result.converged = true;
      result.stop_reason = "converged";
      return result;
    }
    if (it >= opts.max_iterations) {
      result.stop_reason = "iteration limit";
      return result;
    }

    // Variables pinned at a bound by an outward gradient.
    const double eps_active = std::min(pg_norm, 1e-8 * (1.0 + v.lpNorm<Eigen::Infinity>()));
    Eigen::ArrayXd free = Eigen::ArrayXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool at_lower = v[i] <= lower[i] + eps_active && g[i] > 0.0;
      const bool at_upper = v[i] >= upper[i] - eps_active && g[i] < 0.0;
      if (at_lower || at_upper) free[i] = 0.0;
    }

    const double g_inf = g.lpNorm<Eigen::Infinity>();
    const double initial_scale =
        last_scale > 0.0 ? last_scale : std::min(1.0, 1.0 / std::max(g_inf, kEps));

    bool use_gradient = memory.empty();
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      Vec d;
      if (!use_gradient) {
        const Vec gf = (g.array() * free).matrix();
        d = -two_loop(memory, gf, free, initial_scale);
        for (Eigen::Index i = 0; i < n; ++i) {
          if (free[i] == 0.0) d[i] = -initial_scale * g[i];
        }
        const double slope = g.dot(d);
        if (!(slope < -1e-14 * gf.norm() * d.norm()) || !d.allFinite()) use_gradient = true;
      }
      if (use_gradient) {
        memory.clear();
        d = -initial_scale * g;
      }

      double alpha = 1.0;
      for (int bt = 0; bt < kMaxBacktracks; ++bt) {
        const Vec trial = project(v + alpha * d, lower, upper);
        const Vec step = trial - v;
        if (step.lpNorm<Eigen::Infinity>() <= kEps * (1.0 + v.lpNorm<Eigen::Infinity>())) break;
        const double slope = g.dot(step);
        const double f_trial = fn.value(trial);
        const double noise = 8.0 * kEps * std::max(1.0, std::abs(f));
        if (std::isfinite(f_trial) && f_trial <= f + kArmijo * slope + noise && slope < 0.0) {
          const Vec g_new = fn.gradient(trial);
          const Vec y = g_new - g;
          const double sy = step.dot(y);
          if (sy > 1e-10 * step.norm() * y.norm() && sy > 0.0) {
            memory.push_back({step, y});
            if (static_cast<int>(memory.size()) > opts.memory) memory.pop_front();
            last_scale = sy / y.squaredNorm();
          }
          v = trial;
          f = f_trial;
          g = g_new;
          accepted = true;
          break;
        }
        // Safeguarded quadratic interpolation on the projected path.
        double next = 0.5 * alpha;
        if (std::isfinite(f_trial) && slope < 0.0) {
          const double curv = f_trial - f - slope;
          if (curv > 0.0) next = std::clamp(-0.5 * slope * alpha / curv, 0.1 * alpha, 0.5 * alpha);
        }
        alpha = next;
      }
      if (!accepted) {
        if (use_gradient) break;
        use_gradient = true;
      }
    }

    ++result.iterations;
    if (!accepted) {
      result.stop_reason = "line search failed";
      return result;
    }
  }
}

}  // namespace mpec::nlp::detail
