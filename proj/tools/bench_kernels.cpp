// Times the OpenMP kernels against their serial references and checks that
// both produce identical output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "mpec/bench.hpp"
#include "mpec/parallel.hpp"
#include "mpec/theta.hpp"

namespace {

template <class F>
double seconds(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  using namespace mpec;
  const std::size_t n = 2'000'000;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(n), y(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 100.0 * unit(rng);
    y[i] = 100.0 * unit(rng);
    r[i] = std::pow(10.0, -4.0 + 4.0 * unit(rng));
  }
  std::printf("threads %d\n", max_threads());

  const theta::ThetaFamily fam = theta::ThetaFamily::log(1e-2);
  std::vector<double> a, b;
  const double ts = seconds([&] { a = theta::eval_batch_serial(fam, x); });
  const double tp = seconds([&] { b = theta::eval_batch(fam, x); });
  std::printf("eval_batch        serial %.4fs  parallel %.4fs  identical %s\n", ts, tp,
              a == b ? "yes" : "no");

  std::vector<std::uint8_t> ga, gb;
  const double gs = seconds([&] { ga = theta::lemma2_gate_batch_serial(x, y, r); });
  const double gp = seconds([&] { gb = theta::lemma2_gate_batch(x, y, r); });
  std::printf("lemma2_gate_batch serial %.4fs  parallel %.4fs  identical %s\n", gs, gp,
              ga == gb ? "yes" : "no");

  const bench::Registry reg = bench::register_builtin();
  bench::SuiteOptions opts;
  std::vector<bench::SuiteRow> sa, sb;
  const double ss = seconds([&] { sa = bench::run_suite_serial(reg, opts); });
  const double sp = seconds([&] { sb = bench::run_suite(reg, opts); });
  std::printf("run_suite         serial %.4fs  parallel %.4fs  identical %s\n", ss, sp,
              bench::to_csv(sa) == bench::to_csv(sb) ? "yes" : "no");
  return 0;
}
