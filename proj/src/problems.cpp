// Built-in problems: scalar toys with a grid oracle and a subset of MacMPEC.
//
// MacMPEC models are restated here as (P): lower-level problems
// min_y q(x, y) s.t. G(x, y) ≥ 0 enter through their KKT conditions with
// F = ∇_y q and g = G (bounds on y become rows of g). Upper-level constraints
// that involve y go into h.

#include "problems.hpp"

#include <cmath>
#include <limits>

namespace mpec::bench::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Mat mat(int rows, int cols, std::initializer_list<double> values) {
  Mat out(rows, cols);
  auto it = values.begin();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = *it++;
  }
  return out;
}

model::MpecPoint point(Vec x, Vec y, Vec z, Vec lambda) {
  return model::MpecPoint{std::move(x), std::move(y), std::move(z), std::move(lambda)};
}

TableRow row(std::size_t start, std::string label, double objective, std::string x) {
  return TableRow{start, std::move(label), objective, std::move(x)};
}

BenchEntry finish(model::MpecProblem p, Source source) {
  p.validate();
  BenchEntry e;
  e.problem = std::make_shared<const model::MpecProblem>(std::move(p));
  e.source = source;
  return e;
}

// y − x = λ ⟂ y ≥ 0 with a quadratic objective; shared by the toys.
model::MpecProblem scalar_toy(std::string name) {
  model::MpecProblem p;
  p.name = std::move(name);
  p.n = p.m = p.l = 1;
  p.F = [](const Vec& x, const Vec& y) { return vec({y[0] - x[0]}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(1, 2, {-1.0, 1.0}); };
  p.g = [](const Vec&, const Vec& y) { return vec({y[0]}); };
  p.jac_g = [](const Vec&, const Vec&) { return mat(1, 2, {0.0, 1.0}); };
  p.x_lower = vec({-kInf});
  p.x_upper = vec({kInf});
  return p;
}

BenchEntry toy1() {
  model::MpecProblem p = scalar_toy("toy1");
  p.f = [](const Vec& x, const Vec& y) {
    return (x[0] - 1) * (x[0] - 1) + (y[0] - 1) * (y[0] - 1);
  };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({2 * (x[0] - 1), 2 * (y[0] - 1)}); };
  p.known_optimal_value = 0.0;
  p.known_solution = point(vec({1}), vec({1}), vec({1}), vec({0}));
  BenchEntry e = finish(std::move(p), Source::Toy);
  e.oracle = GridOracle{};
  e.table1.r = e.table2.r = 1e-6;
  return e;
}

// Optimum at the origin with z = λ = 0.
BenchEntry toy2() {
  model::MpecProblem p = scalar_toy("toy2");
  p.f = [](const Vec& x, const Vec& y) {
    return (x[0] - 1) * (x[0] - 1) + (y[0] + 2) * (y[0] + 2);
  };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({2 * (x[0] - 1), 2 * (y[0] + 2)}); };
  p.known_optimal_value = 5.0;
  p.known_solution = point(vec({0}), vec({0}), vec({0}), vec({0}));
  BenchEntry e = finish(std::move(p), Source::Toy);
  e.oracle = GridOracle{};
  e.table1.r = e.table2.r = 1e-6;
  return e;
}

// Minimisers (1, 1) and (−1, 0); the relaxation can trade λ against z, so
// v_r sits about r² below the limit value.
BenchEntry toy3() {
  model::MpecProblem p = scalar_toy("toy3");
  p.f = [](const Vec& x, const Vec& y) {
    const double a = y[0] - 1;
    const double b = y[0] - x[0] - 1;
    return 0.5 * (a * a + b * b);
  };
  p.grad_f = [](const Vec& x, const Vec& y) {
    const double a = y[0] - 1;
    const double b = y[0] - x[0] - 1;
    return vec({-b, a + b});
  };
  p.known_optimal_value = 0.5;
  p.known_solution = point(vec({1}), vec({1}), vec({1}), vec({0}));
  BenchEntry e = finish(std::move(p), Source::Toy);
  e.oracle = GridOracle{};
  e.table1.r = e.table2.r = 1e-6;
  return e;
}

BenchEntry bard1() {
  model::MpecProblem p;
  p.name = "Bard1";
  p.n = 1;
  p.m = 1;
  p.l = 4;
  p.f = [](const Vec& x, const Vec& y) {
    return (x[0] - 5) * (x[0] - 5) + (2 * y[0] + 1) * (2 * y[0] + 1);
  };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({2 * (x[0] - 5), 4 * (2 * y[0] + 1)}); };
  p.F = [](const Vec& x, const Vec& y) { return vec({2 * (y[0] - 1) - 1.5 * x[0]}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(1, 2, {-1.5, 2.0}); };
  p.g = [](const Vec& x, const Vec& y) {
    return vec({3 * x[0] - y[0] - 3, -x[0] + 0.5 * y[0] + 4, -x[0] - y[0] + 7, y[0]});
  };
  p.jac_g = [](const Vec&, const Vec&) {
    return mat(4, 2, {3, -1, -1, 0.5, -1, -1, 0, 1});
  };
  p.x_lower = vec({0});
  p.x_upper = vec({kInf});
  p.known_optimal_value = 17.0;
  p.known_solution = point(vec({1}), vec({0}), vec({0, 3, 6, 0}), vec({3.5, 0, 0, 0}));
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-2, {row(0, "no", 17, "(1,0)")}};
  e.table2 = {1e-2, {row(0, "no", 17, "(1,0)")}};
  return e;
}

BenchEntry df1() {
  model::MpecProblem p;
  p.name = "Df1";
  p.n = 1;
  p.m = 1;
  p.l = 1;
  p.n_upper = 2;
  p.f = [](const Vec& x, const Vec& y) {
    const double d = x[0] - 1 - y[0];
    return d * d;
  };
  p.grad_f = [](const Vec& x, const Vec& y) {
    const double d = x[0] - 1 - y[0];
    return vec({2 * d, -2 * d});
  };
  p.F = [](const Vec&, const Vec& y) { return vec({y[0]}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(1, 2, {0, 1}); };
  p.g = [](const Vec& x, const Vec& y) { return vec({y[0] - x[0] * x[0] + 1}); };
  p.jac_g = [](const Vec& x, const Vec&) { return mat(1, 2, {-2 * x[0], 1}); };
  p.h = [](const Vec& x, const Vec& y) {
    return vec({2 - x[0] * x[0], 3 - (x[0] - 1) * (x[0] - 1) - (y[0] - 1) * (y[0] - 1)});
  };
  p.jac_h = [](const Vec& x, const Vec& y) {
    return mat(2, 2, {-2 * x[0], 0, -2 * (x[0] - 1), -2 * (y[0] - 1)});
  };
  p.x_lower = vec({-1});
  p.x_upper = vec({2});
  p.known_optimal_value = 0.0;
  p.known_solution = point(vec({1}), vec({0}), vec({0}), vec({0}));
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-3, {row(0, "no", 0, "(1,0)")}};
  e.table2 = {1e-3, {row(0, "no", 0, "(1,0)")}};
  return e;
}

BenchEntry gauvin() {
  model::MpecProblem p;
  p.name = "Gauvin";
  p.n = 1;
  p.m = 1;
  p.l = 3;
  p.f = [](const Vec& x, const Vec& y) { return x[0] * x[0] + (y[0] - 10) * (y[0] - 10); };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({2 * x[0], 2 * (y[0] - 10)}); };
  p.F = [](const Vec& x, const Vec& y) { return vec({4 * (x[0] + 2 * y[0] - 30)}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(1, 2, {4, 8}); };
  p.g = [](const Vec& x, const Vec& y) { return vec({20 - x[0] - y[0], y[0], 20 - y[0]}); };
  p.jac_g = [](const Vec&, const Vec&) { return mat(3, 2, {-1, -1, 0, 1, 0, -1}); };
  p.x_lower = vec({0});
  p.x_upper = vec({15});
  p.known_optimal_value = 20.0;
  p.known_solution = point(vec({2}), vec({14}), vec({4, 14, 6}), vec({0, 0, 0}));
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-2, {row(0, "no", 20, "(2,14)")}};
  e.table2 = {1e-2, {row(0, "no", 20, "(2,14)")}};
  return e;
}

BenchEntry jr1() {
  model::MpecProblem p;
  p.name = "jr1";
  p.n = 1;
  p.m = 1;
  p.l = 1;
  p.f = [](const Vec& x, const Vec& y) { return (x[0] - 1) * (x[0] - 1) + y[0] * y[0]; };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({2 * (x[0] - 1), 2 * y[0]}); };
  p.F = [](const Vec&, const Vec& y) { return vec({y[0]}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(1, 2, {0, 1}); };
  p.g = [](const Vec& x, const Vec& y) { return vec({y[0] - x[0]}); };
  p.jac_g = [](const Vec&, const Vec&) { return mat(1, 2, {-1, 1}); };
  p.x_lower = vec({-kInf});
  p.x_upper = vec({kInf});
  p.known_optimal_value = 0.5;
  p.known_solution = point(vec({0.5}), vec({0.5}), vec({0}), vec({0.5}));
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-2, {row(0, "no", 0.5, "(0.5,0.5)")}};
  e.table2 = {1e-2, {row(0, "no", 0.5, "(0.5,0.5)")}};
  return e;
}

BenchEntry scholtes1() {
  model::MpecProblem p;
  p.name = "Scholtes1";
  p.n = 1;
  p.m = 1;
  p.l = 1;
  p.f = [](const Vec& x, const Vec& y) { return (x[0] + 1) * (x[0] + 1) + (y[0] + 1) * (y[0] + 1); };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({2 * (x[0] + 1), 2 * (y[0] + 1)}); };
  p.F = [](const Vec&, const Vec& y) { return vec({y[0]}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(1, 2, {0, 1}); };
  p.g = [](const Vec& x, const Vec& y) { return vec({y[0] - x[0]}); };
  p.jac_g = [](const Vec&, const Vec&) { return mat(1, 2, {-1, 1}); };
  p.x_lower = vec({0});
  p.x_upper = vec({kInf});
  p.known_optimal_value = 2.0;
  p.known_solution = point(vec({0}), vec({0}), vec({0}), vec({0}));
  p.starts = {vec({1})};
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-1, {row(0, "1", 2, "0")}};
  e.table2 = {1e-1, {row(0, "1", 2, "0")}};
  return e;
}

BenchEntry bilevel1() {
  model::MpecProblem p;
  p.name = "Bilevel1";
  p.n = 2;
  p.m = 2;
  p.l = 6;
  p.n_upper = 1;
  p.f = [](const Vec& x, const Vec& y) { return 2 * x[0] + 2 * x[1] - 3 * y[0] - 3 * y[1] - 60; };
  p.grad_f = [](const Vec&, const Vec&) { return vec({2, 2, -3, -3}); };
  p.F = [](const Vec& x, const Vec& y) {
    return vec({2 * (y[0] - x[0] + 20), 2 * (y[1] - x[1] + 20)});
  };
  p.jac_F = [](const Vec&, const Vec&) { return mat(2, 4, {-2, 0, 2, 0, 0, -2, 0, 2}); };
  p.g = [](const Vec& x, const Vec& y) {
    return vec({x[0] - 2 * y[0] - 10, x[1] - 2 * y[1] - 10, y[0] + 10, 20 - y[0], y[1] + 10,
                20 - y[1]});
  };
  p.jac_g = [](const Vec&, const Vec&) {
    return mat(6, 4, {1, 0, -2, 0,  //
                      0, 1, 0, -2,  //
                      0, 0, 1, 0,   //
                      0, 0, -1, 0,  //
                      0, 0, 0, 1,   //
                      0, 0, 0, -1});
  };
  p.h = [](const Vec& x, const Vec& y) { return vec({40 - x[0] - x[1] - y[0] + 2 * y[1]}); };
  p.jac_h = [](const Vec&, const Vec&) { return mat(1, 4, {-1, -1, -1, 2}); };
  p.x_lower = vec({0, 0});
  p.x_upper = vec({50, 50});
  p.known_optimal_value = 5.0;
  p.known_solution =
      point(vec({25, 30}), vec({5, 10}), vec({5, 0, 15, 15, 20, 10}), vec({0, 0, 0, 0, 0, 0}));
  p.starts = {vec({25, 25}), vec({50, 50})};
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-2, {row(0, "(25,25)", 5, "(25,30)"), row(1, "(50,50)", 5, "(25,30)")}};
  e.table2 = {1e-2, {row(0, "(25,25)", 5, "(25,30)"), row(1, "(50,50)", 5, "(25,30)")}};
  return e;
}

BenchEntry bilevel2() {
  model::MpecProblem p;
  p.name = "Bilevel2";
  p.n = 4;
  p.m = 4;
  p.l = 8;
  p.n_upper = 1;
  p.f = [](const Vec&, const Vec& y) {
    const double a = y[0] + y[2];
    const double b = y[1] + y[3];
    return -((200 - a) * a + (160 - b) * b);
  };
  p.grad_f = [](const Vec&, const Vec& y) {
    const double da = -(200 - 2 * (y[0] + y[2]));
    const double db = -(160 - 2 * (y[1] + y[3]));
    return vec({0, 0, 0, 0, da, db, da, db});
  };
  p.F = [](const Vec&, const Vec& y) {
    return vec({2 * (y[0] - 4), 2 * (y[1] - 13), 2 * (y[2] - 35), 2 * (y[3] - 2)});
  };
  p.jac_F = [](const Vec&, const Vec&) {
    Mat j = Mat::Zero(4, 8);
    j.rightCols(4) = 2 * Mat::Identity(4, 4);
    return j;
  };
  p.g = [](const Vec& x, const Vec& y) {
    return vec({x[0] - 0.4 * y[0] - 0.7 * y[1], x[1] - 0.6 * y[0] - 0.3 * y[1],
                x[2] - 0.4 * y[2] - 0.7 * y[3], x[3] - 0.6 * y[2] - 0.3 * y[3], y[0], y[1], y[2],
                y[3]});
  };
  p.jac_g = [](const Vec&, const Vec&) {
    Mat j = Mat::Zero(8, 8);
    j.topLeftCorner(4, 4) = Mat::Identity(4, 4);
    j.block(0, 4, 4, 4) = mat(4, 4, {-0.4, -0.7, 0, 0,  //
                                     -0.6, -0.3, 0, 0,  //
                                     0, 0, -0.4, -0.7,  //
                                     0, 0, -0.6, -0.3});
    j.bottomRightCorner(4, 4) = Mat::Identity(4, 4);
    return j;
  };
  p.h = [](const Vec& x, const Vec&) { return vec({40 - x.sum()}); };
  p.jac_h = [](const Vec&, const Vec&) { return mat(1, 8, {-1, -1, -1, -1, 0, 0, 0, 0}); };
  p.x_lower = vec({0, 0, 0, 0});
  p.x_upper = vec({10, 5, 15, 20});
  p.known_optimal_value = -6600.0;
  p.known_solution = point(vec({7, 3, 12, 18}), vec({0, 10, 30, 0}), vec({0, 0, 0, 0, 0, 10, 30, 0}),
                           vec({4, 32.0 / 3.0, 0, 50.0 / 3.0, 0, 0, 0, 1}));
  p.starts = {vec({0, 0, 0, 0}), vec({0, 5, 0, 20}), vec({5, 0, 15, 10}), vec({5, 5, 15, 15}),
              vec({10, 5, 15, 10})};
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-4,
              {row(0, "(0,0,0,0)", -6600, "(6.441,4.863,12.559,16.137)"),
               row(1, "(0,5,0,20)", -6600, "(6.575,5,12.425,16)"),
               row(2, "(5,0,15,10)", -6600, "(6.837,12.162,16)"),
               row(3, "(5,5,15,15)", -6600, "(4.892,3.373,14.107,17.627)"),
               row(4, "(10,5,15,10)", -6600, "(8.014,4.971,10.986,16.029)")}};
  e.table2 = {1e-1,
              {row(0, "(0,0,0,0)", -6600, "(4.851,5,14.149,16)"),
               row(1, "(0,5,0,20)", -6600, "(5.195,5,13.805,16)"),
               row(2, "(5,0,15,10)", -6600, "(6.099,4.834,12.901,16.166)"),
               row(3, "(5,5,15,15)", -6600, "(4,1.714,15,19.286)"),
               row(4, "(10,5,15,10)", -6600, "(7.724,5,11.276,16)")}};
  return e;
}

BenchEntry bilevel3() {
  model::MpecProblem p;
  p.name = "Bilevel3";
  p.n = 2;
  p.m = 2;
  p.l = 4;
  p.n_upper = 1;
  p.f = [](const Vec& x, const Vec& y) {
    return -x[0] * x[0] - 3 * x[1] - 4 * y[0] + y[1] * y[1];
  };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({-2 * x[0], -3, -4, 2 * y[1]}); };
  p.F = [](const Vec&, const Vec& y) { return vec({2 * y[0], -5}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(2, 4, {0, 0, 2, 0, 0, 0, 0, 0}); };
  p.g = [](const Vec& x, const Vec& y) {
    return vec({x[0] * x[0] - 2 * x[0] + x[1] * x[1] - 2 * y[0] + y[1] + 3,
                x[1] + 3 * y[0] - 4 * y[1] - 4, y[0], y[1]});
  };
  p.jac_g = [](const Vec& x, const Vec&) {
    return mat(4, 4, {2 * x[0] - 2, 2 * x[1], -2, 1,  //
                      0, 1, 3, -4,                    //
                      0, 0, 1, 0,                     //
                      0, 0, 0, 1});
  };
  p.h = [](const Vec& x, const Vec&) { return vec({4 - x[0] * x[0] - 2 * x[1]}); };
  p.jac_h = [](const Vec& x, const Vec&) { return mat(1, 4, {-2 * x[0], -2, 0, 0}); };
  p.x_lower = vec({0, 0});
  p.x_upper = vec({kInf, kInf});
  p.known_optimal_value = -12.6787109375;
  p.known_solution = point(vec({0, 2}), vec({1.875, 0.90625}), vec({4.15625, 0, 1.875, 0.90625}),
                           vec({0, 1.25, 0, 0}));
  p.starts = {vec({0, 0}), vec({0, 2}), vec({2, 0})};
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  const std::vector<TableRow> rows{row(0, "(0,0)", -12.6787, "(0,2)"),
                                   row(1, "(0,2)", -12.6787, "(0,2)"),
                                   row(2, "(2,0)", -10.36, "(2,0)")};
  e.table1 = {1e-4, rows};
  e.table2 = {1e-1, rows};
  return e;
}

BenchEntry desilva() {
  model::MpecProblem p;
  p.name = "desilva";
  p.n = 2;
  p.m = 2;
  p.l = 4;
  p.f = [](const Vec& x, const Vec& y) {
    return x[0] * x[0] - 2 * x[0] + x[1] * x[1] - 2 * x[1] + y[0] * y[0] + y[1] * y[1];
  };
  p.grad_f = [](const Vec& x, const Vec& y) {
    return vec({2 * x[0] - 2, 2 * x[1] - 2, 2 * y[0], 2 * y[1]});
  };
  p.F = [](const Vec& x, const Vec& y) { return vec({2 * (y[0] - x[0]), 2 * (y[1] - x[1])}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(2, 4, {-2, 0, 2, 0, 0, -2, 0, 2}); };
  p.g = [](const Vec&, const Vec& y) { return vec({y[0], 1 - y[0], y[1], 1 - y[1]}); };
  p.jac_g = [](const Vec&, const Vec&) {
    return mat(4, 4, {0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, -1});
  };
  p.x_lower = vec({0, 0});
  p.x_upper = vec({2, 2});
  p.known_optimal_value = -1.0;
  p.known_solution =
      point(vec({0.5, 0.5}), vec({0.5, 0.5}), vec({0.5, 0.5, 0.5, 0.5}), vec({0, 0, 0, 0}));
  p.starts = {vec({0, 0}), vec({2, 2})};
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-3, {row(0, "(0,0)", -1, "(0.5,0.5)"), row(1, "(2,2)", -1, "(0.5,0.5)")}};
  e.table2 = {1e-2, {row(0, "(0,0)", -1, "(0.5,0.5)"), row(1, "(2,2)", -1, "(0.5,0.5)")}};
  return e;
}

BenchEntry stackelberg1() {
  model::MpecProblem p;
  p.name = "Stackelberg1";
  p.n = 1;
  p.m = 1;
  p.l = 1;
  p.f = [](const Vec& x, const Vec& y) {
    return 0.5 * x[0] * x[0] + 0.5 * x[0] * y[0] - 95 * x[0];
  };
  p.grad_f = [](const Vec& x, const Vec& y) { return vec({x[0] + 0.5 * y[0] - 95, 0.5 * x[0]}); };
  p.F = [](const Vec& x, const Vec& y) { return vec({2 * y[0] + 0.5 * x[0] - 100}); };
  p.jac_F = [](const Vec&, const Vec&) { return mat(1, 2, {0.5, 2}); };
  p.g = [](const Vec&, const Vec& y) { return vec({y[0]}); };
  p.jac_g = [](const Vec&, const Vec&) { return mat(1, 2, {0, 1}); };
  p.x_lower = vec({0});
  p.x_upper = vec({200});
  p.known_optimal_value = -9800.0 / 3.0;
  p.known_solution = point(vec({280.0 / 3.0}), vec({80.0 / 3.0}), vec({80.0 / 3.0}), vec({0}));
  p.starts = {vec({0}), vec({100}), vec({200})};
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  const std::vector<TableRow> rows{row(0, "0", -3266.6666, "93.3333"),
                                   row(1, "100", -3266.6666, "93.3333"),
                                   row(2, "200", -3266.6666, "93.3333")};
  e.table1 = {1e-2, rows};
  e.table2 = {1e-2, rows};
  return e;
}

BenchEntry nash1() {
  model::MpecProblem p;
  p.name = "Nash1";
  p.n = 2;
  p.m = 2;
  p.l = 4;
  p.f = [](const Vec& x, const Vec& y) { return 0.5 * (x - y).squaredNorm(); };
  p.grad_f = [](const Vec& x, const Vec& y) {
    Vec gr(4);
    gr << x - y, y - x;
    return gr;
  };
  p.F = [](const Vec&, const Vec& y) {
    return vec({2 * y[0] + (8.0 / 3.0) * y[1] - 34, 1.25 * y[0] + 2 * y[1] - 24.25});
  };
  p.jac_F = [](const Vec&, const Vec&) {
    return mat(2, 4, {0, 0, 2, 8.0 / 3.0, 0, 0, 1.25, 2});
  };
  p.g = [](const Vec& x, const Vec& y) {
    return vec({15 - x[1] - y[0], 15 - x[0] - y[1], y[0], y[1]});
  };
  p.jac_g = [](const Vec&, const Vec&) {
    return mat(4, 4, {0, -1, -1, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 1});
  };
  p.x_lower = vec({0, 0});
  p.x_upper = vec({10, 10});
  p.known_optimal_value = 0.0;
  p.known_solution =
      point(vec({9.5, 5.5}), vec({9.5, 5.5}), vec({0, 0, 9.5, 5.5}), vec({1.0 / 3.0, 1.375, 0, 0}));
  p.starts = {vec({0, 0}), vec({5, 5}), vec({10, 10}), vec({10, 0}), vec({0, 10})};
  BenchEntry e = finish(std::move(p), Source::MacMPEC);
  e.table1 = {1e-1,
              {row(0, "(0,0)", 0, "(9.996,4.999)"), row(1, "(5,5)", 0, "(9.313,5.686)"),
               row(2, "(10,10)", 0, "(9.092,5.901)"), row(3, "(10,0)", 0, "(9.999,4.999)"),
               row(4, "(0,10)", 0, "(9.999,4.999)")}};
  e.table2 = {1e-1,
              {row(0, "(0,0)", 0, "(9,6)"), row(1, "(5,5)", 0, "(10,5)"),
               row(2, "(10,10)", 0, "(9,6)"), row(3, "(10,0)", 0, "(9.355,5.645)"),
               row(4, "(0,10)", 0, "(9.396,5.604)")}};
  return e;
}

}  // namespace

std::vector<BenchEntry> builtin_entries() {
  return {toy1(),     toy2(),     toy3(),     bard1(),   df1(),          gauvin(), jr1(),
          scholtes1(), bilevel1(), bilevel2(), bilevel3(), desilva(), stackelberg1(), nash1()};
}

}  // namespace mpec::bench::detail
