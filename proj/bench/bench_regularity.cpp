#include <benchmark/benchmark.h>

#include "rootcharts/harness.hpp"

using namespace rc;

namespace {

PolyFamily intro() {
  Jet x1 = Jet::variable(2, 0), x2 = Jet::variable(2, 1);
  return PolyFamily::from_coeffs({Jet(2), Jet(2) - (x1 + Jet::constant(2, Scalar(mpq_class(0), mpq_class(1))) * x2)});
}

GridSpec cube(double h) {
  GridSpec g;
  g.box = Box{{0.0, 0.0}, {0.5, 0.5}};
  g.h = h;
  return g;
}

void grid(benchmark::State& st, Exec exec) {
  auto f = sampler_of(Field([](const Point& x) { return std::sqrt(cplx(x[0], x[1])); }));
  double h = 1.0 / static_cast<double>(st.range(0));
  auto g = cube(h);
  for (auto _ : st) benchmark::DoNotOptimize(grid_level(f, g, h, 1, 10, exec).value);
  st.counters["nodes"] = static_cast<double>((st.range(0) + 1) * (st.range(0) + 1));
}

void tree_grid(benchmark::State& st, Exec exec) {
  auto P = intro();
  auto sel = tree_selection(P, desingularize(P), Box{{0.0, 0.0}, {0.5, 0.5}});
  auto f = sampler_of(sel, 0);
  double h = 1.0 / static_cast<double>(st.range(0));
  auto g = cube(h);
  g.marks = sel.locus;
  for (auto _ : st) benchmark::DoNotOptimize(grid_level(f, g, h, 1, 10, exec).value);
}

void verify(benchmark::State& st, Exec exec) {
  auto P = intro();
  auto T = desingularize(P);
  VerifyOptions o;
  o.samples = static_cast<int>(st.range(0));
  o.exec = exec;
  for (auto _ : st) benchmark::DoNotOptimize(verify_roots(P, T, o).max_residual);
}

}  // namespace

BENCHMARK_CAPTURE(grid, serial, Exec::Serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(grid, parallel, Exec::Parallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(tree_grid, serial, Exec::Serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(tree_grid, parallel, Exec::Parallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(verify, serial, Exec::Serial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(verify, parallel, Exec::Parallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
