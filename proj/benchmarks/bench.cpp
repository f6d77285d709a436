#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bicenter/generator.hpp"
#include "bicenter/graph_solver.hpp"
#include "bicenter/instance.hpp"
#include "bicenter/piercing.hpp"
#include "bicenter/tree_solver.hpp"

using bicenter::Instance;
using bicenter::Scalar;

namespace {

Instance make_instance(bicenter::GraphKind kind, int n, std::optional<int> m = {},
                       int weight_lo = 0, int weight_hi = 5) {
  bicenter::GenParams params;
  params.seed = 12345;
  params.kind = kind;
  params.n = n;
  params.m = m;
  params.weight_lo = weight_lo;
  params.weight_hi = weight_hi;
  bicenter::GeneratedInstance g = bicenter::generate_instance(params);
  Instance instance = bicenter::validate_and_build(g.graph, g.pairs);
  return instance.fully_paired() ? instance : bicenter::normalize(instance);
}

void BM_solve_graph(benchmark::State& state) {
  Instance instance = make_instance(bicenter::GraphKind::ConnectedGraph,
                                    static_cast<int>(state.range(0)),
                                    2 * static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bicenter::solve_graph(instance).lambda);
  }
}
BENCHMARK(BM_solve_graph)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_feasibility_tree(benchmark::State& state) {
  Instance instance =
      make_instance(bicenter::GraphKind::Tree, static_cast<int>(state.range(0)));
  Scalar lambda = bicenter::solve_tree_weighted(instance).lambda;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bicenter::feasibility_tree(instance, lambda).has_value());
  }
}
BENCHMARK(BM_feasibility_tree)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_solve_tree_weighted(benchmark::State& state) {
  Instance instance =
      make_instance(bicenter::GraphKind::Tree, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bicenter::solve_tree_weighted(instance).lambda);
  }
}
BENCHMARK(BM_solve_tree_weighted)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_solve_tree_unweighted(benchmark::State& state) {
  Instance instance =
      make_instance(bicenter::GraphKind::Tree, static_cast<int>(state.range(0)), {}, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bicenter::solve_tree_unweighted(instance).lambda);
  }
}
BENCHMARK(BM_solve_tree_unweighted)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_pierce(benchmark::State& state) {
  std::mt19937_64 rng(7);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  bicenter::Box box{Scalar(8), Scalar(8)};
  std::vector<bicenter::RectangleSet> sets;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
    bicenter::RectangleSet set;
    set.index = i;
    for (int r = 0; r < 4; ++r) {
      Scalar w = Scalar(pick(1, 16)) / 2;
      Scalar h = Scalar(pick(1, 16)) / 2;
      bicenter::CornerRectangle cr;
      cr.x = pick(0, 1) ? bicenter::Interval{Scalar(0), w}
                        : bicenter::Interval{Scalar(8) - w, Scalar(8)};
      cr.y = pick(0, 1) ? bicenter::Interval{Scalar(0), h}
                        : bicenter::Interval{Scalar(8) - h, Scalar(8)};
      set.rectangles.push_back(cr);
    }
    sets.push_back(std::move(set));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bicenter::pierce(box, sets).has_value());
  }
}
BENCHMARK(BM_pierce)->Arg(8)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_lazy_min_tree(benchmark::State& state) {
  std::vector<Scalar> keys;
  for (int i = 0; i < 1024; ++i) keys.push_back(Scalar(i) / 7);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> idx(0, 1023), add(-2, 3), coin(0, 1);
  for (auto _ : state) {
    bicenter::LazyMinTree tree(keys);
    for (int step = 0; step < 1000; ++step) {
      int a = idx(rng), b = idx(rng);
      if (a > b) std::swap(a, b);
      tree.range_add(bicenter::RangeBound{keys[a], coin(rng) == 1},
                     bicenter::RangeBound{keys[b], coin(rng) == 1}, add(rng));
      benchmark::DoNotOptimize(tree.global_min());
    }
  }
}
BENCHMARK(BM_lazy_min_tree)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
