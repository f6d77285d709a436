#pragma once

#include <random>
#include <utility>
#include <vector>

#include "bicenter/generator.hpp"
#include "bicenter/instance.hpp"

namespace testutil {

using bicenter::Edge;
using bicenter::Scalar;

inline bicenter::Instance build(int n, std::vector<Scalar> weights,
                                std::vector<Edge> edges,
                                std::vector<std::pair<int, int>> pairs) {
  bicenter::GraphDescription graph;
  graph.n = n;
  graph.weights = std::move(weights);
  graph.edges = std::move(edges);
  bicenter::PairDescription pair_set;
  pair_set.pairs = std::move(pairs);
  return bicenter::validate_and_build(graph, pair_set);
}

// Path 0-1-2-3, unit weights and lengths, pairs {(0,3),(1,2)}; lambda* = 1/2.
inline bicenter::Instance unit_path() {
  return build(4, {1, 1, 1, 1},
               {Edge{0, 1, 1}, Edge{1, 2, 1}, Edge{2, 3, 1}},
               {{0, 3}, {1, 2}});
}

// Same path with w(0) = 2; lambda* = 2/3.
inline bicenter::Instance weighted_path() {
  return build(4, {2, 1, 1, 1},
               {Edge{0, 1, 1}, Edge{1, 2, 1}, Edge{2, 3, 1}},
               {{0, 3}, {1, 2}});
}

// Triangle 0-1-2 with unit weights and lengths, pair {(0,1)}.
inline bicenter::Instance unit_triangle() {
  return build(3, {1, 1, 1},
               {Edge{0, 1, 1}, Edge{1, 2, 1}, Edge{0, 2, 1}},
               {{0, 1}});
}

inline bicenter::Instance random_instance(unsigned long long seed, int min_n, int max_n,
                                          bicenter::GraphKind kind,
                                          int weight_lo = 0, int weight_hi = 5) {
  std::mt19937_64 rng(seed ^ 0xb1c37e2ull);
  bicenter::GenParams params;
  params.seed = seed;
  params.n = std::uniform_int_distribution<int>(min_n, max_n)(rng);
  params.kind = kind;
  params.weight_lo = weight_lo;
  params.weight_hi = weight_hi;
  bicenter::GeneratedInstance generated = bicenter::generate_instance(params);
  bicenter::GraphDescription graph{generated.graph.n, generated.graph.weights,
                                   generated.graph.edges};
  bicenter::PairDescription pairs{generated.pairs.pairs};
  return bicenter::validate_and_build(graph, pairs);
}

inline bicenter::Instance normalized(const bicenter::Instance& instance) {
  return instance.fully_paired() ? instance : bicenter::normalize(instance);
}

}  // namespace testutil
