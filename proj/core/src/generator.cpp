#include "bicenter/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace bicenter {

GeneratedInstance generate_instance(const GenParams& params) {
  if (params.n < 2) throw std::invalid_argument("generate_instance: need n >= 2");
  if (params.weight_lo > params.weight_hi || params.length_lo > params.length_hi ||
      params.weight_lo < 0 || params.length_lo < 1)
    throw std::invalid_argument("generate_instance: bad weight/length range");

  std::mt19937_64 rng(params.seed);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  const int n = params.n;
  GeneratedInstance out;
  out.graph.n = n;
  out.graph.weights.reserve(n);
  for (int v = 0; v < n; ++v) {
    out.graph.weights.push_back(Scalar(pick(params.weight_lo, params.weight_hi)));
  }

  // Random spanning tree: attach each vertex to an earlier one.
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < n; ++v) {
    int p = pick(0, v - 1);
    out.graph.edges.push_back(Edge{p, v, Scalar(pick(params.length_lo, params.length_hi))});
    used.insert({std::min(p, v), std::max(p, v)});
  }

  if (params.kind == GraphKind::ConnectedGraph) {
    const int max_m = n * (n - 1) / 2;
    int target_m = params.m ? *params.m : pick(n - 1, std::min(max_m, 2 * n));
    if (target_m < n - 1) throw std::invalid_argument("generate_instance: m < n-1");
    if (target_m > max_m) throw std::invalid_argument("generate_instance: m too large");
    while (static_cast<int>(out.graph.edges.size()) < target_m) {
      int a = pick(0, n - 1);
      int b = pick(0, n - 1);
      if (a == b) continue;
      if (!used.insert({std::min(a, b), std::max(a, b)}).second) continue;
      out.graph.edges.push_back(Edge{a, b, Scalar(pick(params.length_lo, params.length_hi))});
    }
  } else if (params.m && *params.m != n - 1) {
    throw std::invalid_argument("generate_instance: a tree has exactly n-1 edges");
  }

  std::vector<int> vertices(n);
  for (int v = 0; v < n; ++v) vertices[v] = v;
  std::shuffle(vertices.begin(), vertices.end(), rng);
  int pair_count = params.pair_all_vertices ? n / 2 : pick(1, n / 2);
  for (int i = 0; i < pair_count; ++i) {
    out.pairs.pairs.emplace_back(vertices[2 * i], vertices[2 * i + 1]);
  }
  return out;
}

}  // namespace bicenter
