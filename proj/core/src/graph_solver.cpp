#include "bicenter/graph_solver.hpp"

#include <cassert>
#include <vector>

#include "bicenter/edge_geometry.hpp"

namespace bicenter {

std::optional<std::pair<EdgePoint, EdgePoint>> local_feasibility(const Instance& instance,
                                                                 int e1, int e2,
                                                                 const Scalar& lambda) {
  std::vector<RectangleSet> sets;
  sets.reserve(instance.k());
  for (int i = 0; i < instance.k(); ++i) {
    std::optional<RectangleSet> set = build_rectangle_set(instance, i, e1, e2, lambda);
    if (!set) return std::nullopt;
    sets.push_back(std::move(*set));
  }
  Box box{instance.edge(e1).length, instance.edge(e2).length};
  auto hit = pierce(box, sets);
  if (!hit) return std::nullopt;
  return std::make_pair(EdgePoint{e1, hit->first}, EdgePoint{e2, hit->second});
}

namespace {

// Shared interval cache for one lambda, reused across all edge pairs.
struct IntervalTable {
  std::vector<std::vector<FeasibleIntervals>> by_vertex;  // [v][e]
  std::vector<std::vector<char>> nonempty;                // [v][e]

  IntervalTable(const Instance& instance, const Scalar& lambda) {
    const int n = instance.n();
    const int m = instance.m();
    by_vertex.assign(n, {});
    nonempty.assign(n, std::vector<char>(m, 0));
    std::vector<char> needed(n, 0);
    for (auto [v, u] : instance.pairs().pairs) needed[v] = needed[u] = 1;
    for (int v = 0; v < n; ++v) {
      if (!needed[v]) continue;
      by_vertex[v].resize(m);
      for (int e = 0; e < m; ++e) {
        by_vertex[v][e] = feasible_intervals(instance, v, e, lambda);
        nonempty[v][e] = !by_vertex[v][e].empty();
      }
    }
  }
};

}  // namespace

std::optional<std::pair<EdgePoint, EdgePoint>> feasibility_graph(const Instance& instance,
                                                                 const Scalar& lambda) {
  const int m = instance.m();
  const int k = instance.k();
  IntervalTable table(instance, lambda);

  std::vector<RectangleSet> sets;
  for (int e1 = 0; e1 < m; ++e1) {
    for (int e2 = e1; e2 < m; ++e2) {
      bool viable = true;
      for (int i = 0; i < k && viable; ++i) {
        auto [v, u] = instance.pairs().pairs[i];
        bool forward = table.nonempty[v][e1] && table.nonempty[u][e2];
        bool backward = table.nonempty[u][e1] && table.nonempty[v][e2];
        viable = forward || backward;
      }
      if (!viable) continue;

      sets.clear();
      bool complete = true;
      for (int i = 0; i < k && complete; ++i) {
        auto [v, u] = instance.pairs().pairs[i];
        std::optional<RectangleSet> set = assemble_rectangle_set(
            i, table.by_vertex[v][e1], table.by_vertex[u][e2], table.by_vertex[u][e1],
            table.by_vertex[v][e2]);
        if (!set) {
          complete = false;
        } else {
          sets.push_back(std::move(*set));
        }
      }
      if (!complete) continue;

      Box box{instance.edge(e1).length, instance.edge(e2).length};
      auto hit = pierce(box, sets);
      if (hit) {
        return std::make_pair(EdgePoint{e1, hit->first}, EdgePoint{e2, hit->second});
      }
    }
  }
  return std::nullopt;
}

Solution solve_graph(const Instance& instance) {
  std::vector<Scalar> candidates = candidate_values_graph(instance);
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (feasibility_graph(instance, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  auto witness = feasibility_graph(instance, candidates[hi]);
  assert(witness);
  Solution solution;
  solution.lambda = candidates[hi];
  solution.q1 = witness->first;
  solution.q2 = witness->second;
  solution.assign_first_to_q1 = recover_assignment(instance, solution.q1, solution.q2);
  return solution;
}

}  // namespace bicenter
