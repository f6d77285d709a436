#include "bicenter/solve.hpp"

#include <optional>
#include <stdexcept>

#include "bicenter/graph_solver.hpp"
#include "bicenter/tree_solver.hpp"

namespace bicenter {

namespace {

bool equal_paired_weights(const Instance& instance) {
  std::optional<Scalar> common;
  for (auto [a, b] : instance.pairs().pairs) {
    for (int v : {a, b}) {
      if (!common) common = instance.weight(v);
      if (instance.weight(v) != *common) return false;
    }
  }
  return true;
}

Solution solve_normalized_graph(const Instance& instance) {
  if (instance.fully_paired()) return solve_graph(instance);
  Instance normalized = normalize(instance);
  Solution s = solve_graph(normalized);
  // The one normalization artifact is a helper vertex on a fresh edge; a
  // center there can slide to vertex 0 without moving away from any real
  // vertex.
  auto remap = [&](EdgePoint& q) {
    if (q.edge >= instance.m()) q = vertex_point(instance, 0);
  };
  remap(s.q1);
  remap(s.q2);
  s.assign_first_to_q1.resize(instance.k());
  return s;
}

}  // namespace

SolveResult solve_instance(const Instance& instance, SolverChoice choice) {
  switch (choice) {
    case SolverChoice::Graph:
      return SolveResult{solve_normalized_graph(instance), "graph"};
    case SolverChoice::Tree:
      return SolveResult{solve_tree_weighted(instance), "tree"};
    case SolverChoice::TreeUnweighted:
      return SolveResult{solve_tree_unweighted(instance), "tree-unweighted"};
    case SolverChoice::Auto:
      break;
  }
  if (instance.is_tree() && instance.m() > 0) {
    if (equal_paired_weights(instance))
      return SolveResult{solve_tree_unweighted(instance), "tree-unweighted"};
    return SolveResult{solve_tree_weighted(instance), "tree"};
  }
  return SolveResult{solve_normalized_graph(instance), "graph"};
}

}  // namespace bicenter
