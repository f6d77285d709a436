#pragma once

#include <string>

#include "bicenter/instance.hpp"

namespace bicenter {

enum class SolverChoice { Auto, Graph, Tree, TreeUnweighted };

struct SolveResult {
  Solution solution;
  std::string solver;  // "graph", "tree", or "tree-unweighted"
};

// Dispatches to the right solver: trees with equal paired weights go to the
// linear-time pipeline, other trees to the centroid search, everything else
// to the edge-pair sweep. A forced choice that does not fit the instance
// throws.
SolveResult solve_instance(const Instance& instance,
                           SolverChoice choice = SolverChoice::Auto);

}  // namespace bicenter
