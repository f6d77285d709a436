#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bicenter/instance.hpp"

namespace bicenter {

// Parent/children arrays for a tree instance rooted at a chosen vertex.
struct RootedTree {
  int root = 0;
  std::vector<int> parent;       // -1 at the root
  std::vector<int> parent_edge;  // edge id toward the parent
  std::vector<std::vector<int>> children;
  std::vector<int> postorder;

  static RootedTree build(const Instance& instance, int root);
};

// O(n) feasibility test: greedy center placement by coverage slack, then a
// direct objective check. Requires a normalized tree instance.
std::optional<std::pair<EdgePoint, EdgePoint>> feasibility_tree(const Instance& instance,
                                                                const Scalar& lambda);

// Tree vertex minimizing the largest hanging-subtree size; lowest id wins.
int centroid(const Instance& instance);

// A query point: either a vertex or an interior edge point.
struct QueryPoint {
  std::optional<int> vertex;
  std::optional<EdgePoint> point;

  static QueryPoint at_vertex(int v) { return QueryPoint{v, std::nullopt}; }
  static QueryPoint at_point(EdgePoint p) { return QueryPoint{std::nullopt, std::move(p)}; }
};

// One hanging subtree of a query point: the component plus the query point
// as a virtual endpoint.
struct HangingSubtree {
  Scalar tau;               // max weighted distance to the query point
  EdgePoint anchor;         // the query point (a virtual member of the subtree)
  std::vector<int> vertices;
  std::vector<int> edges;   // full edges inside, incl. the edge to the query
  // Partial edge for interior query points: (edge id, t range).
  std::optional<int> partial_edge;
  std::optional<Scalar> partial_lo, partial_hi;

  bool contains_point(const Instance& instance, const EdgePoint& p) const;
};

struct HangingSubtreeReport {
  std::vector<HangingSubtree> subtrees;  // sorted by tau, descending
  std::string case_label;
  std::optional<Scalar> verdict;         // lambda* when resolved outright
  std::optional<int> first_center;       // index into subtrees
  std::optional<int> second_center;
  bool second_includes_query = false;
};

// Lemma-style four-case analysis at a query point; may run feasibility
// tests at tau values. Requires a normalized tree instance.
HangingSubtreeReport locate_center_subtrees(const Instance& instance,
                                            const QueryPoint& query);

struct TreeSolveDetail {
  Solution solution;
  int located_edge1 = -1;  // phase-1 edges (witness edges on a verdict)
  int located_edge2 = -1;
};

TreeSolveDetail solve_tree_weighted_detail(const Instance& instance);
Solution solve_tree_weighted(const Instance& instance);

// Sub-instance after iteratively removing leaves that belong to no pair.
struct PrunedTree {
  Instance instance;
  std::vector<int> vertex_to_old;
  std::vector<int> old_to_new;   // -1 for removed vertices
  std::vector<int> edge_to_old;
};

PrunedTree prune_unpaired_leaves(const Instance& instance);

// One-center of a pruned unit-weight tree: midpoint of a diameter path,
// its radius, and the vertices at exactly that distance grouped by hanging
// subtree of the center.
struct UnweightedCenter {
  EdgePoint center;
  Scalar radius;
  std::vector<int> side_of_vertex;  // hanging-subtree index, -1 for the
                                    // center vertex itself
  std::vector<std::pair<int, std::vector<int>>> key_groups;  // side -> keys
};

UnweightedCenter unweighted_center(const Instance& instance);

// Linear-time pipeline for equal vertex weights; works on the instance as
// given (pre-normalization pair set).
Solution solve_tree_unweighted(const Instance& instance);

}  // namespace bicenter
