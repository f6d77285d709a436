#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bicenter/scalar.hpp"

namespace bicenter {

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
  int u = 0;
  int v = 0;
  Scalar length;

  // Offsets along the edge are always measured from the lower-indexed
  // endpoint, so vertex-coincident points have one canonical form.
  int alpha() const { return u < v ? u : v; }
  int beta() const { return u < v ? v : u; }
};

struct Graph {
  int n = 0;
  std::vector<Scalar> weights;        // one per vertex, >= 0
  std::vector<Edge> edges;            // length > 0, no self loops
  std::vector<std::vector<int>> adjacency;  // incident edge ids per vertex
};

struct PairSet {
  std::vector<std::pair<int, int>> pairs;  // (v_i, u_i), disjoint vertices
};

// A point on an edge: offset t from the edge's lower-indexed endpoint,
// 0 <= t <= length.
struct EdgePoint {
  int edge = 0;
  Scalar t;
};

struct Solution {
  Scalar lambda;
  EdgePoint q1;
  EdgePoint q2;
  std::vector<bool> assign_first_to_q1;  // per pair: v_i goes to q1?
};

struct GraphDescription {
  int n = 0;
  std::vector<Scalar> weights;
  std::vector<Edge> edges;
};

struct PairDescription {
  std::vector<std::pair<int, int>> pairs;
};

// Validated graph + pair set + exact distances. Immutable after
// construction; safe to share across threads.
//
// For non-tree graphs an all-pairs matrix is computed (Dijkstra per vertex,
// exact rationals). For trees distances go through an Euler-tour LCA index
// instead, so large trees never pay for the quadratic matrix; small trees
// additionally keep the matrix since a few callers probe it densely.
class Instance {
 public:
  const Graph& graph() const { return graph_; }
  const PairSet& pairs() const { return pairs_; }
  bool is_tree() const { return is_tree_; }
  int n() const { return graph_.n; }
  int m() const { return static_cast<int>(graph_.edges.size()); }
  int k() const { return static_cast<int>(pairs_.pairs.size()); }

  const Scalar& weight(int v) const { return graph_.weights[v]; }
  const Edge& edge(int e) const { return graph_.edges[e]; }

  Scalar distance(int u, int v) const;
  bool has_distance_matrix() const { return !dist_.empty(); }

  // True when every vertex belongs to exactly one pair.
  bool fully_paired() const;

  friend Instance validate_and_build(const GraphDescription&, const PairDescription&,
                                     std::optional<bool> with_matrix);

 private:
  Graph graph_;
  PairSet pairs_;
  bool is_tree_ = false;
  std::vector<std::vector<Scalar>> dist_;  // empty for large trees

  // LCA index (trees only): Euler tour + sparse range-minimum over depths.
  std::vector<int> parent_, parent_edge_, euler_first_;
  std::vector<int> euler_vertex_;
  std::vector<std::vector<int>> sparse_;   // argmin by tour depth
  std::vector<int> tour_depth_;
  std::vector<Scalar> root_dist_;

  void build_distance_matrix();
  void build_tree_index();
  int lca(int u, int v) const;
};

// Validates the raw description, computes distances, and returns the
// immutable Instance. with_matrix forces or suppresses the all-pairs matrix;
// by default it is built for non-trees and for trees up to a size cutoff.
Instance validate_and_build(const GraphDescription& graph, const PairDescription& pairs,
                            std::optional<bool> with_matrix = std::nullopt);

// Zero-weights unpaired vertices, appends one weight-0 vertex (edge of
// length 1 to vertex 0) when the count is odd, and matches the leftovers in
// ascending-id order. The result is fully paired and has the same optimum.
Instance normalize(const Instance& instance);

// Weighted/unweighted distances between arbitrary points.
Scalar vertex_point_distance(const Instance& instance, int v, const EdgePoint& p);
Scalar point_distance(const Instance& instance, const EdgePoint& p, const EdgePoint& q);
bool same_point(const Instance& instance, const EdgePoint& p, const EdgePoint& q);

// Canonical EdgePoint for a vertex (lowest incident edge id).
EdgePoint vertex_point(const Instance& instance, int v);

// phi_i: the better of the two ways to split pair i between q1 and q2.
Scalar phi(const Instance& instance, int pair_index, const EdgePoint& q1,
           const EdgePoint& q2);

// max_i phi_i, or the objective under a fixed assignment.
Scalar objective(const Instance& instance, const EdgePoint& q1, const EdgePoint& q2);
Scalar objective(const Instance& instance, const EdgePoint& q1, const EdgePoint& q2,
                 const std::vector<bool>& assign_first_to_q1);

// Per-pair orientation achieving phi at (q1, q2); ties assign v_i to q1.
std::vector<bool> recover_assignment(const Instance& instance, const EdgePoint& q1,
                                     const EdgePoint& q2);

}  // namespace bicenter
