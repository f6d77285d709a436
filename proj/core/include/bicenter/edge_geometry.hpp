#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bicenter/instance.hpp"

namespace bicenter {

// One linear piece of a weighted distance function restricted to an edge,
// valid over t in [t_lo, t_hi]; y = slope * t + intercept.
struct LinearPiece {
  Scalar slope;
  Scalar intercept;
  Scalar t_lo;
  Scalar t_hi;
};

// w(v) * d(v, x) for x on an edge: rises toward the semicircular point and
// falls after it, or is monotone when that point lies outside the edge.
struct EdgeDistanceFunction {
  int vertex = 0;
  int edge = 0;
  std::vector<LinearPiece> pieces;   // one or two, contiguous over [0, l]
  std::optional<Scalar> breakpoint;  // the semicircular point, if interior

  Scalar value_at(const Scalar& t) const;
};

// Closed interval with endpoints lo <= hi.
struct Interval {
  Scalar lo;
  Scalar hi;
};

// Solution set of w(v) d(v,x) <= lambda on an edge: up to two closed
// intervals, i1 anchored at the alpha endpoint and i2 at beta. The whole
// edge is canonically reported as i1 alone.
struct FeasibleIntervals {
  std::optional<Interval> i1;
  std::optional<Interval> i2;

  bool empty() const { return !i1 && !i2; }
  bool contains(const Scalar& t) const;
};

EdgeDistanceFunction distance_function(const Instance& instance, int v, int e);

FeasibleIntervals feasible_intervals(const Instance& instance, int v, int e,
                                     const Scalar& lambda);

// Candidate objective values contributed by one edge: y-values of all
// intersections between extended pieces of distinct slopes, plus every
// piece-endpoint value. Sorted ascending, deduplicated, non-negative.
std::vector<Scalar> candidate_values_edge(const Instance& instance, int e);

// Union over all edges; guaranteed to contain the optimum.
std::vector<Scalar> candidate_values_graph(const Instance& instance);

// Union over the two given edges (used by the tree phase-2 search).
std::vector<Scalar> candidate_values_edge_pair(const Instance& instance, int e1, int e2);

}  // namespace bicenter
