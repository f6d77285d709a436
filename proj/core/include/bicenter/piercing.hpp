#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bicenter/edge_geometry.hpp"
#include "bicenter/instance.hpp"

namespace bicenter {

// Sweep box with its lower-left corner at the origin.
struct Box {
  Scalar x_max;
  Scalar y_max;
};

// Closed axis-parallel rectangle sharing at least one corner with the box.
struct CornerRectangle {
  Interval x;
  Interval y;

  bool contains(const Scalar& px, const Scalar& py) const {
    return px >= x.lo && px <= x.hi && py >= y.lo && py <= y.hi;
  }
};

// All rectangles encoding the two assignment orientations of one pair.
struct RectangleSet {
  int index = 0;
  std::vector<CornerRectangle> rectangles;

  bool hit_by(const Scalar& px, const Scalar& py) const;
};

// Range boundary for LazyMinTree::range_add; an open end excludes its key.
struct RangeBound {
  Scalar key;
  bool closed = true;
};

// Min segment tree over a fixed sorted key universe with lazy range
// addition. Maintains per-key coverage counts during the sweep.
class LazyMinTree {
 public:
  explicit LazyMinTree(std::vector<Scalar> keys);

  // Adds c to every key inside the range; absent bounds are +-infinity.
  // Throws std::invalid_argument when a boundary is not an existing key.
  void range_add(const std::optional<RangeBound>& lo, const std::optional<RangeBound>& hi,
                 long long c);

  long long global_min() const;

  // Lowest key whose count equals the global minimum.
  const Scalar& min_key();

  const std::vector<Scalar>& keys() const { return keys_; }

 private:
  std::vector<Scalar> keys_;
  std::vector<long long> min_;
  std::vector<long long> lazy_;

  void add(int node, int lo, int hi, int from, int to, long long c);
  void push(int node);
  int descend(int node, int lo, int hi);
};

// Rectangles for pair i on the edge pair (e1 on x, e2 on y) under lambda.
// nullopt is the infeasible marker: neither orientation admits a rectangle.
std::optional<RectangleSet> build_rectangle_set(const Instance& instance, int pair_index,
                                                int e1, int e2, const Scalar& lambda);

// Same, from precomputed feasible intervals (v on e1 / u on e2 for the
// first orientation, swapped for the second).
std::optional<RectangleSet> assemble_rectangle_set(
    int pair_index, const FeasibleIntervals& v_on_e1, const FeasibleIntervals& u_on_e2,
    const FeasibleIntervals& u_on_e1, const FeasibleIntervals& v_on_e2);

// Left-to-right sweep; returns a point of the closed box hitting every set,
// or nullopt. Coordinates are drawn from rectangle boundary coordinates.
std::optional<std::pair<Scalar, Scalar>> pierce(const Box& box,
                                                const std::vector<RectangleSet>& sets);

}  // namespace bicenter
