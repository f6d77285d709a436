#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bicenter/instance.hpp"
#include "bicenter/piercing.hpp"

namespace bicenter {

// Brute-force references: slow, exact, structurally independent of the
// solvers they check. Guarded against large instances.

inline constexpr int kDefaultOracleCap = 12;

// Enumerates every candidate center point (piece intersections inside each
// edge plus endpoints and breakpoints) and minimizes max_i phi_i over all
// point pairs. Caches the optimum and the optimal placements.
class Oracle {
 public:
  explicit Oracle(const Instance& instance, int max_n = kDefaultOracleCap);

  const Scalar& optimum();
  bool feasible(const Scalar& lambda);

  // All candidate point pairs achieving the optimum.
  const std::vector<std::pair<EdgePoint, EdgePoint>>& optimal_placements();

  const std::vector<EdgePoint>& candidate_points() const { return points_; }

 private:
  const Instance& instance_;
  std::vector<EdgePoint> points_;
  std::optional<Scalar> optimum_;
  std::vector<std::pair<EdgePoint, EdgePoint>> placements_;
  std::vector<std::vector<Scalar>> weighted_;  // [point][pair-member slot]

  void solve();
};

Scalar oracle_solve(const Instance& instance, int max_n = kDefaultOracleCap);
bool oracle_feasible(const Instance& instance, const Scalar& lambda,
                     int max_n = kDefaultOracleCap);

// Structurally different cross-check: enumerates all 2^k assignments and
// solves two independent one-center problems over the candidate points.
Scalar oracle_solve_by_assignments(const Instance& instance,
                                   int max_n = kDefaultOracleCap);

// Tests the cross product of all side coordinates and box corners; returns
// the lexicographically smallest point hitting every set.
std::optional<std::pair<Scalar, Scalar>> oracle_pierce(
    const Box& box, const std::vector<RectangleSet>& sets);

}  // namespace bicenter
