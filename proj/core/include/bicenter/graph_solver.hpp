#pragma once

#include <optional>
#include <utility>

#include "bicenter/instance.hpp"
#include "bicenter/piercing.hpp"

namespace bicenter {

// Can both centers be placed on (e1, e2) with objective <= lambda?
// Returns the two center points on success.
std::optional<std::pair<EdgePoint, EdgePoint>> local_feasibility(const Instance& instance,
                                                                 int e1, int e2,
                                                                 const Scalar& lambda);

// Global test: scans unordered edge pairs (including e1 == e2) in ascending
// order and returns the first witness; absent means lambda < lambda*.
std::optional<std::pair<EdgePoint, EdgePoint>> feasibility_graph(const Instance& instance,
                                                                 const Scalar& lambda);

// Binary search over the sorted candidate values; requires a normalized
// instance.
Solution solve_graph(const Instance& instance);

}  // namespace bicenter
