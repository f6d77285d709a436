#pragma once

#include <cstdint>
#include <optional>

#include "bicenter/instance.hpp"

namespace bicenter {

enum class GraphKind { Tree, ConnectedGraph };

struct GenParams {
  std::uint64_t seed = 0;
  int n = 6;
  std::optional<int> m;  // defaults to n-1 for trees, random otherwise
  GraphKind kind = GraphKind::Tree;
  int weight_lo = 0;
  int weight_hi = 5;
  int length_lo = 1;
  int length_hi = 9;
  bool pair_all_vertices = false;  // otherwise a random even-size subset
};

struct GeneratedInstance {
  GraphDescription graph;
  PairDescription pairs;
};

// Deterministic per seed. Pairs come from a random perfect matching over a
// random even-size vertex subset (or all vertices).
GeneratedInstance generate_instance(const GenParams& params);

}  // namespace bicenter
