#include <doctest.h>

#include <algorithm>
#include <random>

#include "bicenter/edge_geometry.hpp"
#include "bicenter/oracle.hpp"
#include "util.hpp"

using bicenter::EdgePoint;
using bicenter::FeasibleIntervals;
using bicenter::Instance;
using bicenter::Scalar;

TEST_CASE("distance_function finds the semicircular point") {
  Instance triangle = testutil::unit_triangle();
  // Vertex 2 against edge (0,1): equidistant routes meet at t = 1/2.
  auto f = bicenter::distance_function(triangle, 2, 0);
  REQUIRE(f.breakpoint.has_value());
  CHECK(*f.breakpoint == Scalar(1) / 2);
  CHECK(f.pieces.size() == 2);
  CHECK(f.value_at(Scalar(1) / 2) == Scalar(3) / 2);
  CHECK(f.value_at(0) == 1);
  CHECK(f.value_at(1) == 1);
}

TEST_CASE("distance_function is monotone from an endpoint") {
  Instance path = testutil::unit_path();
  auto own = bicenter::distance_function(path, 0, 0);
  CHECK(!own.breakpoint.has_value());
  CHECK(own.pieces.size() == 1);
  CHECK(own.value_at(Scalar(1) / 3) == Scalar(1) / 3);

  auto far = bicenter::distance_function(path, 0, 2);
  CHECK(!far.breakpoint.has_value());
  CHECK(far.value_at(0) == 2);
  CHECK(far.value_at(Scalar(1) / 2) == Scalar(5) / 2);
}

TEST_CASE("feasible_intervals solve the weighted inequality") {
  Instance weighted = testutil::weighted_path();
  auto only_near = bicenter::feasible_intervals(weighted, 0, 0, Scalar(1) / 2);
  REQUIRE(only_near.i1.has_value());
  CHECK(only_near.i1->lo == 0);
  CHECK(only_near.i1->hi == Scalar(1) / 4);
  CHECK(!only_near.i2.has_value());

  auto empty = bicenter::feasible_intervals(weighted, 0, 2, Scalar(0));
  CHECK(empty.empty());

  Instance triangle = testutil::unit_triangle();
  auto both = bicenter::feasible_intervals(triangle, 2, 0, Scalar(5) / 4);
  REQUIRE(both.i1.has_value());
  REQUIRE(both.i2.has_value());
  CHECK(both.i1->lo == 0);
  CHECK(both.i1->hi == Scalar(1) / 4);
  CHECK(both.i2->lo == Scalar(3) / 4);
  CHECK(both.i2->hi == 1);
}

TEST_CASE("zero weight yields the canonical whole-edge form") {
  Instance path = testutil::build(
      4, {0, 1, 1, 1},
      {bicenter::Edge{0, 1, 1}, bicenter::Edge{1, 2, 1}, bicenter::Edge{2, 3, 1}},
      {{0, 3}, {1, 2}});
  auto whole = bicenter::feasible_intervals(path, 0, 2, Scalar(0));
  REQUIRE(whole.i1.has_value());
  CHECK(whole.i1->lo == 0);
  CHECK(whole.i1->hi == 1);
  CHECK(!whole.i2.has_value());
}

TEST_CASE("candidate values contain hand-derived intersections") {
  Instance path = testutil::unit_path();
  auto values = bicenter::candidate_values_graph(path);
  CHECK(std::is_sorted(values.begin(), values.end()));
  CHECK(std::adjacent_find(values.begin(), values.end()) == values.end());
  CHECK(std::binary_search(values.begin(), values.end(), Scalar(1) / 2));
  CHECK(std::binary_search(values.begin(), values.end(), Scalar(3) / 2));

  auto pair_values = bicenter::candidate_values_edge_pair(path, 0, 2);
  CHECK(std::binary_search(pair_values.begin(), pair_values.end(), Scalar(1) / 2));

  auto same_edge = bicenter::candidate_values_edge_pair(path, 1, 1);
  auto single = bicenter::candidate_values_edge(path, 1);
  single.push_back(Scalar(0));
  std::sort(single.begin(), single.end());
  single.erase(std::unique(single.begin(), single.end()), single.end());
  CHECK(same_edge == single);
}

TEST_CASE("edge functions agree with point_distance on random samples") {
  std::mt19937_64 rng(3);
  for (unsigned long long seed = 1; seed <= 5; ++seed) {
    Instance instance =
        testutil::random_instance(seed, 4, 7, bicenter::GraphKind::ConnectedGraph);
    std::uniform_int_distribution<int> vertex(0, instance.n() - 1);
    std::uniform_int_distribution<int> edge(0, instance.m() - 1);
    std::uniform_int_distribution<int> num(0, 16);
    for (int i = 0; i < 200; ++i) {
      int v = vertex(rng), e = edge(rng);
      Scalar t = instance.edge(e).length * num(rng) / 16;
      auto f = bicenter::distance_function(instance, v, e);
      Scalar direct = instance.weight(v) *
                      bicenter::vertex_point_distance(instance, v, EdgePoint{e, t});
      CHECK(f.value_at(t) == direct);
    }
  }
}

TEST_CASE("feasible_intervals equal the sublevel set on a sampling grid") {
  std::mt19937_64 rng(5);
  for (unsigned long long seed = 1; seed <= 5; ++seed) {
    Instance instance =
        testutil::random_instance(seed, 4, 7, bicenter::GraphKind::ConnectedGraph);
    std::uniform_int_distribution<int> vertex(0, instance.n() - 1);
    std::uniform_int_distribution<int> edge(0, instance.m() - 1);
    std::uniform_int_distribution<int> lam(0, 40);
    for (int i = 0; i < 100; ++i) {
      int v = vertex(rng), e = edge(rng);
      Scalar lambda = Scalar(lam(rng)) / 3;
      auto f = bicenter::distance_function(instance, v, e);
      auto intervals = bicenter::feasible_intervals(instance, v, e, lambda);
      std::vector<Scalar> grid;
      for (int g = 0; g <= 24; ++g) grid.push_back(instance.edge(e).length * g / 24);
      if (intervals.i1) {
        grid.push_back(intervals.i1->lo);
        grid.push_back(intervals.i1->hi);
      }
      if (intervals.i2) {
        grid.push_back(intervals.i2->lo);
        grid.push_back(intervals.i2->hi);
      }
      for (const Scalar& t : grid) {
        CHECK(intervals.contains(t) == (f.value_at(t) <= lambda));
      }
    }
  }
}

TEST_CASE("feasible_intervals grow with lambda") {
  std::mt19937_64 rng(9);
  for (unsigned long long seed = 1; seed <= 5; ++seed) {
    Instance instance = testutil::random_instance(seed, 4, 7, bicenter::GraphKind::Tree);
    std::uniform_int_distribution<int> vertex(0, instance.n() - 1);
    std::uniform_int_distribution<int> edge(0, instance.m() - 1);
    std::uniform_int_distribution<int> lam(0, 30);
    for (int i = 0; i < 100; ++i) {
      int v = vertex(rng), e = edge(rng);
      Scalar small = Scalar(lam(rng)) / 2;
      Scalar large = small + Scalar(lam(rng)) / 2;
      auto narrow = bicenter::feasible_intervals(instance, v, e, small);
      auto wide = bicenter::feasible_intervals(instance, v, e, large);
      auto subset = [](const std::optional<bicenter::Interval>& inner,
                       const FeasibleIntervals& outer) {
        if (!inner) return true;
        return outer.contains(inner->lo) && outer.contains(inner->hi);
      };
      CHECK(subset(narrow.i1, wide));
      CHECK(subset(narrow.i2, wide));
    }
  }
}

TEST_CASE("candidate_values_graph contains the oracle optimum") {
  for (unsigned long long seed = 1; seed <= 20; ++seed) {
    Instance raw =
        testutil::random_instance(seed, 4, 8, bicenter::GraphKind::ConnectedGraph);
    Instance instance = testutil::normalized(raw);
    Scalar best = bicenter::oracle_solve(instance);
    auto values = bicenter::candidate_values_graph(instance);
    CHECK(std::binary_search(values.begin(), values.end(), best));
  }
}
