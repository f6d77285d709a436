#include <doctest.h>

#include <random>

#include "bicenter/oracle.hpp"
#include "bicenter/piercing.hpp"
#include "util.hpp"

using bicenter::Box;
using bicenter::CornerRectangle;
using bicenter::Interval;
using bicenter::LazyMinTree;
using bicenter::RangeBound;
using bicenter::RectangleSet;
using bicenter::Scalar;

namespace {

RectangleSet make_set(int index, std::vector<CornerRectangle> rects) {
  RectangleSet set;
  set.index = index;
  set.rectangles = std::move(rects);
  return set;
}

CornerRectangle rect(Scalar xlo, Scalar xhi, Scalar ylo, Scalar yhi) {
  return CornerRectangle{Interval{std::move(xlo), std::move(xhi)},
                         Interval{std::move(ylo), std::move(yhi)}};
}

}  // namespace

TEST_CASE("LazyMinTree range adds with open and closed ends") {
  LazyMinTree tree({Scalar(1), Scalar(2), Scalar(3)});
  CHECK(tree.global_min() == 0);

  tree.range_add(RangeBound{Scalar(1), true}, RangeBound{Scalar(2), true}, 1);
  CHECK(tree.global_min() == 0);
  CHECK(tree.min_key() == Scalar(3));

  tree.range_add(RangeBound{Scalar(3), true}, RangeBound{Scalar(3), true}, 1);
  CHECK(tree.global_min() == 1);

  LazyMinTree open_tree({Scalar(1), Scalar(2), Scalar(3)});
  open_tree.range_add(RangeBound{Scalar(1), false}, RangeBound{Scalar(3), false}, 1);
  CHECK(open_tree.global_min() == 0);
  CHECK(open_tree.min_key() == Scalar(1));
  open_tree.range_add(std::nullopt, RangeBound{Scalar(1), true}, 1);
  open_tree.range_add(RangeBound{Scalar(3), true}, std::nullopt, 1);
  CHECK(open_tree.global_min() == 1);  // every key covered exactly once

  CHECK_THROWS_AS(open_tree.range_add(RangeBound{Scalar(5), true}, std::nullopt, 1),
                  std::invalid_argument);
}

TEST_CASE("LazyMinTree replays against a naive array") {
  std::mt19937_64 rng(21);
  std::vector<Scalar> keys;
  for (int i = 0; i < 40; ++i) keys.push_back(Scalar(i) / 3);
  LazyMinTree tree(keys);
  std::vector<long long> naive(keys.size(), 0);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(keys.size()) - 1);
  std::uniform_int_distribution<int> coin(0, 1), add(-2, 3);
  for (int step = 0; step < 2000; ++step) {
    int a = idx(rng), b = idx(rng);
    if (a > b) std::swap(a, b);
    bool lo_closed = coin(rng), hi_closed = coin(rng);
    long long c = add(rng);
    std::optional<RangeBound> lo = RangeBound{keys[a], lo_closed};
    std::optional<RangeBound> hi = RangeBound{keys[b], hi_closed};
    if (coin(rng) == 0 && step % 7 == 0) lo.reset();
    if (coin(rng) == 0 && step % 11 == 0) hi.reset();
    tree.range_add(lo, hi, c);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      bool in_lo = !lo || keys[i] > lo->key || (lo->closed && keys[i] == lo->key);
      bool in_hi = !hi || keys[i] < hi->key || (hi->closed && keys[i] == hi->key);
      if (in_lo && in_hi) naive[i] += c;
    }
    long long expect = naive[0];
    for (long long v : naive) expect = std::min(expect, v);
    CHECK(tree.global_min() == expect);
  }
}

TEST_CASE("pierce handles the canonical examples") {
  Box unit{Scalar(1), Scalar(1)};

  auto whole = bicenter::pierce(unit, {make_set(0, {rect(0, 1, 0, 1)})});
  REQUIRE(whole.has_value());
  CHECK(whole->first == 0);
  CHECK(whole->second == 0);

  auto disjoint = bicenter::pierce(
      unit, {make_set(0, {rect(0, Scalar(2) / 5, 0, Scalar(2) / 5)}),
             make_set(1, {rect(Scalar(3) / 5, 1, Scalar(3) / 5, 1)})});
  CHECK(!disjoint.has_value());

  auto touching = bicenter::pierce(unit, {make_set(0, {rect(0, Scalar(1) / 2, 0, 1)}),
                                          make_set(1, {rect(Scalar(1) / 2, 1, 0, 1)})});
  REQUIRE(touching.has_value());
  CHECK(touching->first == Scalar(1) / 2);

  CHECK(bicenter::pierce(unit, {}).has_value());
  CHECK(bicenter::pierce(unit, {}) == std::make_pair(Scalar(0), Scalar(0)));
}

TEST_CASE("build_rectangle_set encodes both orientations") {
  auto path = testutil::unit_path();
  auto set = bicenter::build_rectangle_set(path, 0, 0, 2, Scalar(1) / 2);
  REQUIRE(set.has_value());
  REQUIRE(set->rectangles.size() == 1);
  const CornerRectangle& r = set->rectangles.front();
  CHECK(r.x.lo == 0);
  CHECK(r.x.hi == Scalar(1) / 2);
  CHECK(r.y.lo == Scalar(1) / 2);
  CHECK(r.y.hi == 1);

  auto infeasible = bicenter::build_rectangle_set(path, 0, 1, 1, Scalar(0));
  CHECK(!infeasible.has_value());

  auto generous = bicenter::build_rectangle_set(path, 0, 0, 2, Scalar(10));
  REQUIRE(generous.has_value());
  bool whole_box = false;
  for (const auto& rr : generous->rectangles)
    whole_box = whole_box || (rr.x.lo == 0 && rr.x.hi == 1 && rr.y.lo == 0 && rr.y.hi == 1);
  CHECK(whole_box);
}

TEST_CASE("pierce agrees with the brute-force oracle on random families") {
  std::mt19937_64 rng(17);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int iter = 0; iter < 300; ++iter) {
    Box box{Scalar(pick(1, 6)), Scalar(pick(1, 6))};
    std::vector<RectangleSet> sets;
    int k = pick(1, 6);
    for (int i = 0; i < k; ++i) {
      RectangleSet set;
      set.index = i;
      int count = pick(1, 4);
      for (int r = 0; r < count; ++r) {
        Scalar w = box.x_max * pick(1, 12) / 12;
        Scalar h = box.y_max * pick(1, 12) / 12;
        CornerRectangle cr;
        cr.x = pick(0, 1) ? Interval{Scalar(0), w} : Interval{box.x_max - w, box.x_max};
        cr.y = pick(0, 1) ? Interval{Scalar(0), h} : Interval{box.y_max - h, box.y_max};
        set.rectangles.push_back(cr);
      }
      sets.push_back(std::move(set));
    }
    auto got = bicenter::pierce(box, sets);
    auto want = bicenter::oracle_pierce(box, sets);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      for (const auto& set : sets) CHECK(set.hit_by(got->first, got->second));
    }
  }
}
