#include "bicenter/piercing.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bicenter {

bool RectangleSet::hit_by(const Scalar& px, const Scalar& py) const {
  for (const CornerRectangle& r : rectangles) {
    if (r.contains(px, py)) return true;
  }
  return false;
}

LazyMinTree::LazyMinTree(std::vector<Scalar> keys) : keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  if (keys_.empty()) throw std::invalid_argument("LazyMinTree needs at least one key");
  min_.assign(4 * keys_.size(), 0);
  lazy_.assign(4 * keys_.size(), 0);
}

void LazyMinTree::push(int node) {
  if (lazy_[node] != 0) {
    for (int child : {2 * node, 2 * node + 1}) {
      lazy_[child] += lazy_[node];
      min_[child] += lazy_[node];
    }
    lazy_[node] = 0;
  }
}

void LazyMinTree::add(int node, int lo, int hi, int from, int to, long long c) {
  if (to < lo || hi < from) return;
  if (from <= lo && hi <= to) {
    min_[node] += c;
    lazy_[node] += c;
    return;
  }
  push(node);
  int mid = (lo + hi) / 2;
  add(2 * node, lo, mid, from, to, c);
  add(2 * node + 1, mid + 1, hi, from, to, c);
  min_[node] = std::min(min_[2 * node], min_[2 * node + 1]);
}

void LazyMinTree::range_add(const std::optional<RangeBound>& lo,
                            const std::optional<RangeBound>& hi, long long c) {
  const int count = static_cast<int>(keys_.size());
  int from = 0;
  int to = count - 1;
  if (lo) {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), lo->key);
    if (it == keys_.end() || *it != lo->key)
      throw std::invalid_argument("range_add: unknown lower boundary key");
    from = static_cast<int>(it - keys_.begin()) + (lo->closed ? 0 : 1);
  }
  if (hi) {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), hi->key);
    if (it == keys_.end() || *it != hi->key)
      throw std::invalid_argument("range_add: unknown upper boundary key");
    to = static_cast<int>(it - keys_.begin()) - (hi->closed ? 0 : 1);
  }
  if (from > to) return;
  add(1, 0, count - 1, from, to, c);
}

long long LazyMinTree::global_min() const { return min_[1]; }

int LazyMinTree::descend(int node, int lo, int hi) {
  if (lo == hi) return lo;
  push(node);
  int mid = (lo + hi) / 2;
  if (min_[2 * node] <= min_[2 * node + 1]) return descend(2 * node, lo, mid);
  return descend(2 * node + 1, mid + 1, hi);
}

const Scalar& LazyMinTree::min_key() {
  return keys_[descend(1, 0, static_cast<int>(keys_.size()) - 1)];
}

namespace {

void cross_product(const FeasibleIntervals& xs, const FeasibleIntervals& ys,
                   std::vector<CornerRectangle>& out) {
  for (const std::optional<Interval>& x : {xs.i1, xs.i2}) {
    if (!x) continue;
    for (const std::optional<Interval>& y : {ys.i1, ys.i2}) {
      if (!y) continue;
      out.push_back(CornerRectangle{*x, *y});
    }
  }
}

bool rect_contains_rect(const CornerRectangle& outer, const CornerRectangle& inner) {
  return outer.x.lo <= inner.x.lo && inner.x.hi <= outer.x.hi &&
         outer.y.lo <= inner.y.lo && inner.y.hi <= outer.y.hi;
}

}  // namespace

std::optional<RectangleSet> assemble_rectangle_set(
    int pair_index, const FeasibleIntervals& v_on_e1, const FeasibleIntervals& u_on_e2,
    const FeasibleIntervals& u_on_e1, const FeasibleIntervals& v_on_e2) {
  std::vector<CornerRectangle> rects;
  cross_product(v_on_e1, u_on_e2, rects);  // v covered from e1, u from e2
  cross_product(u_on_e1, v_on_e2, rects);  // the opposite orientation
  // Drop rectangles contained in another (the orientations may overlap).
  std::vector<CornerRectangle> kept;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < rects.size() && !dominated; ++j) {
      if (i == j) continue;
      if (rect_contains_rect(rects[j], rects[i]) &&
          !(j > i && rect_contains_rect(rects[i], rects[j]))) {
        dominated = true;
      }
    }
    if (!dominated) kept.push_back(rects[i]);
  }
  if (kept.empty()) return std::nullopt;
  return RectangleSet{pair_index, std::move(kept)};
}

std::optional<RectangleSet> build_rectangle_set(const Instance& instance, int pair_index,
                                                int e1, int e2, const Scalar& lambda) {
  auto [v, u] = instance.pairs().pairs[pair_index];
  return assemble_rectangle_set(pair_index,
                                feasible_intervals(instance, v, e1, lambda),
                                feasible_intervals(instance, u, e2, lambda),
                                feasible_intervals(instance, u, e1, lambda),
                                feasible_intervals(instance, v, e2, lambda));
}

namespace {

// A complement segment on the sweep line; interior ends are open.
struct Segment {
  Scalar lo;
  bool lo_closed;
  Scalar hi;
  bool hi_closed;
};

// Complement of the union of the active rectangles' y-intervals in
// [0, y_max]. at_event selects closed containment at x; otherwise the
// rectangle must span the open slab (x, next_x).
std::vector<Segment> complement_segments(const RectangleSet& set, const Box& box,
                                         const Scalar& x, const Scalar* next_x) {
  std::vector<Interval> covered;
  for (const CornerRectangle& r : set.rectangles) {
    bool active = next_x == nullptr ? (r.x.lo <= x && x <= r.x.hi)
                                    : (r.x.lo <= x && r.x.hi >= *next_x);
    if (active) covered.push_back(r.y);
  }
  std::sort(covered.begin(), covered.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (Interval& iv : covered) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      if (iv.hi > merged.back().hi) merged.back().hi = std::move(iv.hi);
    } else {
      merged.push_back(std::move(iv));
    }
  }

  std::vector<Segment> result;
  if (merged.empty()) {
    result.push_back(Segment{Scalar(0), true, box.y_max, true});
    return result;
  }
  if (merged.front().lo > 0)
    result.push_back(Segment{Scalar(0), true, merged.front().lo, false});
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    if (merged[i].hi < merged[i + 1].lo)
      result.push_back(Segment{merged[i].hi, false, merged[i + 1].lo, false});
  }
  if (merged.back().hi < box.y_max)
    result.push_back(Segment{merged.back().hi, false, box.y_max, true});
  return result;
}

void apply_segments(LazyMinTree& tree, const std::vector<Segment>& segments,
                    long long c) {
  for (const Segment& s : segments) {
    tree.range_add(RangeBound{s.lo, s.lo_closed}, RangeBound{s.hi, s.hi_closed}, c);
  }
}

void validate_sets(const Box& box, const std::vector<RectangleSet>& sets) {
  if (box.x_max <= 0 || box.y_max <= 0)
    throw std::invalid_argument("pierce: box must have positive extent");
  for (const RectangleSet& set : sets) {
    if (set.rectangles.empty())
      throw std::invalid_argument("pierce: empty rectangle set");
    for (const CornerRectangle& r : set.rectangles) {
      if (r.x.lo > r.x.hi || r.y.lo > r.y.hi || r.x.lo < 0 || r.y.lo < 0 ||
          r.x.hi > box.x_max || r.y.hi > box.y_max)
        throw std::invalid_argument("pierce: rectangle outside box");
      bool anchored = (r.x.lo == 0 || r.x.hi == box.x_max) &&
                      (r.y.lo == 0 || r.y.hi == box.y_max);
      if (!anchored)
        throw std::invalid_argument("pierce: rectangle not corner-anchored");
    }
  }
}

}  // namespace

std::optional<std::pair<Scalar, Scalar>> pierce(const Box& box,
                                                const std::vector<RectangleSet>& sets) {
  validate_sets(box, sets);
  if (sets.empty()) return std::make_pair(Scalar(0), Scalar(0));

  std::vector<Scalar> xs{Scalar(0), box.x_max};
  std::vector<Scalar> ys{Scalar(0), box.y_max};
  for (const RectangleSet& set : sets) {
    for (const CornerRectangle& r : set.rectangles) {
      xs.push_back(r.x.lo);
      xs.push_back(r.x.hi);
      ys.push_back(r.y.lo);
      ys.push_back(r.y.hi);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Sets whose vertical-line intersection changes at each event x.
  std::map<Scalar, std::vector<int>> touched_at;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (const CornerRectangle& r : sets[s].rectangles) {
      touched_at[r.x.lo].push_back(static_cast<int>(s));
      touched_at[r.x.hi].push_back(static_cast<int>(s));
    }
  }

  LazyMinTree tree(std::move(ys));
  std::vector<std::vector<Segment>> current(sets.size());
  std::vector<char> initialized(sets.size(), 0);

  for (std::size_t j = 0; j < xs.size(); ++j) {
    const Scalar& x = xs[j];
    std::vector<int> touched;
    if (j == 0) {
      touched.resize(sets.size());
      for (std::size_t s = 0; s < sets.size(); ++s) touched[s] = static_cast<int>(s);
    } else if (auto it = touched_at.find(x); it != touched_at.end()) {
      touched = it->second;
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    }

    for (int s : touched) {
      std::vector<Segment> at_event =
          complement_segments(sets[s], box, x, /*next_x=*/nullptr);
      if (initialized[s]) apply_segments(tree, current[s], -1);
      apply_segments(tree, at_event, +1);
      current[s] = std::move(at_event);
      initialized[s] = 1;
    }

    if (tree.global_min() == 0) return std::make_pair(x, tree.min_key());

    if (j + 1 < xs.size()) {
      const Scalar& next = xs[j + 1];
      for (int s : touched) {
        std::vector<Segment> in_slab = complement_segments(sets[s], box, x, &next);
        apply_segments(tree, current[s], -1);
        apply_segments(tree, in_slab, +1);
        current[s] = std::move(in_slab);
      }
    }
  }
  return std::nullopt;
}

}  // namespace bicenter
