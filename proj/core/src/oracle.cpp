#include "bicenter/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "bicenter/edge_geometry.hpp"

namespace bicenter {
namespace {

std::vector<EdgePoint> enumerate_candidate_points(const Instance& instance) {
  std::vector<EdgePoint> points;
  for (int e = 0; e < instance.m(); ++e) {
    const Edge& edge = instance.edge(e);
    std::vector<Scalar> ts{Scalar(0), edge.length};
    std::vector<LinearPiece> pieces;
    for (int v = 0; v < instance.n(); ++v) {
      EdgeDistanceFunction f = distance_function(instance, v, e);
      if (f.breakpoint) ts.push_back(*f.breakpoint);
      for (LinearPiece& piece : f.pieces) pieces.push_back(std::move(piece));
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        if (pieces[i].slope == pieces[j].slope) continue;
        Scalar t = (pieces[j].intercept - pieces[i].intercept) /
                   (pieces[i].slope - pieces[j].slope);
        if (t >= 0 && t <= edge.length) ts.push_back(std::move(t));
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (Scalar& t : ts) points.push_back(EdgePoint{e, std::move(t)});
  }
  return points;
}

void check_size(const Instance& instance, int max_n) {
  if (instance.n() > max_n)
    throw std::invalid_argument("oracle: instance exceeds the size guard");
}

}  // namespace

Oracle::Oracle(const Instance& instance, int max_n) : instance_(instance) {
  check_size(instance, max_n);
  points_ = enumerate_candidate_points(instance);
  const int k = instance.k();
  weighted_.assign(points_.size(), std::vector<Scalar>(2 * k));
  for (std::size_t p = 0; p < points_.size(); ++p) {
    for (int i = 0; i < k; ++i) {
      auto [v, u] = instance.pairs().pairs[i];
      weighted_[p][2 * i] = instance.weight(v) * vertex_point_distance(instance, v, points_[p]);
      weighted_[p][2 * i + 1] =
          instance.weight(u) * vertex_point_distance(instance, u, points_[p]);
    }
  }
}

void Oracle::solve() {
  if (optimum_) return;
  const int k = instance_.k();
  if (k == 0) {
    optimum_ = Scalar(0);
    return;
  }
  std::optional<Scalar> best;
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a; b < points_.size(); ++b) {
      std::optional<Scalar> worst;
      bool pruned = false;
      for (int i = 0; i < k; ++i) {
        const Scalar& vq1 = weighted_[a][2 * i];
        const Scalar& vq2 = weighted_[b][2 * i];
        const Scalar& uq1 = weighted_[a][2 * i + 1];
        const Scalar& uq2 = weighted_[b][2 * i + 1];
        const Scalar& forward = vq1 > uq2 ? vq1 : uq2;
        const Scalar& backward = uq1 > vq2 ? uq1 : vq2;
        const Scalar& phi_i = forward < backward ? forward : backward;
        if (!worst || phi_i > *worst) worst = phi_i;
        if (best && *worst > *best) {
          pruned = true;
          break;
        }
      }
      if (pruned) continue;
      if (!best || *worst < *best) best = *worst;
    }
  }
  optimum_ = std::move(*best);
}

const Scalar& Oracle::optimum() {
  solve();
  return *optimum_;
}

bool Oracle::feasible(const Scalar& lambda) { return optimum() <= lambda; }

const std::vector<std::pair<EdgePoint, EdgePoint>>& Oracle::optimal_placements() {
  solve();
  if (!placements_.empty()) return placements_;
  const int k = instance_.k();
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a; b < points_.size(); ++b) {
      std::optional<Scalar> worst;
      bool over = false;
      for (int i = 0; i < k && !over; ++i) {
        const Scalar& vq1 = weighted_[a][2 * i];
        const Scalar& vq2 = weighted_[b][2 * i];
        const Scalar& uq1 = weighted_[a][2 * i + 1];
        const Scalar& uq2 = weighted_[b][2 * i + 1];
        const Scalar& forward = vq1 > uq2 ? vq1 : uq2;
        const Scalar& backward = uq1 > vq2 ? uq1 : vq2;
        const Scalar& phi_i = forward < backward ? forward : backward;
        if (!worst || phi_i > *worst) worst = phi_i;
        over = *worst > *optimum_;
      }
      if (!over && (worst ? *worst : Scalar(0)) == *optimum_) {
        placements_.emplace_back(points_[a], points_[b]);
      }
      if (k == 0) placements_.emplace_back(points_[a], points_[b]);
    }
  }
  return placements_;
}

Scalar oracle_solve(const Instance& instance, int max_n) {
  Oracle oracle(instance, max_n);
  return oracle.optimum();
}

bool oracle_feasible(const Instance& instance, const Scalar& lambda, int max_n) {
  Oracle oracle(instance, max_n);
  return oracle.feasible(lambda);
}

Scalar oracle_solve_by_assignments(const Instance& instance, int max_n) {
  check_size(instance, max_n);
  const int k = instance.k();
  if (k > 16) throw std::runtime_error("oracle: too many pairs for assignment enumeration");
  std::vector<EdgePoint> points = enumerate_candidate_points(instance);

  auto one_center = [&](const std::vector<int>& vertices) {
    // Smallest max weighted distance over the candidate points.
    std::optional<Scalar> best;
    for (const EdgePoint& p : points) {
      Scalar worst(0);
      for (int v : vertices) {
        Scalar d = instance.weight(v) * vertex_point_distance(instance, v, p);
        if (d > worst) worst = std::move(d);
      }
      if (!best || worst < *best) best = std::move(worst);
    }
    return best ? *best : Scalar(0);
  };

  std::optional<Scalar> best;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> red, blue;
    for (int i = 0; i < k; ++i) {
      auto [v, u] = instance.pairs().pairs[i];
      if (mask & (1u << i)) {
        red.push_back(v);
        blue.push_back(u);
      } else {
        red.push_back(u);
        blue.push_back(v);
      }
    }
    Scalar value = std::max(one_center(red), one_center(blue));
    if (!best || value < *best) best = std::move(value);
  }
  return best ? *best : Scalar(0);
}

std::optional<std::pair<Scalar, Scalar>> oracle_pierce(
    const Box& box, const std::vector<RectangleSet>& sets) {
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
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (const Scalar& x : xs) {
    for (const Scalar& y : ys) {
      bool all = true;
      for (const RectangleSet& set : sets) {
        if (!set.hit_by(x, y)) {
          all = false;
          break;
        }
      }
      if (all) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

}  // namespace bicenter
