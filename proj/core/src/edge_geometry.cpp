#include "bicenter/edge_geometry.hpp"

#include <algorithm>

namespace bicenter {

Scalar EdgeDistanceFunction::value_at(const Scalar& t) const {
  for (const LinearPiece& piece : pieces) {
    if (t >= piece.t_lo && t <= piece.t_hi) return piece.slope * t + piece.intercept;
  }
  // t outside [0, l]; extend the nearest piece.
  const LinearPiece& piece = t < pieces.front().t_lo ? pieces.front() : pieces.back();
  return piece.slope * t + piece.intercept;
}

bool FeasibleIntervals::contains(const Scalar& t) const {
  if (i1 && t >= i1->lo && t <= i1->hi) return true;
  if (i2 && t >= i2->lo && t <= i2->hi) return true;
  return false;
}

EdgeDistanceFunction distance_function(const Instance& instance, int v, int e) {
  const Edge& edge = instance.edge(e);
  const Scalar& w = instance.weight(v);
  Scalar d_alpha = instance.distance(v, edge.alpha());
  Scalar d_beta = instance.distance(v, edge.beta());
  const Scalar& l = edge.length;

  EdgeDistanceFunction f;
  f.vertex = v;
  f.edge = e;
  // Rising piece: w * (d_alpha + t); falling piece: w * (d_beta + l - t).
  Scalar semicircular = (d_beta + l - d_alpha) / 2;
  if (semicircular <= 0) {
    f.pieces.push_back(LinearPiece{-w, w * (d_beta + l), Scalar(0), l});
  } else if (semicircular >= l) {
    f.pieces.push_back(LinearPiece{w, w * d_alpha, Scalar(0), l});
  } else {
    f.pieces.push_back(LinearPiece{w, w * d_alpha, Scalar(0), semicircular});
    f.pieces.push_back(LinearPiece{-w, w * (d_beta + l), semicircular, l});
    f.breakpoint = semicircular;
  }
  return f;
}

FeasibleIntervals feasible_intervals(const Instance& instance, int v, int e,
                                     const Scalar& lambda) {
  const Edge& edge = instance.edge(e);
  const Scalar& l = edge.length;
  const Scalar& w = instance.weight(v);
  FeasibleIntervals result;
  if (w == 0) {
    result.i1 = Interval{Scalar(0), l};
    return result;
  }
  Scalar reach = lambda / w;
  Scalar a = reach - instance.distance(v, edge.alpha());  // f <= lambda on [0, a]
  Scalar b = instance.distance(v, edge.beta()) + l - reach;  // and on [b, l]
  bool has_alpha_side = a >= 0;
  bool has_beta_side = b <= l;
  bool whole_edge = (has_alpha_side && a >= l) || (has_beta_side && b <= 0) ||
                    (has_alpha_side && has_beta_side && b <= a);
  if (whole_edge) {
    result.i1 = Interval{Scalar(0), l};
    return result;
  }
  if (has_alpha_side) result.i1 = Interval{Scalar(0), std::move(a)};
  if (has_beta_side) result.i2 = Interval{std::move(b), l};
  return result;
}

namespace {

void append_edge_candidates(const Instance& instance, int e, std::vector<Scalar>& out) {
  std::vector<LinearPiece> pieces;
  for (int v = 0; v < instance.n(); ++v) {
    EdgeDistanceFunction f = distance_function(instance, v, e);
    for (LinearPiece& piece : f.pieces) {
      out.push_back(piece.slope * piece.t_lo + piece.intercept);
      out.push_back(piece.slope * piece.t_hi + piece.intercept);
      pieces.push_back(std::move(piece));
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i].slope == pieces[j].slope) continue;
      Scalar t = (pieces[j].intercept - pieces[i].intercept) /
                 (pieces[i].slope - pieces[j].slope);
      Scalar y = pieces[i].slope * t + pieces[i].intercept;
      if (y >= 0) out.push_back(std::move(y));
    }
  }
}

void sort_unique(std::vector<Scalar>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

}  // namespace

std::vector<Scalar> candidate_values_edge(const Instance& instance, int e) {
  std::vector<Scalar> values;
  values.push_back(Scalar(0));
  append_edge_candidates(instance, e, values);
  sort_unique(values);
  return values;
}

std::vector<Scalar> candidate_values_graph(const Instance& instance) {
  std::vector<Scalar> values;
  values.push_back(Scalar(0));
  for (int e = 0; e < instance.m(); ++e) append_edge_candidates(instance, e, values);
  sort_unique(values);
  return values;
}

std::vector<Scalar> candidate_values_edge_pair(const Instance& instance, int e1, int e2) {
  std::vector<Scalar> values;
  values.push_back(Scalar(0));
  append_edge_candidates(instance, e1, values);
  if (e2 != e1) append_edge_candidates(instance, e2, values);
  sort_unique(values);
  return values;
}

}  // namespace bicenter
