#include "bicenter/tree_solver.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <utility>

#include "bicenter/edge_geometry.hpp"

namespace bicenter {

namespace {

void require_tree(const Instance& instance, const char* who) {
  if (!instance.is_tree())
    throw std::invalid_argument(std::string(who) + ": tree instance required");
}

// BFS rooting with parents, discovery order, and distances from the source.
struct TreeBfs {
  int source = 0;
  std::vector<int> parent, parent_edge, order;
  std::vector<Scalar> dist;
};

TreeBfs tree_bfs(const Instance& instance, int source) {
  const int n = instance.n();
  TreeBfs out;
  out.source = source;
  out.parent.assign(n, -1);
  out.parent_edge.assign(n, -1);
  out.dist.assign(n, Scalar(0));
  out.order.reserve(n);
  std::vector<char> seen(n, 0);
  std::deque<int> queue{source};
  seen[source] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    out.order.push_back(v);
    for (int e : instance.graph().adjacency[v]) {
      const Edge& edge = instance.edge(e);
      int o = edge.u == v ? edge.v : edge.u;
      if (seen[o]) continue;
      seen[o] = 1;
      out.parent[o] = v;
      out.parent_edge[o] = e;
      out.dist[o] = out.dist[v] + edge.length;
      queue.push_back(o);
    }
  }
  return out;
}

// Point at the given distance from the BFS source along the tree path to dst.
EdgePoint path_point(const Instance& instance, const TreeBfs& bfs, int dst,
                     const Scalar& target) {
  if (target == 0 || dst == bfs.source) return vertex_point(instance, bfs.source);
  std::vector<int> vertices{dst};
  while (vertices.back() != bfs.source) vertices.push_back(bfs.parent[vertices.back()]);
  std::reverse(vertices.begin(), vertices.end());
  Scalar walked(0);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    int near = vertices[i];
    int far = vertices[i + 1];
    int e = bfs.parent_edge[far];
    const Edge& edge = instance.edge(e);
    if (walked + edge.length >= target) {
      Scalar off = target - walked;
      return EdgePoint{e, edge.alpha() == near ? off : edge.length - off};
    }
    walked += edge.length;
  }
  return vertex_point(instance, dst);
}

// Greedy single-center placement pass: walk children-before-parents, keep the
// coverage slack z(u), and place a center on the parent edge once the slack
// cannot cross it. Returns the center and the cut vertex, or nothing when a
// point at the pass root covers everything it is responsible for.
struct PlacePass {
  std::optional<EdgePoint> center;
  int cut = -1;
  // Final slack at the pass root when no center was forced: any point within
  // this distance of the root (away from the constrained subtrees) covers
  // everything the pass was responsible for. Absent means unconstrained.
  std::optional<Scalar> root_slack;
};

template <typename CapFn>
PlacePass greedy_place(const Instance& instance, const std::vector<int>& order,
                       const std::vector<int>& parent,
                       const std::vector<int>& parent_edge, int root, CapFn cap_of) {
  const int n = instance.n();
  std::vector<std::optional<Scalar>> z(n);
  std::vector<char> ready(n, 0);
  PlacePass out;
  for (int u : order) {
    std::optional<Scalar> zu = cap_of(u);
    if (ready[u] && z[u] && (!zu || *z[u] < *zu)) zu = z[u];
    if (u == root) {
      out.root_slack = std::move(zu);
      continue;
    }
    if (!zu) continue;
    const Edge& pe = instance.edge(parent_edge[u]);
    Scalar slack = *zu - pe.length;
    if (slack <= 0) {
      Scalar t = pe.alpha() == u ? *zu : pe.length - *zu;
      return PlacePass{EdgePoint{parent_edge[u], std::move(t)}, u};
    }
    int p = parent[u];
    if (!ready[p] || !z[p] || slack < *z[p]) {
      z[p] = std::move(slack);
      ready[p] = 1;
    }
  }
  return out;
}

}  // namespace

RootedTree RootedTree::build(const Instance& instance, int root) {
  require_tree(instance, "RootedTree::build");
  const int n = instance.n();
  RootedTree out;
  out.root = root;
  out.parent.assign(n, -1);
  out.parent_edge.assign(n, -1);
  out.children.assign(n, {});
  TreeBfs bfs = tree_bfs(instance, root);
  out.parent = bfs.parent;
  out.parent_edge = bfs.parent_edge;
  for (int v : bfs.order) {
    if (out.parent[v] >= 0) out.children[out.parent[v]].push_back(v);
  }
  out.postorder.assign(bfs.order.rbegin(), bfs.order.rend());
  return out;
}

std::optional<std::pair<EdgePoint, EdgePoint>> feasibility_tree(const Instance& instance,
                                                                const Scalar& lambda) {
  require_tree(instance, "feasibility_tree");
  if (instance.m() == 0)
    throw std::invalid_argument("feasibility_tree: needs at least one edge");
  if (lambda < 0) return std::nullopt;

  const int n = instance.n();
  int root = 0;
  for (int v = 0; v < n; ++v) {
    if (instance.graph().adjacency[v].size() == 1) {
      root = v;
      break;
    }
  }
  RootedTree rt = RootedTree::build(instance, root);
  std::vector<int> order = rt.postorder;

  auto cap1 = [&](int v) -> std::optional<Scalar> {
    if (instance.weight(v) == 0) return std::nullopt;
    return lambda / instance.weight(v);
  };
  PlacePass first = greedy_place(instance, order, rt.parent, rt.parent_edge, root, cap1);

  std::vector<std::pair<EdgePoint, EdgePoint>> attempts;
  if (!first.center) {
    EdgePoint p = vertex_point(instance, root);
    attempts.emplace_back(p, p);
  } else {
    const EdgePoint& q1 = *first.center;
    // Mark the subtree covered by q1.
    std::vector<char> covered_side(n, 0);
    std::vector<int> stack{first.cut};
    covered_side[first.cut] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int c : rt.children[v]) {
        covered_side[c] = 1;
        stack.push_back(c);
      }
    }
    int root2 = rt.parent[first.cut];
    // Restricted BFS rooting of the remaining tree.
    std::vector<int> parent2(n, -1), parent_edge2(n, -1), order2;
    {
      std::vector<char> seen(n, 0);
      std::deque<int> queue{root2};
      seen[root2] = 1;
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        order2.push_back(v);
        for (int e : instance.graph().adjacency[v]) {
          const Edge& edge = instance.edge(e);
          int o = edge.u == v ? edge.v : edge.u;
          if (seen[o] || covered_side[o]) continue;
          seen[o] = 1;
          parent2[o] = v;
          parent_edge2[o] = e;
          queue.push_back(o);
        }
      }
      std::reverse(order2.begin(), order2.end());
    }
    auto cap2 = [&](int v) -> std::optional<Scalar> {
      if (instance.weight(v) == 0) return std::nullopt;
      if (instance.weight(v) * vertex_point_distance(instance, v, q1) <= lambda)
        return std::nullopt;
      return lambda / instance.weight(v);
    };
    PlacePass second =
        greedy_place(instance, order2, parent2, parent_edge2, root2, cap2);
    if (second.center) {
      attempts.emplace_back(q1, *second.center);
    } else {
      // Nothing pinned the second center. Slide it from root2 toward q1 as
      // far as the remaining coverage slack allows: every pair-split ball
      // that contains q1 and any valid second center contains this point.
      if (second.root_slack) {
        const Edge& cut_edge = instance.edge(rt.parent_edge[first.cut]);
        Scalar from_beta =
            *second.root_slack < cut_edge.length ? *second.root_slack : cut_edge.length;
        Scalar t = cut_edge.alpha() == root2 ? from_beta : cut_edge.length - from_beta;
        attempts.emplace_back(q1, EdgePoint{rt.parent_edge[first.cut], std::move(t)});
      }
      attempts.emplace_back(q1, vertex_point(instance, root2));
      attempts.emplace_back(q1, q1);
    }
  }

  for (auto& [q1, q2] : attempts) {
    if (objective(instance, q1, q2) <= lambda) return std::make_pair(q1, q2);
  }
  return std::nullopt;
}

namespace {

// Edge subset forming a connected subtree, tracked during the phase-1 search.
struct Region {
  std::vector<char> edge_in;
  int count = 0;
  std::optional<int> resolved;

  static Region whole(const Instance& instance) {
    Region r;
    r.edge_in.assign(instance.m(), 1);
    r.count = instance.m();
    if (r.count == 1) r.resolved = 0;
    return r;
  }
};

int region_centroid(const Instance& instance, const Region& region) {
  const int n = instance.n();
  std::vector<char> in_region(n, 0);
  for (int e = 0; e < instance.m(); ++e) {
    if (!region.edge_in[e]) continue;
    in_region[instance.edge(e).u] = 1;
    in_region[instance.edge(e).v] = 1;
  }
  int root = -1, total = 0;
  for (int v = 0; v < n; ++v) {
    if (in_region[v]) {
      ++total;
      if (root < 0) root = v;
    }
  }
  // Restricted BFS order + subtree sizes.
  std::vector<int> parent(n, -1), order;
  {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (int e : instance.graph().adjacency[v]) {
        if (!region.edge_in[e]) continue;
        const Edge& edge = instance.edge(e);
        int o = edge.u == v ? edge.v : edge.u;
        if (seen[o]) continue;
        seen[o] = 1;
        parent[o] = v;
        queue.push_back(o);
      }
    }
  }
  std::vector<int> size(n, 0), heaviest(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    ++size[v];
    if (parent[v] >= 0) {
      size[parent[v]] += size[v];
      heaviest[parent[v]] = std::max(heaviest[parent[v]], size[v]);
    }
  }
  int best = -1, best_cost = 0;
  for (int v : order) {
    int cost = std::max(heaviest[v], total - size[v]);
    if (best < 0 || cost < best_cost || (cost == best_cost && v < best)) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

}  // namespace

int centroid(const Instance& instance) {
  require_tree(instance, "centroid");
  if (instance.m() == 0) return 0;
  return region_centroid(instance, Region::whole(instance));
}

bool HangingSubtree::contains_point(const Instance& instance, const EdgePoint& p) const {
  for (int e : edges) {
    if (e == p.edge) return true;
  }
  if (partial_edge && *partial_edge == p.edge && *partial_lo <= p.t && p.t <= *partial_hi)
    return true;
  return same_point(instance, p, anchor);
}

HangingSubtreeReport locate_center_subtrees(const Instance& instance,
                                            const QueryPoint& query) {
  require_tree(instance, "locate_center_subtrees");
  const int n = instance.n();
  if (instance.m() == 0)
    throw std::invalid_argument("locate_center_subtrees: needs at least one edge");

  // Canonicalize endpoint-coincident interior queries into vertex queries.
  int query_vertex = -1;
  EdgePoint anchor;
  if (query.vertex) {
    query_vertex = *query.vertex;
    anchor = vertex_point(instance, query_vertex);
  } else if (query.point) {
    anchor = *query.point;
    const Edge& e = instance.edge(anchor.edge);
    if (anchor.t == 0)
      query_vertex = e.alpha();
    else if (anchor.t == e.length)
      query_vertex = e.beta();
  } else {
    throw std::invalid_argument("locate_center_subtrees: empty query");
  }

  std::vector<HangingSubtree> subs;
  std::vector<int> side(n, -1);
  std::vector<Scalar> wdist(n, Scalar(0));
  std::vector<char> seen(n, 0);

  auto explore = [&](HangingSubtree& h, int start, Scalar start_dist, int start_edge) {
    std::vector<Scalar> dist(n);
    std::deque<int> queue;
    if (!seen[start]) {
      seen[start] = 1;
      side[start] = static_cast<int>(subs.size());
      dist[start] = std::move(start_dist);
      if (start_edge >= 0) h.edges.push_back(start_edge);
      queue.push_back(start);
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      h.vertices.push_back(v);
      wdist[v] = instance.weight(v) * dist[v];
      if (h.tau < wdist[v]) h.tau = wdist[v];
      for (int e : instance.graph().adjacency[v]) {
        if (!query.vertex && e == anchor.edge) continue;  // never cross the query point
        const Edge& edge = instance.edge(e);
        int o = edge.u == v ? edge.v : edge.u;
        if (seen[o]) continue;
        seen[o] = 1;
        side[o] = static_cast<int>(subs.size());
        dist[o] = dist[v] + edge.length;
        h.edges.push_back(e);
        queue.push_back(o);
      }
    }
  };

  if (query_vertex >= 0) {
    seen[query_vertex] = 1;
    for (int e : instance.graph().adjacency[query_vertex]) {
      const Edge& edge = instance.edge(e);
      int b = edge.u == query_vertex ? edge.v : edge.u;
      if (seen[b]) continue;
      HangingSubtree h;
      h.tau = Scalar(0);
      h.anchor = anchor;
      explore(h, b, edge.length, e);
      subs.push_back(std::move(h));
    }
  } else {
    const Edge& e = instance.edge(anchor.edge);
    HangingSubtree ha;
    ha.tau = Scalar(0);
    ha.anchor = anchor;
    ha.partial_edge = anchor.edge;
    ha.partial_lo = Scalar(0);
    ha.partial_hi = anchor.t;
    explore(ha, e.alpha(), anchor.t, -1);
    subs.push_back(std::move(ha));
    HangingSubtree hb;
    hb.tau = Scalar(0);
    hb.anchor = anchor;
    hb.partial_edge = anchor.edge;
    hb.partial_lo = anchor.t;
    hb.partial_hi = e.length;
    explore(hb, e.beta(), e.length - anchor.t, -1);
    subs.push_back(std::move(hb));
  }

  const int s = static_cast<int>(subs.size());
  std::vector<int> by_tau(s);
  for (int i = 0; i < s; ++i) by_tau[i] = i;
  std::stable_sort(by_tau.begin(), by_tau.end(),
                   [&subs](int a, int b) { return subs[a].tau > subs[b].tau; });
  std::vector<int> rank(s);
  for (int i = 0; i < s; ++i) rank[by_tau[i]] = i;

  HangingSubtreeReport report;
  report.subtrees.reserve(s);
  for (int i = 0; i < s; ++i) report.subtrees.push_back(std::move(subs[by_tau[i]]));
  std::vector<int> side_rank(n, -1);
  for (int v = 0; v < n; ++v) {
    if (side[v] >= 0) side_rank[v] = rank[side[v]];
  }

  // True when some pair lies entirely in the subtree of the given rank and the
  // nearer of its two members is exactly at weighted distance tau.
  auto pair_pinned = [&](int r, const Scalar& tau) {
    for (auto [a, b] : instance.pairs().pairs) {
      if (side_rank[a] != r || side_rank[b] != r) continue;
      const Scalar& lower = wdist[a] < wdist[b] ? wdist[a] : wdist[b];
      if (lower == tau) return true;
    }
    return false;
  };

  if (s == 1) {
    report.case_label = "single";
    report.first_center = 0;
    report.second_center = 0;
    report.second_includes_query = true;
    return report;
  }

  const Scalar& t1 = report.subtrees[0].tau;
  const Scalar& t2 = report.subtrees[1].tau;
  const bool tied_third = s >= 3 && report.subtrees[2].tau == t2;

  if (t1 > t2) {
    if (tied_third) {
      if (feasibility_tree(instance, t2)) {
        report.case_label = "t1>t2=t3:resolved";
        report.verdict = t2;
      } else {
        report.case_label = "t1>t2=t3:T1,T1+q";
        report.first_center = 0;
        report.second_center = 0;
        report.second_includes_query = true;
      }
    } else if (pair_pinned(0, t1)) {
      report.case_label = "t1>t2>t3:pair-in-T1";
      report.first_center = 0;
      report.second_center = 0;
    } else if (pair_pinned(1, t2)) {
      report.case_label = "t1>t2>t3:pair-in-T2";
      report.first_center = 0;
      report.second_center = 0;
    } else if (feasibility_tree(instance, t2)) {
      report.case_label = "t1>t2>t3:T1,T2+q";
      report.first_center = 0;
      report.second_center = 1;
      report.second_includes_query = true;
    } else {
      report.case_label = "t1>t2>t3:both-T1";
      report.first_center = 0;
      report.second_center = 0;
    }
  } else {  // t1 == t2
    if (tied_third) {
      report.case_label = "t1=t2=t3:resolved";
      report.verdict = t1;
    } else if (pair_pinned(0, t1) || pair_pinned(1, t2)) {
      report.case_label = "t1=t2>t3:resolved";
      report.verdict = t1;
    } else {
      report.case_label = "t1=t2>t3:T1,T2";
      report.first_center = 0;
      report.second_center = 1;
    }
  }
  return report;
}

namespace {

// ---- Phase 2: exact search over the candidate values of two edges. ----

struct SearchOutcome {
  Scalar lambda;
  EdgePoint q1, q2;
};

// Candidate objective values on one edge restricted to (lo, hi]: values of
// piece endpoints plus y-coordinates of crossings between extended pieces.
// Crossings inside the window are exactly the pairs of lines whose t-order
// at level y=lo differs from the order at y=hi, enumerated via merge-sort
// inversion counting so the cost is near-linear when the window is narrow.
struct CandidateOverflow {};

void merge_inversions(std::vector<int>& a, std::vector<int>& tmp, int lo, int hi,
                      const std::vector<Scalar>& key,
                      std::vector<std::pair<int, int>>& out, std::size_t cap) {
  if (hi - lo <= 1) return;
  int mid = (lo + hi) / 2;
  merge_inversions(a, tmp, lo, mid, key, out, cap);
  merge_inversions(a, tmp, mid, hi, key, out, cap);
  int i = lo, j = mid, w = lo;
  while (i < mid && j < hi) {
    if (key[a[j]] <= key[a[i]]) {
      for (int x = i; x < mid; ++x) {
        out.emplace_back(a[x], a[j]);
        if (out.size() > cap) throw CandidateOverflow{};
      }
      tmp[w++] = a[j++];
    } else {
      tmp[w++] = a[i++];
    }
  }
  while (i < mid) tmp[w++] = a[i++];
  while (j < hi) tmp[w++] = a[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
}

void bracket_candidates_edge(const Instance& instance, int e, const Scalar& lo,
                             const Scalar& hi, std::vector<Scalar>& out) {
  const Edge& edge = instance.edge(e);
  const int n = instance.n();
  std::vector<Scalar> slope, inter;
  slope.reserve(2 * n);
  inter.reserve(2 * n);
  auto keep = [&](Scalar y) {
    if (lo < y && y <= hi) out.push_back(std::move(y));
  };
  for (int v = 0; v < n; ++v) {
    const Scalar& w = instance.weight(v);
    if (w == 0) continue;
    Scalar da = instance.distance(v, edge.alpha());
    Scalar db = instance.distance(v, edge.beta());
    keep(w * (da < db + edge.length ? da : db + edge.length));
    keep(w * (da + edge.length < db ? da + edge.length : db));
    Scalar bp = (db + edge.length - da) / 2;
    if (bp > 0 && bp < edge.length) keep(w * (da + bp));
    slope.push_back(w);
    inter.push_back(w * da);
    slope.push_back(-w);
    inter.push_back(w * (db + edge.length));
  }
  const int lines = static_cast<int>(slope.size());
  if (lines < 2) return;
  std::vector<Scalar> t_lo(lines), t_hi(lines);
  for (int i = 0; i < lines; ++i) {
    t_lo[i] = (lo - inter[i]) / slope[i];
    t_hi[i] = (hi - inter[i]) / slope[i];
  }
  std::vector<int> order(lines);
  for (int i = 0; i < lines; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (t_lo[a] != t_lo[b]) return t_lo[a] < t_lo[b];
    return t_hi[a] < t_hi[b];
  });
  std::vector<int> tmp(lines);
  std::vector<std::pair<int, int>> crossings;
  merge_inversions(order, tmp, 0, lines, t_hi, crossings, 2'000'000);
  for (auto [i, j] : crossings) {
    if (slope[i] == slope[j]) continue;
    keep((slope[i] * inter[j] - slope[j] * inter[i]) / (slope[i] - slope[j]));
  }
}

// Smallest feasible value among sorted candidates; `hi_witness` certifies the
// last entry. Returns that value with a witness placement.
SearchOutcome lowest_feasible(const Instance& instance, std::vector<Scalar> values,
                              std::pair<EdgePoint, EdgePoint> hi_witness) {
  int lo = 0, hi = static_cast<int>(values.size()) - 1;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (auto w = feasibility_tree(instance, values[mid])) {
      hi = mid;
      hi_witness = *w;
    } else {
      lo = mid + 1;
    }
  }
  return SearchOutcome{values[hi], hi_witness.first, hi_witness.second};
}

SearchOutcome search_on_edge_pair(const Instance& instance, int e1, int e2,
                                  const Scalar& upper,
                                  std::pair<EdgePoint, EdgePoint> upper_witness,
                                  bool scale_mode) {
  if (auto w0 = feasibility_tree(instance, Scalar(0)))
    return SearchOutcome{Scalar(0), w0->first, w0->second};

  std::vector<Scalar> values;
  Scalar floor(0);
  Scalar ceiling = upper;
  if (scale_mode) {
    // Exact dyadic bisection first: narrows the window so that the crossing
    // enumeration below only sees a handful of survivors.
    for (int it = 0; it < 48 && floor < ceiling; ++it) {
      Scalar mid = (floor + ceiling) / 2;
      if (auto w = feasibility_tree(instance, mid)) {
        ceiling = mid;
        upper_witness = *w;
      } else {
        floor = mid;
      }
    }
    try {
      bracket_candidates_edge(instance, e1, floor, ceiling, values);
      if (e2 != e1) bracket_candidates_edge(instance, e2, floor, ceiling, values);
    } catch (const CandidateOverflow&) {
      values = candidate_values_edge_pair(instance, e1, e2);
    }
  } else {
    values = candidate_values_edge_pair(instance, e1, e2);
  }
  std::erase_if(values, [&](const Scalar& y) { return y <= floor || y > ceiling; });
  values.push_back(ceiling);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return lowest_feasible(instance, std::move(values), std::move(upper_witness));
}

// Narrow an unresolved region to its overlap with a designated hanging
// subtree. Falls back to the whole designated subtree when the overlap is
// just the query point and the query point is outside the region.
void narrow_region(const Instance& instance, Region& region, const HangingSubtree& sub,
                   int query_vertex) {
  if (region.resolved) return;
  Region next;
  next.edge_in.assign(instance.m(), 0);
  for (int e : sub.edges) {
    if (region.edge_in[e]) {
      next.edge_in[e] = 1;
      ++next.count;
    }
  }
  if (next.count == 0) {
    int at_query = -1;
    for (int e : instance.graph().adjacency[query_vertex]) {
      if (region.edge_in[e] && (at_query < 0 || e < at_query)) at_query = e;
    }
    if (at_query >= 0) {
      region.resolved = at_query;  // the region collapses onto the query point
      return;
    }
    next.edge_in.assign(instance.m(), 0);
    next.count = 0;
    for (int e : sub.edges) {
      next.edge_in[e] = 1;
      ++next.count;
    }
  }
  region = std::move(next);
  if (region.count == 1) {
    for (int e = 0; e < instance.m(); ++e) {
      if (region.edge_in[e]) region.resolved = e;
    }
  }
}

int overlap_size(const Region& region, const HangingSubtree& sub) {
  int count = 0;
  for (int e : sub.edges) {
    if (region.edge_in[e]) ++count;
  }
  return count;
}

}  // namespace

TreeSolveDetail solve_tree_weighted_detail(const Instance& instance) {
  require_tree(instance, "solve_tree_weighted_detail");
  if (!instance.fully_paired())
    throw ValidationError("solve_tree_weighted_detail: normalized instance required");
  if (instance.m() == 0)
    throw std::invalid_argument("solve_tree_weighted_detail: needs at least one edge");

  // Phase 1: shrink two regions until each pins down one edge.
  Region r1 = Region::whole(instance);
  Region r2 = r1;
  std::optional<Scalar> verdict;
  for (int round = 0; round < 100 && (!r1.resolved || !r2.resolved); ++round) {
    Region& target = (!r1.resolved && (r2.resolved || r1.count >= r2.count)) ? r1 : r2;
    int c = region_centroid(instance, target);
    HangingSubtreeReport report =
        locate_center_subtrees(instance, QueryPoint::at_vertex(c));
    if (report.verdict) {
      verdict = *report.verdict;
      break;
    }
    const HangingSubtree& da = report.subtrees[*report.first_center];
    const HangingSubtree& db = report.subtrees[*report.second_center];
    // Pair designations with regions so both overlaps stay as large as
    // possible; centers are interchangeable, so either pairing is sound.
    int straight = std::min(overlap_size(r1, da), overlap_size(r2, db));
    int swapped = std::min(overlap_size(r1, db), overlap_size(r2, da));
    if (straight >= swapped) {
      narrow_region(instance, r1, da, c);
      narrow_region(instance, r2, db, c);
    } else {
      narrow_region(instance, r1, db, c);
      narrow_region(instance, r2, da, c);
    }
  }
  if (!verdict && (!r1.resolved || !r2.resolved))
    throw std::runtime_error("solve_tree_weighted: region search did not converge");

  TreeSolveDetail out;
  if (verdict) {
    auto witness = feasibility_tree(instance, *verdict);
    if (!witness)
      throw std::runtime_error("solve_tree_weighted: resolved value is infeasible");
    out.solution.lambda = *verdict;
    out.solution.q1 = witness->first;
    out.solution.q2 = witness->second;
    out.solution.assign_first_to_q1 =
        recover_assignment(instance, witness->first, witness->second);
    out.located_edge1 = witness->first.edge;
    out.located_edge2 = witness->second.edge;
    return out;
  }

  int e1 = *r1.resolved;
  int e2 = *r2.resolved;
  EdgePoint anywhere = vertex_point(instance, region_centroid(instance, Region::whole(instance)));
  Scalar upper = objective(instance, anywhere, anywhere);
  const bool scale_mode = instance.n() > 400;
  SearchOutcome best =
      search_on_edge_pair(instance, e1, e2, upper, {anywhere, anywhere}, scale_mode);

  // Safety net: if the witness sits on other edges, their candidate values may
  // refine the optimum; repeat until stable.
  for (int iter = 0; iter < 6; ++iter) {
    int w1 = best.q1.edge, w2 = best.q2.edge;
    bool same = (w1 == e1 && w2 == e2) || (w1 == e2 && w2 == e1);
    if (same) break;
    SearchOutcome refined =
        search_on_edge_pair(instance, w1, w2, best.lambda, {best.q1, best.q2}, scale_mode);
    if (refined.lambda < best.lambda) {
      best = refined;
      e1 = w1;
      e2 = w2;
    } else {
      break;
    }
  }

  out.solution.lambda = best.lambda;
  out.solution.q1 = best.q1;
  out.solution.q2 = best.q2;
  out.solution.assign_first_to_q1 = recover_assignment(instance, best.q1, best.q2);
  out.located_edge1 = e1;
  out.located_edge2 = e2;
  return out;
}

Solution solve_tree_weighted(const Instance& instance) {
  require_tree(instance, "solve_tree_weighted");
  if (instance.fully_paired()) return solve_tree_weighted_detail(instance).solution;
  Instance normalized = normalize(instance);
  Solution s = solve_tree_weighted_detail(normalized).solution;
  // Normalization may append one helper vertex on a fresh edge; a center
  // there can slide to vertex 0 without moving away from any real vertex.
  auto remap = [&](EdgePoint& q) {
    if (q.edge >= instance.m()) q = vertex_point(instance, 0);
  };
  remap(s.q1);
  remap(s.q2);
  s.assign_first_to_q1.resize(instance.k());
  return s;
}

PrunedTree prune_unpaired_leaves(const Instance& instance) {
  require_tree(instance, "prune_unpaired_leaves");
  const int n = instance.n();
  std::vector<char> paired(n, 0);
  for (auto [a, b] : instance.pairs().pairs) paired[a] = paired[b] = 1;

  std::vector<char> alive(n, 1);
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v)
    degree[v] = static_cast<int>(instance.graph().adjacency[v].size());

  if (instance.k() > 0) {
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
      if (!paired[v] && degree[v] <= 1) queue.push_back(v);
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (!alive[v]) continue;
      alive[v] = 0;
      for (int e : instance.graph().adjacency[v]) {
        const Edge& edge = instance.edge(e);
        int o = edge.u == v ? edge.v : edge.u;
        if (!alive[o]) continue;
        if (--degree[o] <= 1 && !paired[o]) queue.push_back(o);
      }
    }
  }

  PrunedTree out;
  out.old_to_new.assign(n, -1);
  GraphDescription graph;
  for (int v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    out.old_to_new[v] = static_cast<int>(out.vertex_to_old.size());
    out.vertex_to_old.push_back(v);
    graph.weights.push_back(instance.weight(v));
  }
  graph.n = static_cast<int>(out.vertex_to_old.size());
  for (int e = 0; e < instance.m(); ++e) {
    const Edge& edge = instance.edge(e);
    if (!alive[edge.u] || !alive[edge.v]) continue;
    graph.edges.push_back(
        Edge{out.old_to_new[edge.u], out.old_to_new[edge.v], edge.length});
    out.edge_to_old.push_back(e);
  }
  PairDescription pairs;
  for (auto [a, b] : instance.pairs().pairs)
    pairs.pairs.emplace_back(out.old_to_new[a], out.old_to_new[b]);
  out.instance = validate_and_build(graph, pairs);
  return out;
}

namespace {

// Hanging-subtree index of every vertex around a point; -1 for a vertex the
// point coincides with.
std::vector<int> split_sides(const Instance& instance, const EdgePoint& p) {
  const int n = instance.n();
  std::vector<int> side(n, -1);
  const Edge& edge = instance.edge(p.edge);
  int at_vertex = -1;
  if (p.t == 0)
    at_vertex = edge.alpha();
  else if (p.t == edge.length)
    at_vertex = edge.beta();

  std::vector<char> seen(n, 0);
  int next_side = 0;
  auto flood = [&](int start, bool skip_center_edge) {
    if (seen[start]) return;
    seen[start] = 1;
    side[start] = next_side;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : instance.graph().adjacency[v]) {
        if (skip_center_edge && e == p.edge) continue;
        const Edge& f = instance.edge(e);
        int o = f.u == v ? f.v : f.u;
        if (seen[o]) continue;
        seen[o] = 1;
        side[o] = next_side;
        stack.push_back(o);
      }
    }
    ++next_side;
  };

  if (at_vertex >= 0) {
    seen[at_vertex] = 1;
    for (int e : instance.graph().adjacency[at_vertex]) {
      const Edge& f = instance.edge(e);
      flood(f.u == at_vertex ? f.v : f.u, false);
    }
  } else {
    flood(edge.alpha(), true);
    flood(edge.beta(), true);
  }
  return side;
}

}  // namespace

UnweightedCenter unweighted_center(const Instance& instance) {
  require_tree(instance, "unweighted_center");
  if (instance.m() == 0)
    throw std::invalid_argument("unweighted_center: needs at least one edge");
  const int n = instance.n();

  auto farthest = [&](const TreeBfs& bfs) {
    int best = bfs.source;
    for (int v = 0; v < n; ++v) {
      if (bfs.dist[v] > bfs.dist[best]) best = v;
    }
    return best;
  };
  TreeBfs from0 = tree_bfs(instance, 0);
  int a = farthest(from0);
  TreeBfs fromA = tree_bfs(instance, a);
  int b = farthest(fromA);

  UnweightedCenter out;
  Scalar diameter = fromA.dist[b];
  out.radius = diameter / 2;
  out.center = path_point(instance, fromA, b, out.radius);

  // Unweighted distance to the center for every vertex.
  const Edge& ce = instance.edge(out.center.edge);
  TreeBfs from_alpha = tree_bfs(instance, ce.alpha());
  TreeBfs from_beta = tree_bfs(instance, ce.beta());
  std::vector<Scalar> to_center(n);
  for (int v = 0; v < n; ++v) {
    Scalar via_a = from_alpha.dist[v] + out.center.t;
    Scalar via_b = from_beta.dist[v] + ce.length - out.center.t;
    to_center[v] = via_a < via_b ? via_a : via_b;
  }

  out.side_of_vertex = split_sides(instance, out.center);
  for (int v = 0; v < n; ++v) {
    if (to_center[v] != out.radius) continue;
    int side = out.side_of_vertex[v];
    auto it = std::find_if(out.key_groups.begin(), out.key_groups.end(),
                           [side](const auto& g) { return g.first == side; });
    if (it == out.key_groups.end()) {
      out.key_groups.emplace_back(side, std::vector<int>{v});
    } else {
      it->second.push_back(v);
    }
  }
  std::sort(out.key_groups.begin(), out.key_groups.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

Solution solve_tree_unweighted(const Instance& instance) {
  require_tree(instance, "solve_tree_unweighted");
  const int k = instance.k();
  if (k == 0) {
    if (instance.m() == 0)
      throw std::invalid_argument("solve_tree_unweighted: needs at least one edge");
    EdgePoint p = vertex_point(instance, 0);
    return Solution{Scalar(0), p, p, {}};
  }
  std::optional<Scalar> common;
  for (auto [a, b] : instance.pairs().pairs) {
    for (int v : {a, b}) {
      if (!common) common = instance.weight(v);
      if (instance.weight(v) != *common)
        throw std::invalid_argument("solve_tree_unweighted: paired weights must be equal");
    }
  }
  const Scalar W = *common;

  PrunedTree pruned = prune_unpaired_leaves(instance);
  const Instance& tree = pruned.instance;
  UnweightedCenter center = unweighted_center(tree);

  std::vector<char> is_key(tree.n(), 0);
  for (const auto& [side, keys] : center.key_groups) {
    for (int v : keys) is_key[v] = 1;
  }
  bool forced = center.key_groups.size() > 2;
  if (!forced) {
    for (auto [a, b] : tree.pairs().pairs) {
      if (is_key[a] && is_key[b] &&
          center.side_of_vertex[a] == center.side_of_vertex[b]) {
        forced = true;
        break;
      }
    }
  }

  auto remap_edge = [&](EdgePoint q) {
    q.edge = pruned.edge_to_old[q.edge];
    return q;
  };

  if (forced) {
    // No split into two smaller balls is possible: the one-center radius is
    // already optimal and both centers sit at the one-center point.
    EdgePoint q = remap_edge(center.center);
    Solution s;
    s.lambda = W * center.radius;
    s.q1 = q;
    s.q2 = q;
    s.assign_first_to_q1 = recover_assignment(instance, q, q);
    return s;
  }

  int alpha = center.key_groups[0].second.front();
  int beta = center.key_groups[1].second.front();
  TreeBfs from_alpha = tree_bfs(tree, alpha);
  TreeBfs from_beta = tree_bfs(tree, beta);

  Solution s;
  s.assign_first_to_q1.reserve(k);
  Scalar len1(0), len2(0);
  int far1 = alpha, far2 = beta;
  for (auto [a, b] : instance.pairs().pairs) {
    int pa = pruned.old_to_new[a];
    int pb = pruned.old_to_new[b];
    const Scalar& straight =
        from_alpha.dist[pa] < from_beta.dist[pb] ? from_beta.dist[pb] : from_alpha.dist[pa];
    const Scalar& crossed =
        from_alpha.dist[pb] < from_beta.dist[pa] ? from_beta.dist[pa] : from_alpha.dist[pb];
    bool first_to_q1 = straight <= crossed;
    s.assign_first_to_q1.push_back(first_to_q1);
    int to1 = first_to_q1 ? pa : pb;
    int to2 = first_to_q1 ? pb : pa;
    if (from_alpha.dist[to1] > len1) {
      len1 = from_alpha.dist[to1];
      far1 = to1;
    }
    if (from_beta.dist[to2] > len2) {
      len2 = from_beta.dist[to2];
      far2 = to2;
    }
  }

  s.lambda = W * (len1 < len2 ? len2 : len1) / 2;
  s.q1 = remap_edge(path_point(tree, from_alpha, far1, len1 / 2));
  s.q2 = remap_edge(path_point(tree, from_beta, far2, len2 / 2));
  return s;
}

}  // namespace bicenter
