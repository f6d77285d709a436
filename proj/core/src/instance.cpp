#include "bicenter/instance.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace bicenter {
namespace {

constexpr int kMatrixCutoff = 512;  // trees above this size skip the matrix

std::string describe_vertex(int v) {
  std::ostringstream out;
  out << "vertex " << v;
  return out.str();
}

}  // namespace

Instance validate_and_build(const GraphDescription& graph, const PairDescription& pairs,
                            std::optional<bool> with_matrix) {
  if (graph.n <= 0) throw ValidationError("graph must have at least one vertex");
  if (static_cast<int>(graph.weights.size()) != graph.n)
    throw ValidationError("expected one weight per vertex");
  for (int v = 0; v < graph.n; ++v) {
    if (graph.weights[v] < 0)
      throw ValidationError("negative weight at " + describe_vertex(v));
  }
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const Edge& edge = graph.edges[e];
    if (edge.u < 0 || edge.u >= graph.n || edge.v < 0 || edge.v >= graph.n) {
      std::ostringstream out;
      out << "edge " << e << " references an unknown vertex";
      throw ValidationError(out.str());
    }
    if (edge.u == edge.v) {
      std::ostringstream out;
      out << "edge " << e << " is a self-loop at " << describe_vertex(edge.u);
      throw ValidationError(out.str());
    }
    if (edge.length <= 0) {
      std::ostringstream out;
      out << "edge " << e << " has non-positive length";
      throw ValidationError(out.str());
    }
  }

  std::vector<int> pair_of(graph.n, -1);
  for (std::size_t i = 0; i < pairs.pairs.size(); ++i) {
    auto [a, b] = pairs.pairs[i];
    if (a < 0 || a >= graph.n || b < 0 || b >= graph.n)
      throw ValidationError("pair references an unknown vertex");
    if (a == b)
      throw ValidationError("pair has identical vertices: " + describe_vertex(a));
    for (int v : {a, b}) {
      if (pair_of[v] != -1)
        throw ValidationError("duplicate vertex in pairs: " + describe_vertex(v));
      pair_of[v] = static_cast<int>(i);
    }
  }

  Instance instance;
  instance.graph_.n = graph.n;
  instance.graph_.weights = graph.weights;
  instance.graph_.edges = graph.edges;
  instance.graph_.adjacency.assign(graph.n, {});
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    instance.graph_.adjacency[graph.edges[e].u].push_back(static_cast<int>(e));
    instance.graph_.adjacency[graph.edges[e].v].push_back(static_cast<int>(e));
  }
  instance.pairs_ = PairSet{pairs.pairs};

  // Connectivity check (BFS).
  std::vector<char> seen(graph.n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int e : instance.graph_.adjacency[v]) {
      const Edge& edge = instance.graph_.edges[e];
      int other = edge.u == v ? edge.v : edge.u;
      if (!seen[other]) {
        seen[other] = 1;
        ++reached;
        frontier.push(other);
      }
    }
  }
  if (reached != graph.n) {
    for (int v = 0; v < graph.n; ++v) {
      if (!seen[v])
        throw ValidationError("graph is disconnected: unreachable " + describe_vertex(v));
    }
  }

  instance.is_tree_ = static_cast<int>(graph.edges.size()) == graph.n - 1;
  if (instance.is_tree_) instance.build_tree_index();
  bool want_matrix =
      with_matrix.value_or(!instance.is_tree_ || graph.n <= kMatrixCutoff);
  if (want_matrix) instance.build_distance_matrix();
  return instance;
}

void Instance::build_distance_matrix() {
  const int n = graph_.n;
  dist_.assign(n, std::vector<Scalar>(n));
  std::vector<char> done(n);
  for (int source = 0; source < n; ++source) {
    std::vector<Scalar>& row = dist_[source];
    done.assign(n, 0);
    std::set<std::pair<Scalar, int>> queue;
    std::vector<char> reached(n, 0);
    row[source] = 0;
    reached[source] = 1;
    queue.insert({Scalar(0), source});
    while (!queue.empty()) {
      auto [d, v] = *queue.begin();
      queue.erase(queue.begin());
      if (done[v]) continue;
      done[v] = 1;
      for (int e : graph_.adjacency[v]) {
        const Edge& edge = graph_.edges[e];
        int other = edge.u == v ? edge.v : edge.u;
        Scalar candidate = d + edge.length;
        if (!reached[other] || candidate < row[other]) {
          if (reached[other]) queue.erase({row[other], other});
          row[other] = candidate;
          reached[other] = 1;
          queue.insert({candidate, other});
        }
      }
    }
  }
}

void Instance::build_tree_index() {
  const int n = graph_.n;
  parent_.assign(n, -1);
  parent_edge_.assign(n, -1);
  root_dist_.assign(n, Scalar(0));
  std::vector<int> depth(n, 0);
  std::vector<char> visited(n, 0);
  visited[0] = 1;
  std::vector<int> order;
  order.reserve(n);
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (int e : graph_.adjacency[v]) {
      const Edge& edge = graph_.edges[e];
      int other = edge.u == v ? edge.v : edge.u;
      if (visited[other]) continue;
      visited[other] = 1;
      parent_[other] = v;
      parent_edge_[other] = e;
      depth[other] = depth[v] + 1;
      root_dist_[other] = root_dist_[v] + edge.length;
      order.push_back(other);
    }
  }

  // Euler tour by an iterative DFS; tour length 2n-1.
  euler_vertex_.clear();
  euler_vertex_.reserve(2 * n);
  euler_first_.assign(n, -1);
  tour_depth_.clear();
  tour_depth_.reserve(2 * n);
  std::vector<std::size_t> child_cursor(n, 0);
  std::vector<std::vector<int>> children(n);
  for (int v = 1; v < n; ++v) children[parent_[v]].push_back(v);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    if (euler_first_[v] == -1) euler_first_[v] = static_cast<int>(euler_vertex_.size());
    euler_vertex_.push_back(v);
    tour_depth_.push_back(depth[v]);
    if (child_cursor[v] < children[v].size()) {
      stack.push_back(children[v][child_cursor[v]++]);
    } else {
      stack.pop_back();
    }
  }

  const int len = static_cast<int>(euler_vertex_.size());
  int levels = 1;
  while ((1 << levels) <= len) ++levels;
  sparse_.assign(levels, std::vector<int>(len));
  for (int i = 0; i < len; ++i) sparse_[0][i] = i;
  for (int j = 1; j < levels; ++j) {
    for (int i = 0; i + (1 << j) <= len; ++i) {
      int left = sparse_[j - 1][i];
      int right = sparse_[j - 1][i + (1 << (j - 1))];
      sparse_[j][i] = tour_depth_[left] <= tour_depth_[right] ? left : right;
    }
  }
}

int Instance::lca(int u, int v) const {
  int a = euler_first_[u];
  int b = euler_first_[v];
  if (a > b) std::swap(a, b);
  int span = b - a + 1;
  int level = 0;
  while ((2 << level) <= span) ++level;
  int left = sparse_[level][a];
  int right = sparse_[level][b - (1 << level) + 1];
  int best = tour_depth_[left] <= tour_depth_[right] ? left : right;
  return euler_vertex_[best];
}

Scalar Instance::distance(int u, int v) const {
  if (!dist_.empty()) return dist_[u][v];
  if (u == v) return Scalar(0);
  int a = lca(u, v);
  return root_dist_[u] + root_dist_[v] - 2 * root_dist_[a];
}

bool Instance::fully_paired() const {
  return static_cast<int>(pairs_.pairs.size()) * 2 == graph_.n;
}

Instance normalize(const Instance& instance) {
  GraphDescription graph;
  graph.n = instance.n();
  graph.weights = instance.graph().weights;
  graph.edges = instance.graph().edges;
  PairDescription pairs{instance.pairs().pairs};

  std::vector<char> paired(graph.n, 0);
  for (auto [a, b] : pairs.pairs) paired[a] = paired[b] = 1;
  bool all_paired = true;
  for (int v = 0; v < graph.n; ++v) {
    if (!paired[v]) {
      graph.weights[v] = 0;
      all_paired = false;
    }
  }
  if (all_paired && graph.n % 2 == 0) return instance;

  if (graph.n % 2 == 1) {
    graph.weights.push_back(0);
    graph.edges.push_back(Edge{0, graph.n, Scalar(1)});
    ++graph.n;
  }
  std::vector<int> unpaired;
  paired.resize(graph.n, 0);
  for (int v = 0; v < graph.n; ++v) {
    if (!paired[v]) unpaired.push_back(v);
  }
  for (std::size_t i = 0; i + 1 < unpaired.size(); i += 2) {
    pairs.pairs.emplace_back(unpaired[i], unpaired[i + 1]);
  }
  return validate_and_build(graph, pairs, instance.has_distance_matrix());
}

Scalar vertex_point_distance(const Instance& instance, int v, const EdgePoint& p) {
  const Edge& edge = instance.edge(p.edge);
  Scalar via_alpha = instance.distance(v, edge.alpha()) + p.t;
  Scalar via_beta = instance.distance(v, edge.beta()) + edge.length - p.t;
  return via_alpha < via_beta ? via_alpha : via_beta;
}

Scalar point_distance(const Instance& instance, const EdgePoint& p, const EdgePoint& q) {
  const Edge& pe = instance.edge(p.edge);
  const Edge& qe = instance.edge(q.edge);
  Scalar pa = p.t;                  // p to its alpha endpoint
  Scalar pb = pe.length - p.t;      // p to its beta endpoint
  Scalar qa = q.t;
  Scalar qb = qe.length - q.t;
  Scalar best = pa + instance.distance(pe.alpha(), qe.alpha()) + qa;
  auto consider = [&best](Scalar candidate) {
    if (candidate < best) best = std::move(candidate);
  };
  consider(pa + instance.distance(pe.alpha(), qe.beta()) + qb);
  consider(pb + instance.distance(pe.beta(), qe.alpha()) + qa);
  consider(pb + instance.distance(pe.beta(), qe.beta()) + qb);
  if (p.edge == q.edge) consider(p.t < q.t ? q.t - p.t : p.t - q.t);
  return best;
}

bool same_point(const Instance& instance, const EdgePoint& p, const EdgePoint& q) {
  return point_distance(instance, p, q) == 0;
}

EdgePoint vertex_point(const Instance& instance, int v) {
  int e = instance.graph().adjacency[v].front();
  const Edge& edge = instance.edge(e);
  return EdgePoint{e, edge.alpha() == v ? Scalar(0) : edge.length};
}

namespace {

// Weighted distances of both pair members to both points.
struct PairDistances {
  Scalar v_q1, v_q2, u_q1, u_q2;
};

PairDistances pair_distances(const Instance& instance, int pair_index,
                             const EdgePoint& q1, const EdgePoint& q2) {
  auto [v, u] = instance.pairs().pairs[pair_index];
  return PairDistances{
      instance.weight(v) * vertex_point_distance(instance, v, q1),
      instance.weight(v) * vertex_point_distance(instance, v, q2),
      instance.weight(u) * vertex_point_distance(instance, u, q1),
      instance.weight(u) * vertex_point_distance(instance, u, q2)};
}

}  // namespace

Scalar phi(const Instance& instance, int pair_index, const EdgePoint& q1,
           const EdgePoint& q2) {
  PairDistances d = pair_distances(instance, pair_index, q1, q2);
  Scalar forward = std::max(d.v_q1, d.u_q2);
  Scalar backward = std::max(d.u_q1, d.v_q2);
  return forward < backward ? forward : backward;
}

Scalar objective(const Instance& instance, const EdgePoint& q1, const EdgePoint& q2) {
  Scalar best(0);
  for (int i = 0; i < instance.k(); ++i) {
    Scalar value = phi(instance, i, q1, q2);
    if (value > best) best = std::move(value);
  }
  return best;
}

Scalar objective(const Instance& instance, const EdgePoint& q1, const EdgePoint& q2,
                 const std::vector<bool>& assign_first_to_q1) {
  Scalar best(0);
  for (int i = 0; i < instance.k(); ++i) {
    PairDistances d = pair_distances(instance, i, q1, q2);
    Scalar value = assign_first_to_q1[i] ? std::max(d.v_q1, d.u_q2)
                                         : std::max(d.u_q1, d.v_q2);
    if (value > best) best = std::move(value);
  }
  return best;
}

std::vector<bool> recover_assignment(const Instance& instance, const EdgePoint& q1,
                                     const EdgePoint& q2) {
  std::vector<bool> assignment(instance.k());
  for (int i = 0; i < instance.k(); ++i) {
    PairDistances d = pair_distances(instance, i, q1, q2);
    Scalar forward = std::max(d.v_q1, d.u_q2);
    Scalar backward = std::max(d.u_q1, d.v_q2);
    assignment[i] = forward <= backward;
  }
  return assignment;
}

}  // namespace bicenter
