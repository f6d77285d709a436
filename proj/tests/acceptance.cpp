// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Every comparison is exact; the only tolerances are wall-clock
// budgets on whole batches.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bicenter/edge_geometry.hpp"
#include "bicenter/generator.hpp"
#include "bicenter/graph_solver.hpp"
#include "bicenter/instance.hpp"
#include "bicenter/oracle.hpp"
#include "bicenter/piercing.hpp"
#include "bicenter/tree_solver.hpp"
#include "util.hpp"

using bicenter::EdgePoint;
using bicenter::Instance;
using bicenter::Scalar;

namespace {

int failures = 0;

class Criterion {
 public:
  explicit Criterion(std::string label, double budget_seconds)
      : label_(std::move(label)),
        budget_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& context) {
    if (!ok && detail_.empty()) detail_ = context;
  }

  void finish() {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    bool in_budget = elapsed < budget_;
    bool ok = detail_.empty() && in_budget;
    if (!ok) ++failures;
    std::printf("%s  %s (%.2fs / %.0fs budget)%s%s\n", ok ? "PASS" : "FAIL",
                label_.c_str(), elapsed, budget_,
                detail_.empty() ? "" : (" — " + detail_).c_str(),
                in_budget ? "" : " — over budget");
  }

 private:
  std::string label_;
  double budget_;
  std::chrono::steady_clock::time_point start_;
  std::string detail_;
};

Instance generated(bicenter::GenParams params) {
  bicenter::GeneratedInstance g = bicenter::generate_instance(params);
  return bicenter::validate_and_build(g.graph, g.pairs);
}

std::string at_seed(unsigned long long seed) { return "seed " + std::to_string(seed); }

// Criteria 1, 5 (graph half), 6: solve_graph vs oracle, candidate membership,
// and the feasibility bracket on 200 random connected graphs.
void run_graph_batch(Criterion& c1, Criterion& c5, Criterion& c6) {
  for (unsigned long long seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    bicenter::GenParams params;
    params.seed = seed;
    params.kind = bicenter::GraphKind::ConnectedGraph;
    params.n = std::uniform_int_distribution<int>(4, 8)(rng);
    int max_m = std::min(12, params.n * (params.n - 1) / 2);
    params.m = std::uniform_int_distribution<int>(params.n - 1, max_m)(rng);
    Instance instance = testutil::normalized(generated(params));

    Scalar best = bicenter::oracle_solve(instance);
    bicenter::Solution s = bicenter::solve_graph(instance);
    c1.require(s.lambda == best, at_seed(seed));
    c1.require(bicenter::objective(instance, s.q1, s.q2, s.assign_first_to_q1) == best,
               at_seed(seed) + " (objective)");

    auto values = bicenter::candidate_values_graph(instance);
    auto pos = std::lower_bound(values.begin(), values.end(), best);
    c5.require(pos != values.end() && *pos == best, at_seed(seed));

    c6.require(bicenter::feasibility_graph(instance, best).has_value(),
               at_seed(seed) + " (witness)");
    if (pos != values.begin() && pos != values.end() && *pos == best) {
      c6.require(!bicenter::feasibility_graph(instance, *std::prev(pos)).has_value(),
                 at_seed(seed) + " (predecessor)");
    }
  }
}

// Criteria 2, 5 (tree half), 6: all three solvers agree on 200 random trees,
// the optimum lies in the candidate slice of the located edge pair, and the
// tree feasibility test brackets it.
void run_tree_batch(Criterion& c2, Criterion& c5, Criterion& c6) {
  for (unsigned long long seed = 201; seed <= 400; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    bicenter::GenParams params;
    params.seed = seed;
    params.kind = bicenter::GraphKind::Tree;
    params.n = std::uniform_int_distribution<int>(4, 10)(rng);
    Instance instance = testutil::normalized(generated(params));

    Scalar best = bicenter::oracle_solve(instance);
    bicenter::TreeSolveDetail det = bicenter::solve_tree_weighted_detail(instance);
    c2.require(det.solution.lambda == best, at_seed(seed) + " (tree)");
    c2.require(bicenter::solve_graph(instance).lambda == best, at_seed(seed) + " (graph)");

    auto slice = bicenter::candidate_values_edge_pair(instance, det.located_edge1,
                                                      det.located_edge2);
    c5.require(std::binary_search(slice.begin(), slice.end(), best),
               at_seed(seed) + " (edge pair)");

    c6.require(bicenter::feasibility_tree(instance, best).has_value(),
               at_seed(seed) + " (witness)");
    auto values = bicenter::candidate_values_graph(instance);
    auto pos = std::lower_bound(values.begin(), values.end(), best);
    if (pos != values.begin() && pos != values.end() && *pos == best) {
      c6.require(!bicenter::feasibility_tree(instance, *std::prev(pos)).has_value(),
                 at_seed(seed) + " (predecessor)");
    }
  }
}

void run_unweighted_batch(Criterion& c3) {
  for (unsigned long long seed = 401; seed <= 600; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    bicenter::GenParams params;
    params.seed = seed;
    params.kind = bicenter::GraphKind::Tree;
    params.n = std::uniform_int_distribution<int>(4, 10)(rng);
    params.weight_lo = 1;
    params.weight_hi = 1;
    Instance instance = generated(params);

    bicenter::Solution fast = bicenter::solve_tree_unweighted(instance);
    bicenter::Solution slow = bicenter::solve_tree_weighted(instance);
    c3.require(fast.lambda == slow.lambda, at_seed(seed));
    c3.require(bicenter::objective(instance, fast.q1, fast.q2, fast.assign_first_to_q1) ==
                   fast.lambda,
               at_seed(seed) + " (objective)");
    auto pruned = bicenter::prune_unpaired_leaves(instance);
    if (pruned.instance.m() > 0) {
      auto center = bicenter::unweighted_center(pruned.instance);
      c3.require(fast.lambda <= center.radius, at_seed(seed) + " (radius bound)");
    }
  }
}

void run_pierce_batch(Criterion& c4) {
  std::mt19937_64 rng(424242);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int iter = 0; iter < 1000; ++iter) {
    bicenter::Box box{Scalar(pick(1, 8)), Scalar(pick(1, 8))};
    std::vector<bicenter::RectangleSet> sets;
    int k = pick(1, 6);
    for (int i = 0; i < k; ++i) {
      bicenter::RectangleSet set;
      set.index = i;
      int count = pick(1, 4);
      for (int r = 0; r < count; ++r) {
        Scalar w = box.x_max * pick(1, 16) / 16;
        Scalar h = box.y_max * pick(1, 16) / 16;
        bicenter::CornerRectangle cr;
        cr.x = pick(0, 1) ? bicenter::Interval{Scalar(0), w}
                          : bicenter::Interval{box.x_max - w, box.x_max};
        cr.y = pick(0, 1) ? bicenter::Interval{Scalar(0), h}
                          : bicenter::Interval{box.y_max - h, box.y_max};
        set.rectangles.push_back(cr);
      }
      sets.push_back(std::move(set));
    }
    auto got = bicenter::pierce(box, sets);
    auto want = bicenter::oracle_pierce(box, sets);
    c4.require(got.has_value() == want.has_value(),
               "family " + std::to_string(iter) + " (verdict)");
    if (got) {
      for (const auto& set : sets) {
        c4.require(set.hit_by(got->first, got->second),
                   "family " + std::to_string(iter) + " (miss)");
      }
    }
  }
}

void run_lazy_tree_replay(Criterion& c7) {
  std::mt19937_64 rng(31337);
  std::vector<Scalar> keys;
  for (int i = 0; i < 64; ++i) keys.push_back(Scalar(i) / 5);
  bicenter::LazyMinTree tree(keys);
  std::vector<long long> naive(keys.size(), 0);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(keys.size()) - 1);
  std::uniform_int_distribution<int> coin(0, 1), add(-2, 3);
  for (int step = 0; step < 10000; ++step) {
    int a = idx(rng), b = idx(rng);
    if (a > b) std::swap(a, b);
    bool lo_closed = coin(rng), hi_closed = coin(rng);
    long long c = add(rng);
    std::optional<bicenter::RangeBound> lo = bicenter::RangeBound{keys[a], lo_closed};
    std::optional<bicenter::RangeBound> hi = bicenter::RangeBound{keys[b], hi_closed};
    if (step % 9 == 0) lo.reset();
    if (step % 13 == 0) hi.reset();
    tree.range_add(lo, hi, c);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      bool in_lo = !lo || keys[i] > lo->key || (lo->closed && keys[i] == lo->key);
      bool in_hi = !hi || keys[i] < hi->key || (hi->closed && keys[i] == hi->key);
      if (in_lo && in_hi) naive[i] += c;
    }
    long long expect = *std::min_element(naive.begin(), naive.end());
    c7.require(tree.global_min() == expect, "step " + std::to_string(step));
  }
}

void run_region_soundness(Criterion& c8) {
  for (unsigned long long seed = 601; seed <= 700; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    bicenter::GenParams params;
    params.seed = seed;
    params.kind = bicenter::GraphKind::Tree;
    params.n = std::uniform_int_distribution<int>(4, 9)(rng);
    Instance instance = testutil::normalized(generated(params));

    bicenter::Oracle oracle(instance);
    Scalar best = oracle.optimum();
    auto report = bicenter::locate_center_subtrees(
        instance, bicenter::QueryPoint::at_vertex(bicenter::centroid(instance)));
    if (report.verdict) {
      c8.require(*report.verdict == best, at_seed(seed) + " (verdict)");
      continue;
    }
    const auto& ta = report.subtrees[*report.first_center];
    const auto& tb = report.subtrees[*report.second_center];
    bool found = false;
    for (const auto& [p, q] : oracle.optimal_placements()) {
      found = (ta.contains_point(instance, p) && tb.contains_point(instance, q)) ||
              (ta.contains_point(instance, q) && tb.contains_point(instance, p));
      if (found) break;
    }
    c8.require(found, at_seed(seed) + " (regions)");
  }
}

void run_guards() {
  {
    bicenter::GenParams params;
    params.seed = 9001;
    params.kind = bicenter::GraphKind::ConnectedGraph;
    params.n = 40;
    params.m = 80;
    Instance instance = testutil::normalized(generated(params));
    Criterion guard("guard: solve_graph n=40 m=80", 10.0);
    bicenter::Solution s = bicenter::solve_graph(instance);
    guard.require(bicenter::objective(instance, s.q1, s.q2) == s.lambda, "objective");
    guard.finish();
  }
  {
    bicenter::GenParams params;
    params.seed = 9002;
    params.kind = bicenter::GraphKind::Tree;
    params.n = 10000;
    Instance instance = generated(params);
    Criterion guard("guard: solve_tree_weighted n=10^4", 5.0);
    bicenter::Solution s = bicenter::solve_tree_weighted(instance);
    guard.require(bicenter::objective(instance, s.q1, s.q2, s.assign_first_to_q1) ==
                      s.lambda,
                  "objective");
    guard.finish();
  }
  {
    bicenter::GenParams params;
    params.seed = 9003;
    params.kind = bicenter::GraphKind::Tree;
    params.n = 100000;
    params.weight_lo = 1;
    params.weight_hi = 1;
    Instance instance = generated(params);
    Criterion guard("guard: solve_tree_unweighted n=10^5", 2.0);
    bicenter::Solution s = bicenter::solve_tree_unweighted(instance);
    guard.require(bicenter::objective(instance, s.q1, s.q2, s.assign_first_to_q1) ==
                      s.lambda,
                  "objective");
    guard.finish();
  }
}

}  // namespace

int main() {
  Criterion c1("criterion 1: solve_graph equals the oracle on 200 graphs", 60.0);
  Criterion c2("criterion 2: tree solvers equal the oracle on 200 trees", 60.0);
  Criterion c5("criterion 5: optimum is a candidate value on every instance", 60.0);
  Criterion c6("criterion 6: feasibility brackets the optimum", 60.0);
  run_graph_batch(c1, c5, c6);
  run_tree_batch(c2, c5, c6);
  c1.finish();
  c2.finish();
  c5.finish();
  c6.finish();

  Criterion c3("criterion 3: unweighted pipeline matches on 200 unit trees", 30.0);
  run_unweighted_batch(c3);
  c3.finish();

  Criterion c4("criterion 4: pierce matches its oracle on 1000 families", 30.0);
  run_pierce_batch(c4);
  c4.finish();

  Criterion c7("criterion 7: LazyMinTree replay over 10^4 operations", 30.0);
  run_lazy_tree_replay(c7);
  c7.finish();

  Criterion c8("criterion 8: centroid regions contain an optimal placement", 60.0);
  run_region_soundness(c8);
  c8.finish();

  run_guards();

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
