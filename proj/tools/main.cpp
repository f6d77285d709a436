#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bicenter/generator.hpp"
#include "bicenter/graph_solver.hpp"
#include "bicenter/io.hpp"
#include "bicenter/oracle.hpp"
#include "bicenter/piercing.hpp"
#include "bicenter/solve.hpp"
#include "bicenter/tree_solver.hpp"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

int oracle_cap() {
  if (const char* env = std::getenv("BICENTER_ORACLE_CAP")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw bicenter::ValidationError("BICENTER_ORACLE_CAP must be an integer");
    }
  }
  return bicenter::kDefaultOracleCap;
}

std::pair<int, int> parse_range(const std::string& text, const char* what) {
  auto sep = text.find("..");
  try {
    if (sep != std::string::npos) {
      int lo = std::stoi(text.substr(0, sep));
      int hi = std::stoi(text.substr(sep + 2));
      return {lo, hi};
    }
    int v = std::stoi(text);
    return {v, v};
  } catch (const std::exception&) {
    throw bicenter::ValidationError(std::string(what) + ": expected 'a..b', got '" +
                                    text + "'");
  }
}

int run_solve(const std::string& path, const std::string& solver,
              const std::string& format) {
  bicenter::ParsedInstance parsed = bicenter::load_instance_file(path);
  bicenter::Instance instance = bicenter::validate_and_build(parsed.graph, parsed.pairs);

  bicenter::SolverChoice choice = bicenter::SolverChoice::Auto;
  if (solver == "graph") choice = bicenter::SolverChoice::Graph;
  else if (solver == "tree") choice = bicenter::SolverChoice::Tree;
  else if (solver == "tree-unweighted") choice = bicenter::SolverChoice::TreeUnweighted;

  bicenter::SolveResult result = bicenter::solve_instance(instance, choice);
  const bicenter::Solution& s = result.solution;
  if (bicenter::objective(instance, s.q1, s.q2, s.assign_first_to_q1) != s.lambda) {
    std::cerr << "internal error: reported assignment does not reproduce lambda\n";
    return kExitInternal;
  }
  if (format == "json")
    std::cout << bicenter::solution_to_json(instance, s, result.solver);
  else
    std::cout << bicenter::solution_to_text(instance, s, result.solver);
  return 0;
}

int run_gen(unsigned long long seed, int n, std::optional<int> m, const std::string& kind,
            const std::string& weights, const std::string& lengths,
            const std::string& out_path) {
  bicenter::GenParams params;
  params.seed = seed;
  params.n = n;
  params.m = m;
  params.kind = kind == "connected-graph" ? bicenter::GraphKind::ConnectedGraph
                                          : bicenter::GraphKind::Tree;
  std::tie(params.weight_lo, params.weight_hi) = parse_range(weights, "--weights");
  std::tie(params.length_lo, params.length_hi) = parse_range(lengths, "--lengths");

  bicenter::GeneratedInstance generated = bicenter::generate_instance(params);
  std::string text = bicenter::write_instance_text(
      bicenter::GraphDescription{generated.graph.n, generated.graph.weights,
                                 generated.graph.edges},
      bicenter::PairDescription{generated.pairs.pairs});
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw bicenter::ValidationError("cannot write '" + out_path + "'");
    file << text;
  }
  return 0;
}

// One verification case: exact λ* agreement between every applicable solver
// and the brute-force oracle. Returns an error report on mismatch.
std::optional<std::string> check_instance(const bicenter::GeneratedInstance& generated,
                                          bool is_tree, int cap) {
  bicenter::GraphDescription graph{generated.graph.n, generated.graph.weights,
                                   generated.graph.edges};
  bicenter::PairDescription pairs{generated.pairs.pairs};
  bicenter::Instance instance = bicenter::validate_and_build(graph, pairs);
  bicenter::Scalar expected = bicenter::oracle_solve(instance, cap);

  auto mismatch = [&](const char* solver, const bicenter::Scalar& got) {
    return "solver " + std::string(solver) + " got " + bicenter::to_fraction_string(got) +
           ", oracle " + bicenter::to_fraction_string(expected) + "\ninstance:\n" +
           bicenter::write_instance_text(graph, pairs);
  };

  bicenter::Solution via_graph =
      bicenter::solve_instance(instance, bicenter::SolverChoice::Graph).solution;
  if (via_graph.lambda != expected) return mismatch("graph", via_graph.lambda);

  if (is_tree) {
    bicenter::Solution via_tree =
        bicenter::solve_instance(instance, bicenter::SolverChoice::Tree).solution;
    if (via_tree.lambda != expected) return mismatch("tree", via_tree.lambda);

    bool unit = true;
    for (auto [a, b] : pairs.pairs)
      unit = unit && instance.weight(a) == instance.weight(b) &&
             instance.weight(a) == instance.weight(pairs.pairs.front().first);
    if (unit && !pairs.pairs.empty()) {
      bicenter::Solution via_unweighted =
          bicenter::solve_instance(instance, bicenter::SolverChoice::TreeUnweighted)
              .solution;
      if (via_unweighted.lambda != expected)
        return mismatch("tree-unweighted", via_unweighted.lambda);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_pierce(std::mt19937_64& rng) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  bicenter::Box box{bicenter::Scalar(pick(1, 8)), bicenter::Scalar(pick(1, 8))};
  std::vector<bicenter::RectangleSet> sets;
  int k = pick(1, 6);
  for (int i = 0; i < k; ++i) {
    bicenter::RectangleSet set;
    set.index = i;
    int rects = pick(1, 4);
    for (int r = 0; r < rects; ++r) {
      bicenter::Scalar w = bicenter::Scalar(pick(1, 16)) * box.x_max / 16;
      bicenter::Scalar h = bicenter::Scalar(pick(1, 16)) * box.y_max / 16;
      bicenter::CornerRectangle rect;
      rect.x = pick(0, 1) ? bicenter::Interval{bicenter::Scalar(0), w}
                          : bicenter::Interval{box.x_max - w, box.x_max};
      rect.y = pick(0, 1) ? bicenter::Interval{bicenter::Scalar(0), h}
                          : bicenter::Interval{box.y_max - h, box.y_max};
      set.rectangles.push_back(rect);
    }
    sets.push_back(std::move(set));
  }
  auto got = bicenter::pierce(box, sets);
  auto want = bicenter::oracle_pierce(box, sets);
  if (got.has_value() != want.has_value())
    return std::string("pierce existence mismatch: sweep says ") +
           (got ? "hit" : "miss") + ", oracle says " + (want ? "hit" : "miss");
  if (got) {
    for (const auto& set : sets) {
      if (!set.hit_by(got->first, got->second))
        return "pierce returned a point missing set " + std::to_string(set.index);
    }
  }
  return std::nullopt;
}

int run_verify(const std::string& seeds, int max_n, int jobs) {
  auto [seed_lo, seed_hi] = parse_range(seeds, "--seeds");
  if (seed_hi < seed_lo) {
    std::cout << "0 cases\n";
    return 0;
  }
  if (max_n < 4) throw bicenter::ValidationError("--max-n must be at least 4");
  const int cap = std::max(oracle_cap(), max_n);
  const int total = seed_hi - seed_lo + 1;

  std::vector<std::optional<std::string>> failures(total);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      const int seed = seed_lo + i;
      try {
        std::mt19937_64 rng(static_cast<unsigned long long>(seed) * 0x9e3779b97f4a7c15ULL +
                            1);
        auto pick = [&rng](int lo, int hi) {
          return std::uniform_int_distribution<int>(lo, hi)(rng);
        };

        bicenter::GenParams graph_params;
        graph_params.seed = static_cast<unsigned long long>(seed) * 3 + 1;
        graph_params.n = pick(4, max_n);
        graph_params.kind = bicenter::GraphKind::ConnectedGraph;
        if (auto err = check_instance(bicenter::generate_instance(graph_params), false, cap)) {
          failures[i] = "seed " + std::to_string(seed) + " (graph): " + *err;
          continue;
        }

        bicenter::GenParams tree_params;
        tree_params.seed = static_cast<unsigned long long>(seed) * 3 + 2;
        tree_params.n = pick(4, max_n);
        tree_params.kind = bicenter::GraphKind::Tree;
        if (auto err = check_instance(bicenter::generate_instance(tree_params), true, cap)) {
          failures[i] = "seed " + std::to_string(seed) + " (tree): " + *err;
          continue;
        }

        bicenter::GenParams unit_params = tree_params;
        unit_params.seed = static_cast<unsigned long long>(seed) * 3 + 3;
        unit_params.weight_lo = unit_params.weight_hi = 1;
        if (auto err = check_instance(bicenter::generate_instance(unit_params), true, cap)) {
          failures[i] = "seed " + std::to_string(seed) + " (unit tree): " + *err;
          continue;
        }

        if (auto err = check_pierce(rng)) {
          failures[i] = "seed " + std::to_string(seed) + " (pierce): " + *err;
        }
      } catch (const std::exception& e) {
        failures[i] = "seed " + std::to_string(seed) + " (exception): " + e.what();
      }
    }
  };

  jobs = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int bad = 0;
  for (int i = 0; i < total; ++i) {
    if (failures[i]) {
      ++bad;
      std::cerr << *failures[i] << '\n';
    }
  }
  std::cout << total << " cases, " << (total - bad) << " ok, " << bad << " failed\n";
  return bad ? kExitMismatch : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted bichromatic two-center solver"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  std::string path, solver = "auto", format = "text";
  bool deterministic = false;
  solve_cmd->add_option("file", path, "instance file")->required();
  solve_cmd->add_option("--solver", solver, "graph|tree|tree-unweighted")
      ->check(CLI::IsMember({"auto", "graph", "tree", "tree-unweighted"}));
  solve_cmd->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  solve_cmd->add_flag("--deterministic", deterministic,
                      "accepted for interface stability; all solvers are deterministic");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  unsigned long long seed = 0;
  int n = 0;
  std::optional<int> m;
  std::string kind = "tree", weights = "0..5", lengths = "1..9", out_path;
  gen_cmd->add_option("--seed", seed, "rng seed")->required();
  gen_cmd->add_option("--n", n, "vertex count")->required();
  gen_cmd->add_option("--m", m, "edge count (connected-graph only)");
  gen_cmd->add_option("--kind", kind, "tree|connected-graph")
      ->check(CLI::IsMember({"tree", "connected-graph"}));
  gen_cmd->add_option("--weights", weights, "weight range a..b");
  gen_cmd->add_option("--lengths", lengths, "length range a..b");
  gen_cmd->add_option("-o,--output", out_path, "output file ('-' for stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Check solvers against the oracles");
  std::string seeds = "1..100";
  int max_n = 8, jobs = 1;
  verify_cmd->add_option("--seeds", seeds, "seed range A..B")->required();
  verify_cmd->add_option("--max-n", max_n, "largest instance size");
  verify_cmd->add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
    if (solve_cmd->parsed()) return run_solve(path, solver, format);
    if (gen_cmd->parsed()) return run_gen(seed, n, m, kind, weights, lengths, out_path);
    return run_verify(seeds, max_n, jobs);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  } catch (const bicenter::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
