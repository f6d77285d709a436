#pragma once

#include <string>

#include "bicenter/instance.hpp"

namespace bicenter {

struct ParsedInstance {
  GraphDescription graph;
  PairDescription pairs;
};

// Text format, '#' starts a comment: `n m k`, then n weight lines, then m
// `u v length` lines, then k `v u` lines. Numbers are integers or decimals.
// Errors carry the offending line number.
ParsedInstance parse_instance_text(const std::string& text);
ParsedInstance load_instance_file(const std::string& path);

std::string write_instance_text(const GraphDescription& graph, const PairDescription& pairs);

// Stable report schema:
// {lambda: {num, den}, q1: {u, v, t: {num, den}}, q2, assignment, solver}.
std::string solution_to_json(const Instance& instance, const Solution& solution,
                             const std::string& solver);
std::string solution_to_text(const Instance& instance, const Solution& solution,
                             const std::string& solver);

}  // namespace bicenter
