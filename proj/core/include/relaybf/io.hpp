#pragma once

// JSON documents for instances, primal solutions and dual solutions.
//
// Complex numbers are written as [re, im] pairs. Doubles are emitted with the
// shortest representation that round-trips, so parse(serialize(x)) == x
// exactly. Schema violations throw Error(kSchema) naming the offending field
// as a JSON path, e.g. "$.channels[1][0]".

#include <string>
#include <string_view>

#include "relaybf/problem.hpp"

namespace relaybf {

/// Accepts either "sinr_targets" or "rate_targets" (bits/symbol, converted via
/// 2^r - 1), never both.
ProblemInstance parse_instance(std::string_view text);
/// Always writes "sinr_targets".
std::string serialize_instance(const ProblemInstance& inst);

PrimalSolution parse_solution(std::string_view text);
std::string serialize_solution(const PrimalSolution& sol);

DualSolution parse_dual(std::string_view text);
std::string serialize_dual(const DualSolution& dual);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace relaybf
