#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>

#include "trifuzz/constraints.hpp"

namespace trifuzz {

enum class SolveStatus : std::uint8_t { Sat, Unsat, Unknown };

const char* solve_status_name(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::map<ByteIndex, std::uint8_t> model;  // covers pc.vars when Sat
  std::uint64_t steps = 0;
};

// Budget for one solve call: a step cap always applies; the wall cap is
// optional so lockstep runs stay deterministic.
struct SolveBudget {
  std::uint64_t max_steps = 1ull << 24;
  std::optional<std::chrono::milliseconds> wall = std::chrono::milliseconds(50);
};

// Per-variable interval domains with endpoint exclusion for Ne atoms.
struct Domains {
  std::vector<ByteIndex> vars;
  std::vector<std::array<std::int32_t, 2>> range;  // [lo, hi] per var

  bool empty() const {
    for (const auto& r : range)
      if (r[0] > r[1]) return true;
    return false;
  }
};

// Interval constraint propagation over the linear atoms of pc, to fixpoint.
// Sound: every solution of pc lies inside the returned domains. Nonlinear
// atoms are ignored.
Domains propagate_intervals(const PathCondition& pc);

// Complete decision procedure for the restricted constraint language.
//  - Linear-only conditions: interval propagation + backtracking search;
//    Unsat is exhaustive, Unknown only on budget exhaustion.
//  - Conditions with evaluable nonlinear atoms: bounded enumeration when
//    dim <= 3, Unknown otherwise.
//  - Conditions with unevaluable atoms: Unknown.
// Every Sat model is re-verified against all atoms before returning.
SolveResult solve(const PathCondition& pc, const SolveBudget& budget = {});

}  // namespace trifuzz
