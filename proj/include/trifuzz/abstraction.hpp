#pragma once

#include <cstdint>
#include <vector>

#include "trifuzz/constraints.hpp"

namespace trifuzz {

// Convex over-approximation of a path condition: rows a·x <= b over the
// condition's variables, byte bounds 0 <= x_i <= 255 always included.
// Rows keep integer coefficients so containment checks are exact.
struct Polytope {
  std::vector<ByteIndex> vars;
  std::vector<std::vector<std::int64_t>> rows_a;
  std::vector<std::int64_t> rows_b;
  bool infeasible = false;  // linear atoms alone were contradictory

  std::size_t dim() const { return vars.size(); }
  bool contains(std::span<const std::int64_t> point) const;
  bool contains_bytes(std::span<const std::uint8_t> full_input) const;
};

// Per-variable intervals enclosing the solution set.
struct Box {
  std::vector<ByteIndex> vars;
  std::vector<std::array<std::int32_t, 2>> range;
  bool infeasible = false;

  bool contains_bytes(std::span<const std::uint8_t> full_input) const;
};

// Linear atoms become rows (equalities as <=/>= pairs, strict relations
// shifted by one); Ne atoms and nonlinear atoms are dropped, so the result
// over-approximates the solution set.
Polytope polyhedral_abstraction(const PathCondition& pc);

// Interval propagation to fixpoint over the linear atoms.
Box interval_abstraction(const PathCondition& pc);

}  // namespace trifuzz
