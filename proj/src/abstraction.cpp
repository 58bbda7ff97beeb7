#include "trifuzz/abstraction.hpp"

#include "trifuzz/solver.hpp"

namespace trifuzz {

bool Polytope::contains(std::span<const std::int64_t> point) const {
  for (std::size_t r = 0; r < rows_a.size(); ++r) {
    __int128 dot = 0;
    for (std::size_t j = 0; j < vars.size(); ++j)
      dot += static_cast<__int128>(rows_a[r][j]) * point[j];
    if (dot > rows_b[r]) return false;
  }
  return true;
}

bool Polytope::contains_bytes(std::span<const std::uint8_t> full_input) const {
  std::vector<std::int64_t> pt(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j)
    pt[j] = vars[j] < full_input.size() ? full_input[vars[j]] : 0;
  return contains(pt);
}

bool Box::contains_bytes(std::span<const std::uint8_t> full_input) const {
  for (std::size_t j = 0; j < vars.size(); ++j) {
    std::int32_t v = vars[j] < full_input.size() ? full_input[vars[j]] : 0;
    if (v < range[j][0] || v > range[j][1]) return false;
  }
  return true;
}

Polytope polyhedral_abstraction(const PathCondition& pc) {
  Polytope poly;
  poly.vars = pc.vars;
  std::map<ByteIndex, std::size_t> slot;
  for (std::size_t j = 0; j < poly.vars.size(); ++j) slot[poly.vars[j]] = j;

  auto add_row = [&](const LinExpr& e, std::int64_t shift, bool negated) {
    std::vector<std::int64_t> row(poly.vars.size(), 0);
    for (const auto& [i, c] : e.coeffs) row[slot[i]] = negated ? -c : c;
    // sum(c x) + k + shift <= 0  ==>  sum(c x) <= -k - shift
    poly.rows_a.push_back(std::move(row));
    poly.rows_b.push_back(-(negated ? -e.constant : e.constant) - shift);
  };

  for (const Atom& a : pc.atoms) {
    if (a.is_nonlinear()) continue;  // dropped: over-approximation
    switch (a.rel) {
      case Rel::Le: add_row(a.lhs, 0, false); break;
      case Rel::Lt: add_row(a.lhs, 1, false); break;
      case Rel::Ge: add_row(a.lhs, 0, true); break;
      case Rel::Gt: add_row(a.lhs, 1, true); break;
      case Rel::Eq:
        add_row(a.lhs, 0, false);
        add_row(a.lhs, 0, true);
        break;
      case Rel::Ne:
        break;  // dropped
    }
  }

  // Byte bounds for every variable.
  for (std::size_t j = 0; j < poly.vars.size(); ++j) {
    std::vector<std::int64_t> up(poly.vars.size(), 0), down(poly.vars.size(), 0);
    up[j] = 1;
    down[j] = -1;
    poly.rows_a.push_back(std::move(up));
    poly.rows_b.push_back(255);
    poly.rows_a.push_back(std::move(down));
    poly.rows_b.push_back(0);
  }

  Domains doms = propagate_intervals(pc);
  poly.infeasible = doms.empty();
  return poly;
}

Box interval_abstraction(const PathCondition& pc) {
  Domains doms = propagate_intervals(pc);
  Box box;
  box.vars = doms.vars;
  box.range = doms.range;
  box.infeasible = doms.empty();
  return box;
}

}  // namespace trifuzz
