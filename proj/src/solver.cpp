#include "trifuzz/solver.hpp"

#include <algorithm>
#include <chrono>

namespace trifuzz {

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

using I128 = __int128;

std::int64_t floor_div(I128 a, I128 b) {
  I128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}
std::int64_t ceil_div(I128 a, I128 b) {
  I128 q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return static_cast<std::int64_t>(q);
}

// One inequality sum(c_i x_i) + k <= 0.
struct Ineq {
  std::vector<std::pair<ByteIndex, std::int64_t>> terms;
  std::int64_t k;
};

struct Csp {
  std::vector<ByteIndex> vars;
  std::vector<std::array<std::int32_t, 2>> range;
  std::vector<Ineq> ineqs;
  std::vector<const Atom*> ne_atoms;     // linear Ne atoms
  std::vector<const Atom*> all_linear;   // final verification
  std::map<ByteIndex, std::size_t> var_slot;

  std::size_t slot(ByteIndex v) const { return var_slot.at(v); }
};

Csp build_csp(const PathCondition& pc) {
  Csp csp;
  csp.vars = pc.vars;
  csp.range.assign(csp.vars.size(), {0, 255});
  for (std::size_t i = 0; i < csp.vars.size(); ++i) csp.var_slot[csp.vars[i]] = i;

  auto add_ineq = [&](const LinExpr& e, std::int64_t shift, bool negated) {
    Ineq q;
    for (const auto& [i, c] : e.coeffs)
      q.terms.emplace_back(i, negated ? -c : c);
    q.k = (negated ? -e.constant : e.constant) + shift;
    csp.ineqs.push_back(std::move(q));
  };

  for (const Atom& a : pc.atoms) {
    if (a.is_nonlinear()) continue;
    csp.all_linear.push_back(&a);
    switch (a.rel) {
      case Rel::Le: add_ineq(a.lhs, 0, false); break;
      case Rel::Lt: add_ineq(a.lhs, 1, false); break;
      case Rel::Ge: add_ineq(a.lhs, 0, true); break;
      case Rel::Gt: add_ineq(a.lhs, 1, true); break;
      case Rel::Eq:
        add_ineq(a.lhs, 0, false);
        add_ineq(a.lhs, 0, true);
        break;
      case Rel::Ne:
        csp.ne_atoms.push_back(&a);
        break;
    }
  }
  return csp;
}

// Tightens `range` to a fixpoint. Returns false when a domain empties.
// Each pass charges one step.
bool propagate(const Csp& csp, std::vector<std::array<std::int32_t, 2>>& range,
               std::uint64_t& steps) {
  bool changed = true;
  while (changed) {
    changed = false;
    ++steps;
    for (const Ineq& q : csp.ineqs) {
      // Bound each variable using the minimum of the others.
      for (const auto& [vj, cj] : q.terms) {
        I128 minsum = q.k;
        for (const auto& [vi, ci] : q.terms) {
          if (vi == vj) continue;
          const auto& r = range[csp.slot(vi)];
          minsum += static_cast<I128>(ci) * (ci > 0 ? r[0] : r[1]);
        }
        auto& rj = range[csp.slot(vj)];
        // cj * xj <= -minsum
        if (cj > 0) {
          std::int64_t hi = floor_div(-minsum, cj);
          if (hi < rj[1]) {
            rj[1] = static_cast<std::int32_t>(std::max<std::int64_t>(hi, -1));
            changed = true;
          }
        } else {
          std::int64_t lo = ceil_div(-minsum, cj);
          if (lo > rj[0]) {
            rj[0] = static_cast<std::int32_t>(std::min<std::int64_t>(lo, 256));
            changed = true;
          }
        }
        if (rj[0] > rj[1]) return false;
      }
    }
    // Ne endpoint trimming once everything else in the atom is fixed.
    for (const Atom* a : csp.ne_atoms) {
      ByteIndex free_var = 0;
      std::int64_t free_coeff = 0;
      int free_count = 0;
      I128 fixed_sum = a->lhs.constant;
      for (const auto& [vi, ci] : a->lhs.coeffs) {
        const auto& r = range[csp.slot(vi)];
        if (r[0] == r[1]) {
          fixed_sum += static_cast<I128>(ci) * r[0];
        } else {
          ++free_count;
          free_var = vi;
          free_coeff = ci;
        }
      }
      if (free_count == 0) {
        if (fixed_sum == 0) return false;  // contradiction with all fixed
        continue;
      }
      if (free_count != 1) continue;
      if (fixed_sum % free_coeff != 0) continue;
      std::int64_t excluded = static_cast<std::int64_t>(-fixed_sum / free_coeff);
      auto& r = range[csp.slot(free_var)];
      if (excluded == r[0]) {
        ++r[0];
        changed = true;
      }
      if (excluded == r[1]) {
        --r[1];
        changed = true;
      }
      if (r[0] > r[1]) return false;
    }
  }
  return true;
}

struct Search {
  const Csp& csp;
  const PathCondition& pc;
  const SolveBudget& budget;
  std::uint64_t steps = 0;
  bool out_of_budget = false;
  std::chrono::steady_clock::time_point start;

  bool budget_ok() {
    if (steps > budget.max_steps) {
      out_of_budget = true;
      return false;
    }
    if (budget.wall && (steps & 0x3ff) == 0) {
      if (std::chrono::steady_clock::now() - start > *budget.wall) {
        out_of_budget = true;
        return false;
      }
    }
    return true;
  }

  std::vector<std::uint8_t> scratch_input;

  bool verify(const std::vector<std::array<std::int32_t, 2>>& range) {
    std::fill(scratch_input.begin(), scratch_input.end(), 0);
    for (std::size_t i = 0; i < csp.vars.size(); ++i)
      scratch_input[csp.vars[i]] = static_cast<std::uint8_t>(range[i][0]);
    bool decidable = true;
    bool ok = pc.satisfied_by(scratch_input, &decidable);
    return ok && decidable;
  }

  // Backtracking over the propagated domains; assigns the narrowest
  // variable first. Exhaustive unless the budget runs out.
  bool dfs(std::vector<std::array<std::int32_t, 2>> range,
           std::vector<std::array<std::int32_t, 2>>& solution) {
    int pick = -1;
    std::int32_t best_width = 0;
    for (std::size_t i = 0; i < range.size(); ++i) {
      std::int32_t w = range[i][1] - range[i][0];
      if (w > 0 && (pick < 0 || w < best_width)) {
        pick = static_cast<int>(i);
        best_width = w;
      }
    }
    if (pick < 0) {
      if (verify(range)) {
        solution = range;
        return true;
      }
      return false;
    }
    const auto saved = range[pick];
    for (std::int32_t v = saved[0]; v <= saved[1]; ++v) {
      ++steps;
      if (!budget_ok()) return false;
      auto child = range;
      child[pick] = {v, v};
      if (!propagate(csp, child, steps)) continue;
      if (dfs(std::move(child), solution)) return true;
      if (out_of_budget) return false;
    }
    return false;
  }
};

SolveResult enumerate_lattice(const PathCondition& pc, const Csp& csp,
                              std::vector<std::array<std::int32_t, 2>> range,
                              const SolveBudget& budget) {
  SolveResult res;
  std::size_t max_index = 0;
  for (ByteIndex v : pc.vars) max_index = std::max<std::size_t>(max_index, v + 1);
  std::vector<std::uint8_t> input(max_index, 0);

  auto start = std::chrono::steady_clock::now();
  std::vector<std::int32_t> cur(csp.vars.size());
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = range[i][0];

  while (true) {
    ++res.steps;
    if (res.steps > budget.max_steps) {
      res.status = SolveStatus::Unknown;
      return res;
    }
    if (budget.wall && (res.steps & 0xfff) == 0 &&
        std::chrono::steady_clock::now() - start > *budget.wall) {
      res.status = SolveStatus::Unknown;
      return res;
    }
    for (std::size_t i = 0; i < cur.size(); ++i)
      input[csp.vars[i]] = static_cast<std::uint8_t>(cur[i]);
    bool decidable = true;
    if (pc.satisfied_by(input, &decidable) && decidable) {
      res.status = SolveStatus::Sat;
      for (std::size_t i = 0; i < cur.size(); ++i)
        res.model[csp.vars[i]] = static_cast<std::uint8_t>(cur[i]);
      return res;
    }
    // Advance odometer.
    std::size_t d = 0;
    while (d < cur.size()) {
      if (cur[d] < range[d][1]) {
        ++cur[d];
        break;
      }
      cur[d] = range[d][0];
      ++d;
    }
    if (d == cur.size()) break;
  }
  res.status = SolveStatus::Unsat;
  return res;
}

}  // namespace

Domains propagate_intervals(const PathCondition& pc) {
  Csp csp = build_csp(pc);
  Domains d;
  d.vars = csp.vars;
  d.range = csp.range;
  std::uint64_t steps = 0;
  if (!propagate(csp, d.range, steps)) {
    for (auto& r : d.range) r = {1, 0};
  }
  return d;
}

SolveResult solve(const PathCondition& pc, const SolveBudget& budget) {
  SolveResult res;
  bool has_nonlinear = false;
  for (const Atom& a : pc.atoms) {
    if (!a.is_nonlinear()) continue;
    has_nonlinear = true;
    if (!a.nonlinear->eval) {
      res.status = SolveStatus::Unknown;  // unsupported combination
      return res;
    }
  }

  Csp csp = build_csp(pc);
  std::uint64_t prop_steps = 0;
  auto range = csp.range;
  if (!propagate(csp, range, prop_steps)) {
    res.status = SolveStatus::Unsat;
    res.steps = prop_steps;
    return res;
  }

  if (has_nonlinear) {
    if (pc.dim() > 3) {
      res.status = SolveStatus::Unknown;
      return res;
    }
    res = enumerate_lattice(pc, csp, range, budget);
    res.steps += prop_steps;
    return res;
  }

  Search search{csp, pc, budget};
  search.start = std::chrono::steady_clock::now();
  search.steps = prop_steps;
  std::size_t max_index = 0;
  for (ByteIndex v : pc.vars) max_index = std::max<std::size_t>(max_index, v + 1);
  search.scratch_input.assign(max_index, 0);

  std::vector<std::array<std::int32_t, 2>> solution;
  if (search.dfs(range, solution)) {
    res.status = SolveStatus::Sat;
    for (std::size_t i = 0; i < csp.vars.size(); ++i)
      res.model[csp.vars[i]] = static_cast<std::uint8_t>(solution[i][0]);
  } else if (search.out_of_budget) {
    res.status = SolveStatus::Unknown;
  } else {
    res.status = SolveStatus::Unsat;
  }
  res.steps = search.steps;
  return res;
}

}  // namespace trifuzz
