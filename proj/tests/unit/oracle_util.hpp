#pragma once

// Test-side oracles, independent of the library implementations they check.

#include <cstdint>
#include <functional>
#include <vector>

#include "trifuzz/constraints.hpp"
#include "trifuzz/rng.hpp"

namespace trifuzz::test {

// Independent atom evaluator: walks the raw fields with plain double-free
// integer arithmetic rather than calling eval_atom.
inline bool oracle_atom_holds(const Atom& a, const std::vector<std::uint8_t>& input) {
  if (a.is_nonlinear()) {
    if (!a.nonlinear->eval) return true;
    return a.nonlinear->eval(input) == a.nonlinear_expect;
  }
  long long v = a.lhs.constant;
  for (const auto& [i, c] : a.lhs.coeffs)
    v += c * static_cast<long long>(i < input.size() ? input[i] : 0);
  switch (a.rel) {
    case Rel::Eq: return v == 0;
    case Rel::Ne: return v != 0;
    case Rel::Lt: return v < 0;
    case Rel::Le: return v <= 0;
    case Rel::Gt: return v > 0;
    case Rel::Ge: return v >= 0;
  }
  return false;
}

inline bool oracle_pc_holds(const PathCondition& pc,
                            const std::vector<std::uint8_t>& input) {
  for (const Atom& a : pc.atoms)
    if (!oracle_atom_holds(a, input)) return false;
  return true;
}

// Exhaustive enumeration over {0..255}^dim for dim <= 2; calls `fn` with
// a full input vector sized to cover the condition's variables.
inline void enumerate_solutions(const PathCondition& pc,
                                const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
  std::size_t max_index = 0;
  for (ByteIndex v : pc.vars) max_index = std::max<std::size_t>(max_index, v + 1);
  std::vector<std::uint8_t> input(max_index, 0);
  if (pc.vars.empty()) {
    if (oracle_pc_holds(pc, input)) fn(input);
    return;
  }
  if (pc.vars.size() == 1) {
    for (int a = 0; a < 256; ++a) {
      input[pc.vars[0]] = static_cast<std::uint8_t>(a);
      if (oracle_pc_holds(pc, input)) fn(input);
    }
    return;
  }
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; ++b) {
      input[pc.vars[0]] = static_cast<std::uint8_t>(a);
      input[pc.vars[1]] = static_cast<std::uint8_t>(b);
      if (oracle_pc_holds(pc, input)) fn(input);
    }
}

inline bool oracle_has_solution(const PathCondition& pc) {
  bool found = false;
  enumerate_solutions(pc, [&](const auto&) { found = true; });
  return found;
}

// Random linear path conditions of dimension <= 2 over two byte variables.
inline PathCondition random_pc(Rng& rng, bool allow_nonlinear = false) {
  ByteIndex v0 = static_cast<ByteIndex>(rng.below(4));
  ByteIndex v1 = static_cast<ByteIndex>(rng.below(4));
  int n_atoms = 1 + static_cast<int>(rng.below(4));
  std::vector<Atom> atoms;
  for (int i = 0; i < n_atoms; ++i) {
    LinExpr e;
    ByteIndex vars[2] = {v0, v1};
    for (ByteIndex v : vars) {
      std::int64_t c = static_cast<std::int64_t>(rng.below(7)) - 3;
      if (c != 0) e.add_term(v, c);
    }
    e.constant = static_cast<std::int64_t>(rng.below(1201)) - 600;
    Rel rel = static_cast<Rel>(rng.below(6));
    atoms.push_back(Atom::linear(std::move(e), rel));
  }
  if (allow_nonlinear && rng.chance(0.25)) {
    // x_v0 * x_v1 compared against a threshold; evaluable closure.
    auto fn = std::make_shared<NonlinearFn>();
    std::uint64_t thr = rng.below(5000);
    fn->eval = [v0, v1, thr](std::span<const std::uint8_t> in) {
      std::uint64_t a = v0 < in.size() ? in[v0] : 0;
      std::uint64_t b = v1 < in.size() ? in[v1] : 0;
      return a * b >= thr;
    };
    fn->support = v0 == v1 ? std::vector<ByteIndex>{v0} : std::vector<ByteIndex>{v0, v1};
    fn->desc = "mulge";
    atoms.push_back(Atom::opaque(fn, rng.chance(0.5)));
  }
  return make_path_condition(std::move(atoms));
}

}  // namespace trifuzz::test
