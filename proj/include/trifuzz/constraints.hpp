#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace trifuzz {

using ByteIndex = std::uint32_t;

// Integer-linear expression over input bytes: sum(coeff_i * x_i) + constant.
// The coefficient map never stores zeros.
struct LinExpr {
  std::map<ByteIndex, std::int64_t> coeffs;
  std::int64_t constant = 0;

  static LinExpr var(ByteIndex i) {
    LinExpr e;
    e.coeffs[i] = 1;
    return e;
  }
  static LinExpr of_const(std::int64_t c) {
    LinExpr e;
    e.constant = c;
    return e;
  }

  void add_term(ByteIndex i, std::int64_t c) {
    auto it = coeffs.find(i);
    if (it == coeffs.end()) {
      if (c != 0) coeffs[i] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }

  LinExpr& operator+=(const LinExpr& o) {
    for (const auto& [i, c] : o.coeffs) add_term(i, c);
    constant += o.constant;
    return *this;
  }
  LinExpr& operator-=(const LinExpr& o) {
    for (const auto& [i, c] : o.coeffs) add_term(i, -c);
    constant -= o.constant;
    return *this;
  }
  LinExpr& scale(std::int64_t k) {
    if (k == 0) {
      coeffs.clear();
      constant = 0;
      return *this;
    }
    for (auto& [i, c] : coeffs) c *= k;
    constant *= k;
    return *this;
  }
  bool is_const() const { return coeffs.empty(); }

  __int128 eval(std::span<const std::uint8_t> input) const {
    __int128 v = constant;
    for (const auto& [i, c] : coeffs)
      v += static_cast<__int128>(c) * (i < input.size() ? input[i] : 0);
    return v;
  }

  bool operator==(const LinExpr&) const = default;
};

enum class Rel : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

Rel negate_rel(Rel r);
const char* rel_name(Rel r);

// Opaque predicate over the input bytes, for conditions that do not
// normalize to linear form. `eval` may be empty when the value escaped
// tracking entirely (e.g. through a tainted buffer); such atoms cannot be
// solved or enumerated, only dropped by over-approximation.
struct NonlinearFn {
  std::function<bool(std::span<const std::uint8_t>)> eval;
  std::vector<ByteIndex> support;
  std::uint32_t tag = 0;
  std::string desc;
};

// One constraint. Linear atoms mean `lhs REL 0`; nonlinear atoms mean
// `nonlinear->eval(input) == nonlinear_expect`.
struct Atom {
  LinExpr lhs;
  Rel rel = Rel::Eq;
  std::shared_ptr<const NonlinearFn> nonlinear;
  bool nonlinear_expect = true;

  bool is_nonlinear() const { return nonlinear != nullptr; }

  static Atom linear(LinExpr e, Rel r) {
    Atom a;
    a.lhs = std::move(e);
    a.rel = r;
    return a;
  }
  static Atom opaque(std::shared_ptr<const NonlinearFn> fn, bool expect) {
    Atom a;
    a.nonlinear = std::move(fn);
    a.nonlinear_expect = expect;
    return a;
  }
};

Atom negate(const Atom& a);

// True when the assignment satisfies the atom. Nonlinear atoms without an
// evaluator are reported through `decidable` (and treated as satisfied).
bool eval_atom(const Atom& a, std::span<const std::uint8_t> input,
               bool* decidable = nullptr);

// Conjunction of atoms; vars is the sorted union of atom supports.
struct PathCondition {
  std::vector<Atom> atoms;
  std::vector<ByteIndex> vars;

  std::size_t dim() const { return vars.size(); }
  void recompute_vars();
  void append(const Atom& a) {
    atoms.push_back(a);
    recompute_vars();
  }
  bool satisfied_by(std::span<const std::uint8_t> input, bool* decidable = nullptr) const;
};

PathCondition make_path_condition(std::vector<Atom> atoms);

// Line-oriented debug form, one atom per line: "<lhs> <rel> <rhs>" with the
// integer constant moved to the right-hand side; nonlinear atoms render as
// "nl#<tag>(<desc>) == true|false".
std::string to_debug_string(const Atom& a);
std::string to_debug_string(const PathCondition& pc);

}  // namespace trifuzz
