#include "trifuzz/constraints.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace trifuzz {

Rel negate_rel(Rel r) {
  switch (r) {
    case Rel::Eq: return Rel::Ne;
    case Rel::Ne: return Rel::Eq;
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Gt: return Rel::Le;
    case Rel::Ge: return Rel::Lt;
  }
  return Rel::Eq;
}

const char* rel_name(Rel r) {
  switch (r) {
    case Rel::Eq: return "==";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
  }
  return "?";
}

Atom negate(const Atom& a) {
  Atom out = a;
  if (a.is_nonlinear())
    out.nonlinear_expect = !a.nonlinear_expect;
  else
    out.rel = negate_rel(a.rel);
  return out;
}

bool eval_atom(const Atom& a, std::span<const std::uint8_t> input, bool* decidable) {
  if (decidable) *decidable = true;
  if (a.is_nonlinear()) {
    if (!a.nonlinear->eval) {
      if (decidable) *decidable = false;
      return true;
    }
    return a.nonlinear->eval(input) == a.nonlinear_expect;
  }
  __int128 v = a.lhs.eval(input);
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

void PathCondition::recompute_vars() {
  std::set<ByteIndex> s;
  for (const Atom& a : atoms) {
    if (a.is_nonlinear()) {
      s.insert(a.nonlinear->support.begin(), a.nonlinear->support.end());
    } else {
      for (const auto& [i, c] : a.lhs.coeffs) s.insert(i);
    }
  }
  vars.assign(s.begin(), s.end());
}

bool PathCondition::satisfied_by(std::span<const std::uint8_t> input,
                                 bool* decidable) const {
  bool all_decidable = true;
  for (const Atom& a : atoms) {
    bool d = true;
    if (!eval_atom(a, input, &d)) return false;
    all_decidable = all_decidable && d;
  }
  if (decidable) *decidable = all_decidable;
  return true;
}

PathCondition make_path_condition(std::vector<Atom> atoms) {
  PathCondition pc;
  pc.atoms = std::move(atoms);
  pc.recompute_vars();
  return pc;
}

std::string to_debug_string(const Atom& a) {
  std::ostringstream os;
  if (a.is_nonlinear()) {
    os << "nl#" << a.nonlinear->tag;
    if (!a.nonlinear->desc.empty()) os << "(" << a.nonlinear->desc << ")";
    os << " == " << (a.nonlinear_expect ? "true" : "false");
    return os.str();
  }
  if (a.lhs.coeffs.empty()) {
    os << a.lhs.constant << " " << rel_name(a.rel) << " 0";
    return os.str();
  }
  bool first = true;
  for (const auto& [i, c] : a.lhs.coeffs) {
    if (first) {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c << "*";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      std::int64_t mag = c < 0 ? -c : c;
      if (mag != 1) os << mag << "*";
    }
    os << "x" << i;
  }
  os << " " << rel_name(a.rel) << " " << -a.lhs.constant;
  return os.str();
}

std::string to_debug_string(const PathCondition& pc) {
  std::string out;
  for (const Atom& a : pc.atoms) {
    out += to_debug_string(a);
    out += "\n";
  }
  return out;
}

}  // namespace trifuzz
