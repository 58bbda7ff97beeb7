#pragma once

#include <string>
#include <vector>

#include "trifuzz/icfg.hpp"
#include "trifuzz/interp.hpp"
#include "trifuzz/parser.hpp"

namespace trifuzz::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(TRIFUZZ_FIXTURE_DIR) + "/" + name;
}

inline TargetProgram load_fixture(const std::string& name) {
  return parse_program_file(fixture_path(name));
}

inline std::vector<std::uint8_t> bytes(std::initializer_list<int> vals) {
  std::vector<std::uint8_t> out;
  for (int v : vals) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

inline std::vector<std::uint8_t> zeros(std::size_t n) {
  return std::vector<std::uint8_t>(n, 0);
}

// Finds the gid of "fn.label".
inline std::uint32_t gid_of(const TargetProgram& p, const std::string& fn,
                            const std::string& label) {
  for (std::uint32_t fi = 0; fi < p.functions.size(); ++fi) {
    if (p.functions[fi].name != fn) continue;
    for (std::uint32_t bi = 0; bi < p.functions[fi].blocks.size(); ++bi)
      if (p.functions[fi].blocks[bi].label == label) return p.gid(fi, bi);
  }
  throw std::runtime_error("no block " + fn + "." + label);
}

}  // namespace trifuzz::test
