#include "trifuzz/program.hpp"

namespace trifuzz {

const char* crash_kind_name(CrashKind k) {
  switch (k) {
    case CrashKind::DivByZero:
      return "divbyzero";
    case CrashKind::AssertFail:
      return "assertfail";
    case CrashKind::BufOverflow:
      return "bufoverflow";
  }
  return "unknown";
}

void TargetProgram::rebuild_gids() {
  fn_gid_offset.clear();
  std::uint32_t off = 0;
  for (const auto& f : functions) {
    fn_gid_offset.push_back(off);
    off += static_cast<std::uint32_t>(f.blocks.size());
  }
  total_blocks = off;
}

std::pair<std::uint32_t, std::uint32_t> TargetProgram::gid_to_block(
    std::uint32_t g) const {
  std::uint32_t fn = 0;
  for (std::uint32_t i = 0; i < functions.size(); ++i) {
    if (fn_gid_offset[i] <= g) fn = i;
  }
  return {fn, g - fn_gid_offset[fn]};
}

const BasicBlock& TargetProgram::block(std::uint32_t g) const {
  auto [fn, blk] = gid_to_block(g);
  return functions[fn].blocks[blk];
}

std::string TargetProgram::block_name(std::uint32_t g) const {
  auto [fn, blk] = gid_to_block(g);
  return functions[fn].name + "." + functions[fn].blocks[blk].label;
}

std::uint64_t TargetProgram::modeled_lines() const {
  std::uint64_t n = 0;
  for (const auto& f : functions)
    for (const auto& b : f.blocks) n += b.line_count;
  return n;
}

}  // namespace trifuzz
