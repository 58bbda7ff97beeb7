#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace trifuzz {

using Word = std::uint64_t;

enum class CrashKind : std::uint8_t { DivByZero, AssertFail, BufOverflow };

const char* crash_kind_name(CrashKind k);

enum class Opcode : std::uint8_t {
  LoadInput,
  Const,
  Add,
  Sub,
  Mul,
  DivU,
  ModU,
  And,
  Or,
  Xor,
  Shl,
  Shr,
  CmpEq,
  CmpNe,
  CmpLtS,
  CmpLeS,
  CmpLtU,
  CmpLeU,
  BufWrite,
  BufRead,
  Assert,
};

struct Operand {
  bool imm = false;
  std::uint8_t reg = 0;
  Word value = 0;  // immediate payload when imm
};

// One register-machine instruction. Meaning of the fields by opcode:
//   LoadInput  dst <- input[a.value]
//   Const      dst <- a.value
//   binary ops dst <- a OP b            (b may be an immediate)
//   BufRead    dst <- buffer[a]         (buffer index in `buffer`)
//   BufWrite   buffer[a] <- b
//   Assert     crash(AssertFail) when a == 0
struct Instruction {
  Opcode op;
  std::uint8_t dst = 0;
  Operand a;
  Operand b;
  std::uint16_t buffer = 0;
};

enum class TermKind : std::uint8_t { Jump, CondBranch, Call, Return, Halt, Crash };

struct Terminator {
  TermKind kind = TermKind::Halt;
  std::uint8_t cond_reg = 0;    // CondBranch: branch on reg != 0
  std::uint32_t target = 0;     // Jump target / CondBranch true target
  std::uint32_t alt_target = 0; // CondBranch false target
  std::uint32_t callee = 0;     // Call: function index
  std::uint32_t return_block = 0;
  CrashKind crash_kind = CrashKind::AssertFail;
};

struct BasicBlock {
  std::string label;
  std::vector<Instruction> instructions;
  Terminator term;
  // Number of source lines this block stands for; defaults to the
  // instruction count (at least 1) when the text does not declare it.
  std::uint32_t line_count = 1;
};

struct Function {
  std::string name;
  std::vector<BasicBlock> blocks;  // entry is blocks[0]
};

// A parsed and validated target. Blocks are addressed globally by `gid`,
// a dense index over functions in declaration order; the numbering is a
// pure function of the program, so every component agrees on it.
struct TargetProgram {
  std::vector<Function> functions;
  std::uint32_t entry = 0;
  std::uint32_t input_len = 0;
  std::uint32_t reg_count = 16;
  std::vector<std::pair<std::string, std::uint32_t>> buffers;  // name, size

  std::vector<std::uint32_t> fn_gid_offset;  // per function
  std::uint32_t total_blocks = 0;

  void rebuild_gids();
  std::uint32_t gid(std::uint32_t fn, std::uint32_t blk) const {
    return fn_gid_offset[fn] + blk;
  }
  std::pair<std::uint32_t, std::uint32_t> gid_to_block(std::uint32_t gid) const;
  const BasicBlock& block(std::uint32_t gid) const;
  std::string block_name(std::uint32_t gid) const;  // "fn.label"
  std::uint64_t modeled_lines() const;
};

}  // namespace trifuzz
