#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "trifuzz/program.hpp"

namespace trifuzz {

// Raised for both syntax errors (bad token, unknown opcode) and semantic
// errors (undefined block, register out of range). line/col are 1-based;
// semantic errors carry the line of the offending construct.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Parses the textual target format:
//
//   input <N>              # input length in bytes (default 0)
//   regs <N>               # register file size (default 16)
//   buf <name> <size>      # fixed-size word buffer
//   entry <fn>             # entry function (default "main")
//   fn <name> {
//   <label>: [lines <k>]
//     r<d> = input <byte>
//     r<d> = const <imm>
//     r<d> = <op> <reg|imm> <reg|imm>   # add sub mul div mod and or xor shl shr
//                                       # cmpeq cmpne cmplt cmple cmpult cmpule
//     r<d> = load <buf> <reg|imm>
//     store <buf> <reg|imm> <reg|imm>
//     assert r<n>
//     jmp <label> | br r<n> ? <label> : <label> | call <fn> <label>
//       | ret | halt | crash <div0|assert|overflow>
//   }
//
// Returns a validated program: entry exists, call and branch targets
// resolve, register/input indices are in range, every block is reachable
// from its function entry, and CondBranch targets are distinct.
TargetProgram parse_program(std::string_view text);

TargetProgram parse_program_file(const std::string& path);

}  // namespace trifuzz
