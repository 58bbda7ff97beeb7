#include <doctest.h>

#include "test_util.hpp"
#include "trifuzz/parser.hpp"

using namespace trifuzz;
using namespace trifuzz::test;

TEST_CASE("minimal one-block program parses") {
  auto p = parse_program("fn main { b0: halt }\n");
  CHECK(p.functions.size() == 1);
  CHECK(p.functions[0].blocks.size() == 1);
  CHECK(p.input_len == 0);
  CHECK(p.entry == 0);
  CHECK(p.functions[0].blocks[0].term.kind == TermKind::Halt);
}

TEST_CASE("branch to undefined block is a semantic error naming the block") {
  const char* src =
      "input 1\n"
      "fn main {\n"
      "b0:\n"
      "  r0 = input 0\n"
      "  br r0 ? b1 : nowhere\n"
      "b1: halt\n"
      "}\n";
  CHECK_THROWS_WITH_AS(parse_program(src),
                       doctest::Contains("undefined block 'nowhere'"), ParseError);
}

TEST_CASE("unknown opcode is rejected with position") {
  const char* src =
      "fn main {\n"
      "b0:\n"
      "  r0 = frobnicate 1 2\n"
      "  halt\n"
      "}\n";
  try {
    parse_program(src);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("unknown opcode") != std::string::npos);
  }
}

TEST_CASE("register out of declared range is rejected") {
  const char* src =
      "regs 4\n"
      "fn main {\n"
      "b0:\n"
      "  r7 = const 1\n"
      "  halt\n"
      "}\n";
  CHECK_THROWS_WITH_AS(parse_program(src), doctest::Contains("out of range"),
                       ParseError);
}

TEST_CASE("input index out of range is rejected") {
  const char* src =
      "input 2\n"
      "fn main {\n"
      "b0:\n"
      "  r0 = input 5\n"
      "  halt\n"
      "}\n";
  CHECK_THROWS_AS(parse_program(src), ParseError);
}

TEST_CASE("cond branch with identical targets is rejected") {
  const char* src =
      "input 1\n"
      "fn main {\n"
      "b0:\n"
      "  r0 = input 0\n"
      "  br r0 ? b1 : b1\n"
      "b1: halt\n"
      "}\n";
  CHECK_THROWS_AS(parse_program(src), ParseError);
}

TEST_CASE("unreachable block is rejected") {
  const char* src =
      "fn main {\n"
      "b0: halt\n"
      "b1: halt\n"
      "}\n";
  CHECK_THROWS_WITH_AS(parse_program(src), doctest::Contains("unreachable"),
                       ParseError);
}

TEST_CASE("undefined call target is rejected") {
  const char* src =
      "fn main {\n"
      "b0: call ghost b1\n"
      "b1: halt\n"
      "}\n";
  CHECK_THROWS_WITH_AS(parse_program(src), doctest::Contains("undefined function"),
                       ParseError);
}

TEST_CASE("line counts default to instruction count, at least one") {
  const char* src =
      "input 1\n"
      "fn main {\n"
      "b0:\n"
      "  r0 = input 0\n"
      "  r1 = add r0 1\n"
      "  jmp b1\n"
      "b1: halt\n"
      "}\n";
  auto p = parse_program(src);
  CHECK(p.functions[0].blocks[0].line_count == 2);
  CHECK(p.functions[0].blocks[1].line_count == 1);
}

TEST_CASE("explicit lines declaration wins") {
  auto p = parse_program("fn main {\nb0: lines 9\n  halt\n}\n");
  CHECK(p.functions[0].blocks[0].line_count == 9);
}

TEST_CASE("doctype fixture parses with a nine-conjunct guard") {
  auto p = load_fixture("doctype.tgt");
  CHECK(p.input_len == 12);
  const auto& entry = p.functions[p.entry].blocks[0];
  int cmps = 0, ands = 0;
  for (const auto& ins : entry.instructions) {
    if (ins.op == Opcode::CmpEq) ++cmps;
    if (ins.op == Opcode::And) ++ands;
  }
  CHECK(cmps == 9);
  CHECK(ands == 8);
  CHECK(entry.term.kind == TermKind::CondBranch);
}

TEST_CASE("all bundled fixtures parse") {
  for (const char* name :
       {"b1.tgt", "doctype.tgt", "b3.tgt", "twopaths.tgt", "loopy.tgt",
        "mulgate.tgt", "divcrash.tgt", "samplecrash.tgt", "callee.tgt"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_fixture(name));
  }
}
