#include <doctest.h>

#include <map>

#include "test_util.hpp"
#include "trifuzz/interp.hpp"
#include "trifuzz/rng.hpp"

using namespace trifuzz;
using namespace trifuzz::test;

namespace {

std::vector<std::uint8_t> doctype_input(bool magic) {
  std::vector<std::uint8_t> in(12, 'A');
  if (magic) {
    const char* m = "<!DOCTYPE";
    for (int i = 0; i < 9; ++i) in[i] = static_cast<std::uint8_t>(m[i]);
  }
  return in;
}

// Reconstructs the edge multiset of a trace by replaying its decisions
// through the ICFG alone; oracle for the branch/trace consistency check.
std::map<std::uint64_t, int> replay_decisions(const TargetProgram& p,
                                              const std::vector<Decision>& decisions) {
  std::map<std::uint64_t, int> edges;
  struct Frame {
    std::uint32_t fn, ret;
  };
  std::vector<Frame> stack;
  std::uint32_t fn = p.entry, blk = 0;
  std::size_t di = 0;
  while (true) {
    const auto& t = p.functions[fn].blocks[blk].term;
    std::uint32_t src = p.gid(fn, blk);
    switch (t.kind) {
      case TermKind::Jump:
        ++edges[edge_key({src, p.gid(fn, t.target)})];
        blk = t.target;
        break;
      case TermKind::CondBranch: {
        if (di >= decisions.size()) return edges;  // trace ended mid-path (crash)
        bool taken = decisions[di++].taken;
        std::uint32_t next = taken ? t.target : t.alt_target;
        ++edges[edge_key({src, p.gid(fn, next)})];
        blk = next;
        break;
      }
      case TermKind::Call:
        ++edges[edge_key({src, p.gid(t.callee, 0)})];
        stack.push_back({fn, t.return_block});
        fn = t.callee;
        blk = 0;
        break;
      case TermKind::Return:
        if (stack.empty()) return edges;
        ++edges[edge_key({src, p.gid(stack.back().fn, stack.back().ret)})];
        fn = stack.back().fn;
        blk = stack.back().ret;
        stack.pop_back();
        break;
      case TermKind::Halt:
      case TermKind::Crash:
        return edges;
    }
  }
}

std::map<std::uint64_t, int> edge_multiset(const Trace& t) {
  std::map<std::uint64_t, int> m;
  for (const auto& e : t.edges) ++m[edge_key(e)];
  return m;
}

}  // namespace

TEST_CASE("doctype guard decision follows the magic prefix") {
  auto p = load_fixture("doctype.tgt");
  auto guard = gid_of(p, "main", "b0");

  auto yes = execute(p, doctype_input(true));
  REQUIRE(!yes.decisions.empty());
  CHECK(yes.decisions[0] == Decision{guard, true});

  auto no = execute(p, doctype_input(false));
  REQUIRE(!no.decisions.empty());
  CHECK(no.decisions[0] == Decision{guard, false});
}

TEST_CASE("divcrash crashes with a one-frame stack on a zero divisor") {
  // Interpreting by hand: r0 = in[0], r1 = in[3] = 0, div faults at the
  // third instruction of main.b0.
  auto p = load_fixture("divcrash.tgt");
  auto in = bytes({9, 0, 0, 0});
  auto t = execute(p, in);
  CHECK(t.outcome == Outcome::Crash);
  REQUIRE(t.crash.has_value());
  CHECK(t.crash->kind == CrashKind::DivByZero);
  CHECK(t.crash->stack == std::vector<std::uint32_t>{0});
  CHECK(t.decisions.empty());
}

TEST_CASE("callee crash carries a two-frame stack") {
  auto p = load_fixture("callee.tgt");
  auto t = execute(p, zeros(4));
  CHECK(t.outcome == Outcome::Crash);
  REQUIRE(t.crash.has_value());
  CHECK(t.crash->kind == CrashKind::DivByZero);
  REQUIRE(t.crash->stack.size() == 2);
  CHECK(p.functions[t.crash->stack[0]].name == "scale");
  CHECK(p.functions[t.crash->stack[1]].name == "main");
}

TEST_CASE("input length mismatch is an error") {
  auto p = load_fixture("b1.tgt");
  CHECK_THROWS_AS(execute(p, zeros(3)), std::invalid_argument);
}

TEST_CASE("step budget exceeded is reported, not a crash") {
  auto p = parse_program(
      "fn main {\n"
      "b0: jmp b1\n"
      "b1: jmp b0\n"
      "}\n");
  auto t = execute(p, {}, 100);
  CHECK(t.outcome == Outcome::StepBudgetExceeded);
  CHECK(t.steps == 100);
}

TEST_CASE("buffer access out of range crashes") {
  auto p = load_fixture("samplecrash.tgt");
  auto in = bytes({65, 0, 0, 0, 255, 0});
  auto t = execute(p, in);
  CHECK(t.outcome == Outcome::Crash);
  CHECK(t.crash->kind == CrashKind::BufOverflow);

  auto ok = execute(p, bytes({65, 0, 0, 0, 10, 0}));
  CHECK(ok.outcome == Outcome::Normal);
}

TEST_CASE("execution is deterministic and consistent across fixtures") {
  Rng rng(7);
  for (const char* name : {"b1.tgt", "doctype.tgt", "b3.tgt", "twopaths.tgt",
                           "loopy.tgt", "mulgate.tgt", "callee.tgt"}) {
    CAPTURE(name);
    auto p = load_fixture(name);
    auto g = build_icfg(p);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint8_t> in(p.input_len);
      for (auto& b : in) b = static_cast<std::uint8_t>(rng.below(256));

      auto t1 = execute(p, in);
      auto t2 = execute(p, in);
      // Determinism.
      CHECK(t1.outcome == t2.outcome);
      CHECK(t1.edges.size() == t2.edges.size());
      CHECK(t1.decisions == t2.decisions);
      CHECK(path_hash(t1.decisions) == path_hash(t2.decisions));
      // Coverage soundness: every trace edge exists in the ICFG.
      for (const auto& e : t1.edges) CHECK(g.has_edge(e));
      // Branch/trace consistency: decisions alone reconstruct the edges.
      // A crash or exhausted budget ends the trace mid-block, so the
      // replay may run past it; the trace is then a sub-multiset.
      auto replayed = replay_decisions(p, t1.decisions);
      auto actual = edge_multiset(t1);
      if (t1.outcome == Outcome::Normal) {
        CHECK(replayed == actual);
      } else {
        for (const auto& [k, n] : actual) CHECK(replayed[k] >= n);
      }
      // Decision count equals CondBranch executions by construction;
      // crash traces carry a call stack, normal ones do not.
      CHECK((t1.outcome == Outcome::Crash) == t1.crash.has_value());
    }
  }
}
