#include <doctest.h>

#include "test_util.hpp"
#include "trifuzz/icfg.hpp"

using namespace trifuzz;
using namespace trifuzz::test;

TEST_CASE("straight-line three-block function yields two edges") {
  auto p = parse_program(
      "fn main {\n"
      "b0: jmp b1\n"
      "b1: jmp b2\n"
      "b2: halt\n"
      "}\n");
  auto g = build_icfg(p);
  CHECK(g.edges.size() == 2);
  int ones = 0;
  for (const auto& row : g.fn_graphs[0].adj)
    for (auto v : row) ones += v;
  CHECK(ones == 2);
}

TEST_CASE("diamond yields four edges") {
  auto p = parse_program(
      "input 1\n"
      "fn main {\n"
      "b0:\n"
      "  r0 = input 0\n"
      "  br r0 ? b1 : b2\n"
      "b1: jmp b3\n"
      "b2: jmp b3\n"
      "b3: halt\n"
      "}\n");
  auto g = build_icfg(p);
  CHECK(g.edges.size() == 4);
  CHECK(g.branch_sites.size() == 1);
  CHECK(g.is_branch_site[0] == 1);
}

TEST_CASE("call site produces call and return edges") {
  // Hand-drawn graph of callee.tgt:
  //   main.b0 -call-> scale.c0, scale.c0 -ret-> main.b1,
  //   main.b0 -> main.b1 fallthrough, plus the b1 conditional edges.
  auto p = load_fixture("callee.tgt");
  auto g = build_icfg(p);
  auto b0 = gid_of(p, "main", "b0");
  auto b1 = gid_of(p, "main", "b1");
  auto c0 = gid_of(p, "scale", "c0");
  CHECK(g.has_edge({b0, c0}));
  CHECK(g.has_edge({c0, b1}));
  CHECK(g.has_edge({b0, b1}));
  CHECK(g.has_edge({b1, gid_of(p, "main", "b2")}));
  CHECK(g.has_edge({b1, gid_of(p, "main", "b3")}));
  CHECK(g.edges.size() == 5);
  CHECK(g.fn_graphs[0].callees_per_block[0].count(1) == 1);
}

TEST_CASE("adjacency matrices are square") {
  auto p = load_fixture("doctype.tgt");
  auto g = build_icfg(p);
  for (std::size_t fi = 0; fi < p.functions.size(); ++fi) {
    const auto& fg = g.fn_graphs[fi];
    CHECK(fg.adj.size() == p.functions[fi].blocks.size());
    for (const auto& row : fg.adj) CHECK(row.size() == fg.adj.size());
  }
}

TEST_CASE("reachable blocks cross call boundaries") {
  auto p = load_fixture("callee.tgt");
  auto g = build_icfg(p);
  auto reach = g.reachable_blocks(gid_of(p, "main", "b0"));
  // Everything is reachable from the entry.
  CHECK(reach.size() == p.total_blocks);
  auto from_callee = g.reachable_blocks(gid_of(p, "scale", "c0"));
  // The callee does not reach back into main.
  CHECK(from_callee.size() == 1);
}
