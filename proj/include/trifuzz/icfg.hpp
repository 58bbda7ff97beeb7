#pragma once

#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

#include "trifuzz/program.hpp"

namespace trifuzz {

struct Edge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  bool operator==(const Edge&) const = default;
};

inline std::uint64_t edge_key(Edge e) {
  return (static_cast<std::uint64_t>(e.src) << 32) | e.dst;
}

// Per-function control flow: square adjacency matrix over block indices
// plus the functions each block calls.
struct FunctionGraph {
  std::vector<std::vector<std::uint8_t>> adj;
  std::vector<std::vector<std::uint8_t>> reach;  // transitive closure of adj (reflexive)
  std::vector<std::set<std::uint32_t>> callees_per_block;
};

// Interprocedural control flow graph. Edges cover intra-function flow
// (a Call block falls through to its return block), call edges into the
// callee entry, and return edges back to the call's return block.
struct Icfg {
  const TargetProgram* program = nullptr;
  std::vector<FunctionGraph> fn_graphs;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> edge_set;

  // Branch site info, indexed by gid.
  std::vector<std::uint8_t> is_branch_site;
  std::vector<std::uint32_t> branch_target[2];  // [0]=false target gid, [1]=true target gid
  std::vector<std::uint32_t> branch_sites;      // gids with CondBranch terminators

  // Function sets reachable from each gid through calls, transitively.
  std::vector<std::set<std::uint32_t>> reachable_fns;

  bool has_edge(Edge e) const { return edge_set.count(edge_key(e)) != 0; }

  // Blocks reachable from `gid`, including itself: intra-function blocks via
  // the adjacency closure, plus every block of every reachable function.
  std::vector<std::uint32_t> reachable_blocks(std::uint32_t gid) const;
};

Icfg build_icfg(const TargetProgram& p);

}  // namespace trifuzz
