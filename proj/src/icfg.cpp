#include "trifuzz/icfg.hpp"

#include <deque>

namespace trifuzz {

namespace {

void add_edge(Icfg& g, std::uint32_t src, std::uint32_t dst) {
  Edge e{src, dst};
  if (g.edge_set.insert(edge_key(e)).second) g.edges.push_back(e);
}

// Reflexive transitive closure of a small adjacency matrix.
std::vector<std::vector<std::uint8_t>> close(
    const std::vector<std::vector<std::uint8_t>>& adj) {
  std::size_t n = adj.size();
  auto reach = adj;
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  return reach;
}

}  // namespace

Icfg build_icfg(const TargetProgram& p) {
  Icfg g;
  g.program = &p;
  g.is_branch_site.assign(p.total_blocks, 0);
  g.branch_target[0].assign(p.total_blocks, 0);
  g.branch_target[1].assign(p.total_blocks, 0);

  for (std::uint32_t fi = 0; fi < p.functions.size(); ++fi) {
    const Function& f = p.functions[fi];
    FunctionGraph fg;
    std::size_t n = f.blocks.size();
    fg.adj.assign(n, std::vector<std::uint8_t>(n, 0));
    fg.callees_per_block.assign(n, {});

    for (std::uint32_t bi = 0; bi < n; ++bi) {
      const Terminator& t = f.blocks[bi].term;
      std::uint32_t src = p.gid(fi, bi);
      switch (t.kind) {
        case TermKind::Jump:
          fg.adj[bi][t.target] = 1;
          add_edge(g, src, p.gid(fi, t.target));
          break;
        case TermKind::CondBranch:
          fg.adj[bi][t.target] = 1;
          fg.adj[bi][t.alt_target] = 1;
          add_edge(g, src, p.gid(fi, t.target));
          add_edge(g, src, p.gid(fi, t.alt_target));
          g.is_branch_site[src] = 1;
          g.branch_target[1][src] = p.gid(fi, t.target);
          g.branch_target[0][src] = p.gid(fi, t.alt_target);
          g.branch_sites.push_back(src);
          break;
        case TermKind::Call: {
          // The caller resumes at return_block, so intra-function flow
          // falls through; the call and return edges are interprocedural.
          fg.adj[bi][t.return_block] = 1;
          add_edge(g, src, p.gid(fi, t.return_block));
          fg.callees_per_block[bi].insert(t.callee);
          add_edge(g, src, p.gid(t.callee, 0));
          const Function& callee = p.functions[t.callee];
          for (std::uint32_t cb = 0; cb < callee.blocks.size(); ++cb)
            if (callee.blocks[cb].term.kind == TermKind::Return)
              add_edge(g, p.gid(t.callee, cb), p.gid(fi, t.return_block));
          break;
        }
        case TermKind::Return:
        case TermKind::Halt:
        case TermKind::Crash:
          break;
      }
    }
    fg.reach = close(fg.adj);
    g.fn_graphs.push_back(std::move(fg));
  }

  // Functions reachable from each function, through calls anywhere in the
  // body (every block is reachable from the function entry).
  std::vector<std::set<std::uint32_t>> fn_calls(p.functions.size());
  for (std::uint32_t fi = 0; fi < p.functions.size(); ++fi)
    for (const auto& s : g.fn_graphs[fi].callees_per_block)
      fn_calls[fi].insert(s.begin(), s.end());
  std::vector<std::set<std::uint32_t>> fn_closure = fn_calls;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t fi = 0; fi < p.functions.size(); ++fi) {
      auto& cl = fn_closure[fi];
      std::size_t before = cl.size();
      for (std::uint32_t callee : std::set<std::uint32_t>(cl))
        cl.insert(fn_closure[callee].begin(), fn_closure[callee].end());
      if (cl.size() != before) changed = true;
    }
  }

  // Per-block reachable function sets: callees of intra-reachable blocks,
  // plus everything those callees reach.
  g.reachable_fns.assign(p.total_blocks, {});
  for (std::uint32_t fi = 0; fi < p.functions.size(); ++fi) {
    const FunctionGraph& fg = g.fn_graphs[fi];
    for (std::uint32_t bi = 0; bi < p.functions[fi].blocks.size(); ++bi) {
      auto& out = g.reachable_fns[p.gid(fi, bi)];
      for (std::uint32_t other = 0; other < p.functions[fi].blocks.size(); ++other) {
        if (!fg.reach[bi][other]) continue;
        for (std::uint32_t callee : fg.callees_per_block[other]) {
          out.insert(callee);
          out.insert(fn_closure[callee].begin(), fn_closure[callee].end());
        }
      }
    }
  }

  return g;
}

std::vector<std::uint32_t> Icfg::reachable_blocks(std::uint32_t gid) const {
  const TargetProgram& p = *program;
  auto [fi, bi] = p.gid_to_block(gid);
  std::vector<std::uint8_t> mark(p.total_blocks, 0);
  const FunctionGraph& fg = fn_graphs[fi];
  for (std::uint32_t other = 0; other < p.functions[fi].blocks.size(); ++other)
    if (fg.reach[bi][other]) mark[p.gid(fi, other)] = 1;
  for (std::uint32_t fn : reachable_fns[gid])
    for (std::uint32_t b = 0; b < p.functions[fn].blocks.size(); ++b)
      mark[p.gid(fn, b)] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t g2 = 0; g2 < p.total_blocks; ++g2)
    if (mark[g2]) out.push_back(g2);
  return out;
}

}  // namespace trifuzz
