#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "trifuzz/abstraction.hpp"
#include "trifuzz/rng.hpp"

namespace trifuzz {

enum class SampleStatus : std::uint8_t { Ok, Degenerate, Infeasible };

struct SampleResult {
  SampleStatus status = SampleStatus::Ok;
  // Byte assignments over the abstraction's vars, deduplicated after
  // rounding, in generation order.
  std::vector<std::map<ByteIndex, std::uint8_t>> points;
  // Pre-rounding walk positions (one per generated point, before dedup);
  // each satisfies every polytope row.
  std::vector<std::vector<double>> raw;
};

// Approximately uniform sampling of a polytope by hit-and-run: variables
// pinned to a single value by propagation are fixed, a strictly interior
// point of the rest is located by Chebyshev-style margin ascent, and the
// walk runs with burn-in 10*dim and thinning dim between samples. Chord
// lengths are capped at a multiple of the local Dikin radius. Points are
// rounded to the byte lattice and deduplicated.
//  - All variables pinned: the single lattice point (when feasible).
//  - Free variables but no interior: Degenerate (caller falls back to
//    solve()).
SampleResult sample_polytope(const Polytope& p, std::size_t n, Rng& rng);

// Independent uniform integer draws per dimension, deduplicated.
SampleResult sample_box(const Box& b, std::size_t n, Rng& rng);

}  // namespace trifuzz
