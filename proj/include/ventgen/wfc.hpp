#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ventgen/tiles.hpp"

namespace ventgen {

struct SolveOptions {
  // Contradictions trigger a full restart with a sub-seed derived from
  // (seed, attempt); after restart_cap failed attempts the solve throws.
  int restart_cap = 100;
  // Constrain every edge cell to the tile named "empty" before solving.
  bool border_empty = false;
};

// Collapses a width x height grid against the rule set. Observation picks the
// cell with the lowest Shannon entropy over the normalized weights of its
// remaining candidates (ties broken by lowest (row, col)), then samples a tile
// proportionally to weight. Deterministic for fixed inputs.
//
// Throws InvalidInputError for degenerate rules or non-positive dimensions,
// UnsatisfiableError when the restart budget is exhausted or the instance is
// provably stuck before the first observation.
Grid solve(const TileSet& tileset, const AdjacencyRules& rules, int width,
           int height, std::uint64_t seed, const SolveOptions& options = {});

// Exhaustive adjacency check of a finished grid against the rules.
bool satisfies(const Grid& grid, const AdjacencyRules& rules);

// One generated solution plus the inputs that produced it.
struct BatchItem {
  std::uint64_t weight_seed = 0;
  std::uint64_t solve_seed = 0;
  std::vector<double> weights;
  Grid grid;
};

struct BatchParams {
  int width = 40;
  int height = 40;
  int count = 300;
  std::uint64_t master_seed = 0;
  double weight_min = 0.1;
  double weight_max = 10.0;
  SolveOptions solve;
};

// Batch generation: solution i gets per-tile weights sampled with
// derive_seed(master, 1, i) and is solved with derive_seed(master, 2, i).
// The OpenMP variant partitions solutions across threads; per-item outputs are
// written by index, so results are identical to the serial reference for any
// thread count.
std::vector<BatchItem> generate_batch(const TileSet& tileset,
                                      const AdjacencyRules& rules,
                                      const BatchParams& params, int jobs);

// Serial reference implementation, kept independent of the OpenMP path.
std::vector<BatchItem> generate_batch_serial(const TileSet& tileset,
                                             const AdjacencyRules& rules,
                                             const BatchParams& params);

}  // namespace ventgen
