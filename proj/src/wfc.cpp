#include "ventgen/wfc.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "ventgen/errors.hpp"
#include "ventgen/rng.hpp"

namespace ventgen {

namespace {

// Per-cell candidate sets as 64-bit masks plus a cached entropy per cell.
class WaveState {
 public:
  WaveState(int width, int height, const AdjacencyRules& rules,
            std::span<const double> weights)
      : width_(width),
        height_(height),
        tile_count_(rules.tile_count()),
        rules_(rules),
        weights_(weights.begin(), weights.end()) {
    const std::uint64_t full = tile_count_ == 64
                                   ? ~0ull
                                   : ((1ull << tile_count_) - 1ull);
    cells_.assign(static_cast<std::size_t>(width_) * height_, full);
    entropy_.assign(cells_.size(), 0.0);
    for (std::size_t i = 0; i < cells_.size(); ++i)
      entropy_[i] = shannon_entropy(cells_[i]);
  }

  std::uint64_t mask(int idx) const { return cells_[idx]; }
  int index(int row, int col) const { return row * width_ + col; }

  // Intersects a cell with `keep`; returns false on contradiction (empty set).
  // Changed cells are pushed onto the propagation queue.
  bool restrict_cell(int idx, std::uint64_t keep,
                     std::vector<int>& queue) {
    const std::uint64_t next = cells_[idx] & keep;
    if (next == cells_[idx]) return true;
    if (next == 0) return false;
    cells_[idx] = next;
    entropy_[idx] = shannon_entropy(next);
    queue.push_back(idx);
    return true;
  }

  // Constraint propagation from queued cells until a fixed point.
  bool propagate(std::vector<int>& queue) {
    while (!queue.empty()) {
      const int idx = queue.back();
      queue.pop_back();
      const int row = idx / width_;
      const int col = idx % width_;
      const std::uint64_t m = cells_[idx];
      for (Dir d : kDirs) {
        const int nr = row + row_step(d);
        const int nc = col + col_step(d);
        if (nr < 0 || nr >= height_ || nc < 0 || nc >= width_) continue;
        std::uint64_t allowed = 0;
        std::uint64_t bits = m;
        while (bits) {
          const int t = std::countr_zero(bits);
          bits &= bits - 1;
          allowed |= rules_.allowed_mask(static_cast<TileId>(t), d);
        }
        if (!restrict_cell(index(nr, nc), allowed, queue)) return false;
      }
    }
    return true;
  }

  // Lowest-entropy undecided cell; ties broken by lowest (row, col), i.e.
  // lowest linear index under row-major order. -1 when fully collapsed.
  int lowest_entropy_cell() const {
    int best = -1;
    double best_h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (std::popcount(cells_[i]) <= 1) continue;
      if (entropy_[i] < best_h) {
        best_h = entropy_[i];
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  // Collapse one cell to a tile sampled proportionally to weight.
  void observe(int idx, Rng& rng, std::vector<int>& queue) {
    std::uint64_t bits = cells_[idx];
    double total = 0.0;
    while (bits) {
      const int t = std::countr_zero(bits);
      bits &= bits - 1;
      total += weights_[t];
    }
    double r = rng.uniform() * total;
    bits = cells_[idx];
    int pick = std::countr_zero(bits);
    while (bits) {
      const int t = std::countr_zero(bits);
      bits &= bits - 1;
      pick = t;
      r -= weights_[t];
      if (r <= 0.0) break;
    }
    cells_[idx] = 1ull << pick;
    entropy_[idx] = 0.0;
    queue.push_back(idx);
  }

  bool fully_collapsed() const {
    for (std::uint64_t m : cells_)
      if (std::popcount(m) != 1) return false;
    return true;
  }

  Grid to_grid() const {
    Grid g;
    g.width = width_;
    g.height = height_;
    g.cells.resize(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      g.cells[i] = static_cast<TileId>(std::countr_zero(cells_[i]));
    return g;
  }

 private:
  double shannon_entropy(std::uint64_t mask) const {
    double total = 0.0, wlogw = 0.0;
    std::uint64_t bits = mask;
    while (bits) {
      const int t = std::countr_zero(bits);
      bits &= bits - 1;
      const double w = weights_[t];
      total += w;
      wlogw += w * std::log(w);
    }
    return std::log(total) - wlogw / total;
  }

  int width_;
  int height_;
  int tile_count_;
  const AdjacencyRules& rules_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> cells_;
  std::vector<double> entropy_;
};

enum class AttemptOutcome { Solved, Contradiction, StuckBeforeObservation };

AttemptOutcome attempt(const TileSet& tileset, const AdjacencyRules& rules,
                       int width, int height, std::uint64_t attempt_seed,
                       const SolveOptions& options, Grid& out) {
  std::vector<double> weights;
  weights.reserve(tileset.tiles.size());
  for (const Tile& t : tileset.tiles) weights.push_back(t.weight);

  WaveState wave(width, height, rules, weights);
  std::vector<int> queue;

  if (options.border_empty) {
    int empty_id = -1;
    for (const Tile& t : tileset.tiles)
      if (role_from_name(t.name) == TileRole::Empty) empty_id = t.id;
    if (empty_id < 0)
      throw InvalidInputError("solve: border_empty requires a tile named 'empty'");
    const std::uint64_t empty_mask = 1ull << empty_id;
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        if (r != 0 && r != height - 1 && c != 0 && c != width - 1) continue;
        if (!wave.restrict_cell(wave.index(r, c), empty_mask, queue))
          return AttemptOutcome::StuckBeforeObservation;
      }
    if (!wave.propagate(queue)) return AttemptOutcome::StuckBeforeObservation;
  }

  Rng rng(attempt_seed);
  while (true) {
    const int idx = wave.lowest_entropy_cell();
    if (idx < 0) break;
    wave.observe(idx, rng, queue);
    if (!wave.propagate(queue)) return AttemptOutcome::Contradiction;
  }
  if (!wave.fully_collapsed()) return AttemptOutcome::Contradiction;
  out = wave.to_grid();
  return AttemptOutcome::Solved;
}

}  // namespace

Grid solve(const TileSet& tileset, const AdjacencyRules& rules, int width,
           int height, std::uint64_t seed, const SolveOptions& options) {
  tileset.validate();
  if (tileset.size() != rules.tile_count())
    throw InvalidInputError("solve: tileset and rules disagree on tile count");
  if (width < 1 || height < 1)
    throw InvalidInputError("solve: dimensions must be >= 1");
  if (rules.degenerate())
    throw InvalidInputError("solve: degenerate rule set (a tile has no allowed neighbor in some direction)");
  if (options.restart_cap < 1)
    throw InvalidInputError("solve: restart cap must be >= 1");

  for (int att = 0; att < options.restart_cap; ++att) {
    Grid out;
    const std::uint64_t attempt_seed = derive_seed(seed, 0x57fc, att);
    switch (attempt(tileset, rules, width, height, attempt_seed, options, out)) {
      case AttemptOutcome::Solved:
        return out;
      case AttemptOutcome::StuckBeforeObservation:
        // Deterministic failure: restarting cannot help.
        throw UnsatisfiableError("solve: contradiction before first observation");
      case AttemptOutcome::Contradiction:
        break;
    }
  }
  throw UnsatisfiableError("solve: restart cap of " +
                           std::to_string(options.restart_cap) +
                           " exhausted (unsatisfiable or under-budgeted)");
}

bool satisfies(const Grid& grid, const AdjacencyRules& rules) {
  for (int r = 0; r < grid.height; ++r)
    for (int c = 0; c < grid.width; ++c) {
      if (c + 1 < grid.width &&
          !rules.allowed(grid.at(r, c), Dir::East, grid.at(r, c + 1)))
        return false;
      if (r + 1 < grid.height &&
          !rules.allowed(grid.at(r, c), Dir::South, grid.at(r + 1, c)))
        return false;
    }
  return true;
}

namespace {

BatchItem generate_one(const TileSet& tileset, const AdjacencyRules& rules,
                       const BatchParams& params, int i) {
  BatchItem item;
  item.weight_seed = derive_seed(params.master_seed, 1, static_cast<std::uint64_t>(i));
  item.solve_seed = derive_seed(params.master_seed, 2, static_cast<std::uint64_t>(i));
  const TileSet sampled = sample_weights(tileset, item.weight_seed,
                                         params.weight_min, params.weight_max);
  item.weights.reserve(sampled.tiles.size());
  for (const Tile& t : sampled.tiles) item.weights.push_back(t.weight);
  item.grid = solve(sampled, rules, params.width, params.height, item.solve_seed,
                    params.solve);
  return item;
}

}  // namespace

std::vector<BatchItem> generate_batch_serial(const TileSet& tileset,
                                             const AdjacencyRules& rules,
                                             const BatchParams& params) {
  std::vector<BatchItem> items(static_cast<std::size_t>(params.count));
  for (int i = 0; i < params.count; ++i)
    items[i] = generate_one(tileset, rules, params, i);
  return items;
}

std::vector<BatchItem> generate_batch(const TileSet& tileset,
                                      const AdjacencyRules& rules,
                                      const BatchParams& params, int jobs) {
  if (jobs <= 1) return generate_batch_serial(tileset, rules, params);
  std::vector<BatchItem> items(static_cast<std::size_t>(params.count));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int i = 0; i < params.count; ++i) {
    try {
      items[i] = generate_one(tileset, rules, params, i);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return items;
}

}  // namespace ventgen
