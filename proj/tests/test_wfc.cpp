#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ventgen/errors.hpp"
#include "ventgen/rng.hpp"
#include "ventgen/tiles.hpp"
#include "ventgen/wfc.hpp"

namespace {

using namespace ventgen;

TileSet make_tileset(int n) {
  TileSet ts;
  for (int i = 0; i < n; ++i)
    ts.tiles.push_back({TileId(i), "tile" + std::to_string(i), 1.0});
  return ts;
}

std::string grid_key(const Grid& g) {
  std::string s;
  for (TileId t : g.cells) s += char('0' + t);
  return s;
}

// Independent oracle: enumerate every rule-satisfying assignment of a small
// grid by backtracking in row-major order (each placement only needs its
// north and west neighbors checked).
void enumerate_tilings(const AdjacencyRules& rules, int width, int height,
                       Grid& work, int pos, std::set<std::string>& out,
                       std::size_t cap) {
  if (out.size() >= cap) return;
  if (pos == width * height) {
    out.insert(grid_key(work));
    return;
  }
  const int r = pos / width, c = pos % width;
  for (int t = 0; t < rules.tile_count(); ++t) {
    if (r > 0 && !rules.allowed(work.at(r - 1, c), Dir::South, TileId(t))) continue;
    if (c > 0 && !rules.allowed(work.at(r, c - 1), Dir::East, TileId(t))) continue;
    work.at(r, c) = TileId(t);
    enumerate_tilings(rules, width, height, work, pos + 1, out, cap);
  }
}

std::set<std::string> all_valid_tilings(const AdjacencyRules& rules, int width,
                                        int height, std::size_t cap = 2000000) {
  Grid work = Grid::filled(width, height, 0);
  std::set<std::string> out;
  enumerate_tilings(rules, width, height, work, 0, out, cap);
  return out;
}

}  // namespace

TEST_CASE("learn_rules reads adjacency off the example") {
  // [[A,B],[A,B]] with A=0, B=1
  const Grid ex = Grid::from_rows({{0, 1}, {0, 1}});
  const AdjacencyRules rules = learn_rules(ex, 2);
  CHECK(rules.allowed(0, Dir::East, 1));
  CHECK(rules.allowed(0, Dir::South, 0));
  CHECK(rules.allowed(1, Dir::South, 1));
  CHECK_FALSE(rules.allowed(0, Dir::East, 0));
  // reversal symmetry holds by construction
  CHECK(rules.allowed(1, Dir::West, 0));
}

TEST_CASE("learn_rules flags a 1x1 example as degenerate") {
  const Grid ex = Grid::from_rows({{0}});
  const AdjacencyRules rules = learn_rules(ex, 1);
  CHECK(rules.rule_count() == 0);
  CHECK(rules.degenerate());
}

TEST_CASE("learn_rules rejects empty and ragged grids") {
  CHECK_THROWS_AS(Grid::from_rows({}), InvalidInputError);
  CHECK_THROWS_AS(Grid::from_rows({{0, 1}, {0}}), InvalidInputError);
  Grid empty;
  CHECK_THROWS_AS(learn_rules(empty, 2), InvalidInputError);
}

TEST_CASE("learn_rules rule count matches an exhaustive pair scan") {
  // corridor-flavored multi-tile example
  const Grid ex = Grid::from_rows({
      {0, 0, 0, 0, 0, 0},
      {0, 1, 2, 2, 1, 0},
      {0, 3, 3, 4, 3, 0},
      {0, 1, 2, 2, 1, 0},
      {0, 0, 0, 0, 0, 0},
  });
  const AdjacencyRules rules = learn_rules(ex, 5);
  // oracle: collect distinct (tile, dir, tile) triples by scanning all pairs
  std::set<std::string> triples;
  for (int r = 0; r < ex.height; ++r)
    for (int c = 0; c < ex.width; ++c) {
      if (c + 1 < ex.width) {
        triples.insert(std::to_string(ex.at(r, c)) + "E" + std::to_string(ex.at(r, c + 1)));
        triples.insert(std::to_string(ex.at(r, c + 1)) + "W" + std::to_string(ex.at(r, c)));
      }
      if (r + 1 < ex.height) {
        triples.insert(std::to_string(ex.at(r, c)) + "S" + std::to_string(ex.at(r + 1, c)));
        triples.insert(std::to_string(ex.at(r + 1, c)) + "N" + std::to_string(ex.at(r, c)));
      }
    }
  CHECK(rules.rule_count() == triples.size());
}

TEST_CASE("sample_weights is deterministic and spans the range") {
  const TileSet ts = make_tileset(5);
  const TileSet a = sample_weights(ts, 99);
  const TileSet b = sample_weights(ts, 99);
  for (int i = 0; i < 5; ++i) CHECK(a.tiles[i].weight == b.tiles[i].weight);

  const TileSet c = sample_weights(ts, 100);
  bool any_differ = false;
  for (int i = 0; i < 5; ++i)
    if (a.tiles[i].weight != c.tiles[i].weight) any_differ = true;
  CHECK(any_differ);

  double lo = 1e9, hi = -1e9;
  for (int seed = 0; seed < 200; ++seed) {
    const TileSet s = sample_weights(ts, seed);
    for (const Tile& t : s.tiles) {
      lo = std::min(lo, t.weight);
      hi = std::max(hi, t.weight);
      CHECK(t.weight >= 0.1);
      CHECK(t.weight <= 10.0);
    }
  }
  CHECK(lo < 0.5);   // 1000 draws cover the range edges
  CHECK(hi > 9.5);
}

TEST_CASE("solve: single self-adjacent tile fills the grid") {
  const TileSet ts = make_tileset(1);
  AdjacencyRules rules(1);
  for (Dir d : kDirs) rules.allow(0, d, 0);
  const Grid g = solve(ts, rules, 5, 5, 7);
  CHECK(g.width == 5);
  CHECK(g.height == 5);
  for (TileId t : g.cells) CHECK(t == 0);
}

TEST_CASE("solve: two mutually-adjacent tiles give a checkerboard") {
  const TileSet ts = make_tileset(2);
  AdjacencyRules rules(2);
  for (Dir d : kDirs) {
    rules.allow(0, d, 1);
    rules.allow(1, d, 0);
  }
  // brute force: exactly the two checkerboards are valid
  const auto valid = all_valid_tilings(rules, 4, 4);
  REQUIRE(valid.size() == 2);
  for (int seed = 0; seed < 5; ++seed) {
    const Grid g = solve(ts, rules, 4, 4, seed);
    CHECK(valid.count(grid_key(g)) == 1);
  }
}

TEST_CASE("solve: requested dimensions are honored at 40x40") {
  const Grid ex = Grid::from_rows({
      {0, 0, 0, 0},
      {0, 1, 1, 0},
      {0, 0, 0, 0},
  });
  const TileSet ts = make_tileset(2);
  const AdjacencyRules rules = learn_rules(ex, 2);
  const Grid g = solve(ts, rules, 40, 40, 11);
  CHECK(g.width == 40);
  CHECK(g.height == 40);
  CHECK(satisfies(g, rules));
}

TEST_CASE("solve rejects degenerate rules and bad dimensions") {
  const TileSet ts = make_tileset(2);
  AdjacencyRules rules(2);
  rules.allow(0, Dir::East, 0);  // tile 1 has no neighbors at all
  CHECK(rules.degenerate());
  CHECK_THROWS_AS(solve(ts, rules, 3, 3, 1), InvalidInputError);

  AdjacencyRules ok(1);
  for (Dir d : kDirs) ok.allow(0, d, 0);
  CHECK_THROWS_AS(solve(make_tileset(1), ok, 0, 3, 1), InvalidInputError);
}

TEST_CASE("solve is deterministic byte-for-byte") {
  const Grid ex = Grid::from_rows({
      {0, 0, 0, 0, 0},
      {0, 1, 2, 1, 0},
      {0, 0, 0, 0, 0},
  });
  const TileSet ts = make_tileset(3);
  const AdjacencyRules rules = learn_rules(ex, 3);
  const Grid a = solve(ts, rules, 12, 9, 1234);
  const Grid b = solve(ts, rules, 12, 9, 1234);
  CHECK(a == b);
  const Grid c = solve(ts, rules, 12, 9, 1235);
  CHECK(!(a == c));
}

TEST_CASE("solutions only use adjacencies present in the training example") {
  const Grid ex = Grid::from_rows({
      {0, 0, 0, 0, 0},
      {0, 1, 1, 1, 0},
      {0, 2, 2, 2, 0},
      {0, 0, 0, 0, 0},
  });
  const TileSet ts = make_tileset(3);
  const AdjacencyRules rules = learn_rules(ex, 3);
  std::set<std::string> allowed_pairs;
  for (int r = 0; r < ex.height; ++r)
    for (int c = 0; c < ex.width; ++c) {
      if (c + 1 < ex.width)
        allowed_pairs.insert(std::to_string(ex.at(r, c)) + "E" +
                             std::to_string(ex.at(r, c + 1)));
      if (r + 1 < ex.height)
        allowed_pairs.insert(std::to_string(ex.at(r, c)) + "S" +
                             std::to_string(ex.at(r + 1, c)));
    }
  for (int seed = 0; seed < 10; ++seed) {
    const Grid g = solve(ts, rules, 15, 15, seed);
    for (int r = 0; r < g.height; ++r)
      for (int c = 0; c < g.width; ++c) {
        if (c + 1 < g.width)
          CHECK(allowed_pairs.count(std::to_string(g.at(r, c)) + "E" +
                                    std::to_string(g.at(r, c + 1))) == 1);
        if (r + 1 < g.height)
          CHECK(allowed_pairs.count(std::to_string(g.at(r, c)) + "S" +
                                    std::to_string(g.at(r + 1, c))) == 1);
      }
  }
}

TEST_CASE("small instances stay inside the brute-force tiling set") {
  // randomized rule subsets over <= 3 tiles, grids <= 4x4
  Rng rng(2024);
  int checked = 0;
  int attempts = 0;
  while (checked < 60 && attempts < 4000) {
    ++attempts;
    const int tiles = 2 + int(rng.uniform() * 2.0);  // 2..3
    const int w = 2 + int(rng.uniform() * 3.0);      // 2..4
    const int h = 2 + int(rng.uniform() * 3.0);
    AdjacencyRules rules(tiles);
    for (int a = 0; a < tiles; ++a)
      for (int b = 0; b < tiles; ++b) {
        if (rng.uniform() < 0.45) rules.allow(TileId(a), Dir::East, TileId(b));
        if (rng.uniform() < 0.45) rules.allow(TileId(a), Dir::South, TileId(b));
      }
    if (rules.degenerate()) continue;
    const auto valid = all_valid_tilings(rules, w, h, 500000);
    if (valid.size() >= 500000) continue;  // enumeration capped, skip
    TileSet ts = make_tileset(tiles);
    ts = sample_weights(ts, rng.next_u64());

    SolveOptions opt;
    opt.restart_cap = 200;
    if (valid.empty()) {
      CHECK_THROWS_AS(solve(ts, rules, w, h, 42, opt), UnsatisfiableError);
    } else {
      const Grid g = solve(ts, rules, w, h, 42, opt);
      CHECK(valid.count(grid_key(g)) == 1);
    }
    ++checked;
  }
  CHECK(checked >= 60);
}

TEST_CASE("batch generation: OpenMP and serial reference agree exactly") {
  const Grid ex = Grid::from_rows({
      {0, 0, 0, 0, 0},
      {0, 1, 2, 1, 0},
      {0, 1, 2, 1, 0},
      {0, 0, 0, 0, 0},
  });
  const TileSet ts = make_tileset(3);
  const AdjacencyRules rules = learn_rules(ex, 3);
  BatchParams params;
  params.width = 12;
  params.height = 12;
  params.count = 24;
  params.master_seed = 77;
  const auto serial = generate_batch_serial(ts, rules, params);
  const auto parallel = generate_batch(ts, rules, params, 8);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].grid == parallel[i].grid);
    CHECK(serial[i].weights == parallel[i].weights);
    CHECK(serial[i].solve_seed == parallel[i].solve_seed);
  }
  for (const auto& item : serial) CHECK(satisfies(item.grid, rules));
}

TEST_CASE("border_empty constrains the frame") {
  TileSet ts;
  ts.tiles.push_back({0, "empty", 1.0});
  ts.tiles.push_back({1, "side_wall", 1.0});
  const Grid ex = Grid::from_rows({
      {0, 0, 0, 0},
      {0, 1, 1, 0},
      {0, 0, 0, 0},
  });
  const AdjacencyRules rules = learn_rules(ex, 2);
  SolveOptions opt;
  opt.border_empty = true;
  const Grid g = solve(ts, rules, 10, 8, 3, opt);
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c)
      if (r == 0 || c == 0 || r == g.height - 1 || c == g.width - 1)
        CHECK(g.at(r, c) == 0);
}
