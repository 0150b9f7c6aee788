#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ventgen {

using TileId = std::uint8_t;

// Adjacency masks are 64-bit, which caps the vocabulary.
inline constexpr int kMaxTiles = 64;

enum class Dir : int { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Dir, 4> kDirs{Dir::North, Dir::East, Dir::South,
                                          Dir::West};

constexpr Dir opposite(Dir d) {
  return static_cast<Dir>((static_cast<int>(d) + 2) % 4);
}
constexpr int row_step(Dir d) {
  constexpr std::array<int, 4> dr{-1, 0, 1, 0};
  return dr[static_cast<int>(d)];
}
constexpr int col_step(Dir d) {
  constexpr std::array<int, 4> dc{0, 1, 0, -1};
  return dc[static_cast<int>(d)];
}

// Functional category of a tile, inferred from its name. Anything that is not
// empty, corridor or core counts as apartment space (end walls and side walls
// included).
enum class TileRole { Empty, Apartment, Corridor, Core };

TileRole role_from_name(std::string_view name);

struct Tile {
  TileId id = 0;
  std::string name;
  double weight = 1.0;
};

struct TileSet {
  std::vector<Tile> tiles;

  int size() const { return static_cast<int>(tiles.size()); }
  // Throws InvalidInputError unless ids are 0..n-1 in order, names non-empty
  // and weights positive.
  void validate() const;
  TileRole role(TileId id) const;
  // One printable character per tile for the debug text map.
  char glyph(TileId id) const;
};

// Row-major rectangular grid of tile ids. Used for both training examples and
// solver output.
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<TileId> cells;

  TileId at(int row, int col) const { return cells[row * width + col]; }
  TileId& at(int row, int col) { return cells[row * width + col]; }
  bool inside(int row, int col) const {
    return row >= 0 && row < height && col >= 0 && col < width;
  }
  bool empty() const { return cells.empty(); }

  static Grid filled(int width, int height, TileId fill);
  // Throws InvalidInputError on empty or ragged input.
  static Grid from_rows(const std::vector<std::vector<TileId>>& rows);
};

bool operator==(const Grid& a, const Grid& b);

// Directional adjacency relation over a fixed tile universe.
// allowed(a, d, b) == true means b may sit on side d of a. The relation is
// kept symmetric under direction reversal by construction.
class AdjacencyRules {
 public:
  explicit AdjacencyRules(int tile_count);

  void allow(TileId a, Dir d, TileId b);
  bool allowed(TileId a, Dir d, TileId b) const;
  // Bitmask over neighbor ids permitted on side d of tile a.
  std::uint64_t allowed_mask(TileId a, Dir d) const {
    return masks_[a][static_cast<int>(d)];
  }

  int tile_count() const { return tile_count_; }
  // Number of distinct (tile, direction, tile) triples in the relation.
  std::size_t rule_count() const;
  // A rule set is degenerate when some tile has no permitted neighbor in some
  // direction; such a tile can never be placed in the interior of a grid.
  bool degenerate() const;

 private:
  int tile_count_ = 0;
  std::vector<std::array<std::uint64_t, 4>> masks_;
};

// Reads the adjacency relation off a training example: (A, d, B) is allowed
// iff the pair occurs somewhere in the example in that direction.
// tile_count fixes the rule universe (tiles absent from the example make the
// result degenerate). Throws InvalidInputError on an empty example.
AdjacencyRules learn_rules(const Grid& example, int tile_count);

// Returns a copy of the tileset with every weight drawn independently and
// uniformly from [lo, hi]. Deterministic for a fixed seed.
TileSet sample_weights(const TileSet& tileset, std::uint64_t seed,
                       double lo = 0.1, double hi = 10.0);

// On-disk form of a training input: {"tiles':[{id,name,weight}],
// "example":[[id,...],...]}.
struct TileExample {
  TileSet tileset;
  Grid example;
};

TileExample parse_tile_example(const std::string& json_text);
std::string tile_example_to_json(const TileExample& ex);
TileExample load_tile_example(const std::string& path);

// One char per cell, rows separated by '\n'.
std::string to_glyphs(const Grid& grid, const TileSet& tileset);

}  // namespace ventgen
