#include "ventgen/tiles.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ventgen/errors.hpp"
#include "ventgen/rng.hpp"

namespace ventgen {

TileRole role_from_name(std::string_view name) {
  if (name == "empty") return TileRole::Empty;
  if (name == "corridor") return TileRole::Corridor;
  if (name == "core") return TileRole::Core;
  return TileRole::Apartment;
}

void TileSet::validate() const {
  if (tiles.empty()) throw InvalidInputError("tileset: no tiles");
  if (size() > kMaxTiles)
    throw InvalidInputError("tileset: more than 64 tiles not supported");
  for (int i = 0; i < size(); ++i) {
    const Tile& t = tiles[i];
    if (t.id != i)
      throw InvalidInputError("tileset: tile ids must be contiguous from 0, got id " +
                              std::to_string(int(t.id)) + " at position " +
                              std::to_string(i));
    if (t.name.empty())
      throw InvalidInputError("tileset: tile " + std::to_string(i) + " has no name");
    if (!(t.weight > 0.0))
      throw InvalidInputError("tileset: tile '" + t.name + "' has non-positive weight");
  }
}

TileRole TileSet::role(TileId id) const { return role_from_name(tiles[id].name); }

char TileSet::glyph(TileId id) const {
  switch (role(id)) {
    case TileRole::Empty:
      return '.';
    case TileRole::Corridor:
      return 'C';
    case TileRole::Core:
      return 'K';
    case TileRole::Apartment:
      break;
  }
  const std::string& name = tiles[id].name;
  if (name == "end_wall") return 'E';
  if (name == "side_wall") return 'S';
  return static_cast<char>('a' + (id % 26));
}

Grid Grid::filled(int width, int height, TileId fill) {
  Grid g;
  g.width = width;
  g.height = height;
  g.cells.assign(static_cast<std::size_t>(width) * height, fill);
  return g;
}

Grid Grid::from_rows(const std::vector<std::vector<TileId>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw InvalidInputError("grid: empty input");
  const std::size_t w = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != w)
      throw InvalidInputError("grid: ragged input, row " + std::to_string(r) +
                              " has " + std::to_string(rows[r].size()) +
                              " cells, expected " + std::to_string(w));
  }
  Grid g;
  g.width = static_cast<int>(w);
  g.height = static_cast<int>(rows.size());
  g.cells.reserve(w * rows.size());
  for (const auto& row : rows)
    g.cells.insert(g.cells.end(), row.begin(), row.end());
  return g;
}

bool operator==(const Grid& a, const Grid& b) {
  return a.width == b.width && a.height == b.height && a.cells == b.cells;
}

AdjacencyRules::AdjacencyRules(int tile_count) : tile_count_(tile_count) {
  if (tile_count < 1 || tile_count > kMaxTiles)
    throw InvalidInputError("rules: tile count out of range");
  masks_.assign(tile_count, {0, 0, 0, 0});
}

void AdjacencyRules::allow(TileId a, Dir d, TileId b) {
  masks_[a][static_cast<int>(d)] |= (1ull << b);
  masks_[b][static_cast<int>(opposite(d))] |= (1ull << a);
}

bool AdjacencyRules::allowed(TileId a, Dir d, TileId b) const {
  return (masks_[a][static_cast<int>(d)] >> b) & 1ull;
}

std::size_t AdjacencyRules::rule_count() const {
  std::size_t n = 0;
  for (const auto& m : masks_)
    for (const auto& mask : m) n += static_cast<std::size_t>(std::popcount(mask));
  return n;
}

bool AdjacencyRules::degenerate() const {
  for (const auto& m : masks_)
    for (const auto& mask : m)
      if (mask == 0) return true;
  return false;
}

AdjacencyRules learn_rules(const Grid& example, int tile_count) {
  if (example.empty()) throw InvalidInputError("learn_rules: empty example grid");
  for (TileId t : example.cells)
    if (t >= tile_count)
      throw InvalidInputError("learn_rules: example uses tile id " +
                              std::to_string(int(t)) + " outside the tileset");
  AdjacencyRules rules(tile_count);
  for (int r = 0; r < example.height; ++r) {
    for (int c = 0; c < example.width; ++c) {
      if (c + 1 < example.width)
        rules.allow(example.at(r, c), Dir::East, example.at(r, c + 1));
      if (r + 1 < example.height)
        rules.allow(example.at(r, c), Dir::South, example.at(r + 1, c));
    }
  }
  return rules;
}

TileSet sample_weights(const TileSet& tileset, std::uint64_t seed, double lo,
                       double hi) {
  if (!(lo > 0.0) || !(hi >= lo))
    throw InvalidInputError("sample_weights: bad range");
  TileSet out = tileset;
  Rng rng(seed);
  for (Tile& t : out.tiles) t.weight = rng.uniform(lo, hi);
  return out;
}

namespace {

using nlohmann::json;

Grid grid_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("tile example: 'example' must be an array of rows");
  std::vector<std::vector<TileId>> rows;
  for (const auto& jr : j) {
    std::vector<TileId> row;
    for (const auto& v : jr) {
      const int id = v.get<int>();
      if (id < 0 || id >= kMaxTiles)
        throw FormatError("tile example: cell id out of range");
      row.push_back(static_cast<TileId>(id));
    }
    rows.push_back(std::move(row));
  }
  return Grid::from_rows(rows);
}

}  // namespace

TileExample parse_tile_example(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("tile example: ") + e.what());
  }
  TileExample ex;
  if (!j.contains("tiles")) throw FormatError("tile example: missing 'tiles'");
  for (const auto& jt : j.at("tiles")) {
    Tile t;
    t.id = static_cast<TileId>(jt.at("id").get<int>());
    t.name = jt.at("name").get<std::string>();
    t.weight = jt.value("weight", 1.0);
    ex.tileset.tiles.push_back(std::move(t));
  }
  std::sort(ex.tileset.tiles.begin(), ex.tileset.tiles.end(),
            [](const Tile& a, const Tile& b) { return a.id < b.id; });
  ex.tileset.validate();
  if (!j.contains("example")) throw FormatError("tile example: missing 'example'");
  ex.example = grid_from_json(j.at("example"));
  for (TileId t : ex.example.cells)
    if (t >= ex.tileset.size())
      throw FormatError("tile example: example references unknown tile id " +
                        std::to_string(int(t)));
  return ex;
}

std::string tile_example_to_json(const TileExample& ex) {
  json j;
  j["tiles"] = json::array();
  for (const Tile& t : ex.tileset.tiles)
    j["tiles"].push_back({{"id", int(t.id)}, {"name", t.name}, {"weight", t.weight}});
  json rows = json::array();
  for (int r = 0; r < ex.example.height; ++r) {
    json row = json::array();
    for (int c = 0; c < ex.example.width; ++c) row.push_back(int(ex.example.at(r, c)));
    rows.push_back(std::move(row));
  }
  j["example"] = std::move(rows);
  return j.dump(2);
}

TileExample load_tile_example(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tile example file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tile_example(ss.str());
}

std::string to_glyphs(const Grid& grid, const TileSet& tileset) {
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.height) * (grid.width + 1));
  for (int r = 0; r < grid.height; ++r) {
    for (int c = 0; c < grid.width; ++c) out.push_back(tileset.glyph(grid.at(r, c)));
    out.push_back('\n');
  }
  return out;
}

}  // namespace ventgen
