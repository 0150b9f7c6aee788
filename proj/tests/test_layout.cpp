#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ventgen/errors.hpp"
#include "ventgen/layout.hpp"
#include "ventgen/tiles.hpp"

namespace {

using namespace ventgen;

// 0 empty, 1 end_wall, 2 side_wall, 3 corridor, 4 core
TileSet midrise_tiles() {
  TileSet ts;
  ts.tiles.push_back({0, "empty", 1.0});
  ts.tiles.push_back({1, "end_wall", 1.0});
  ts.tiles.push_back({2, "side_wall", 1.0});
  ts.tiles.push_back({3, "corridor", 1.0});
  ts.tiles.push_back({4, "core", 1.0});
  return ts;
}

Grid grid_of(const std::vector<std::string>& rows) {
  std::vector<std::vector<TileId>> cells;
  for (const std::string& row : rows) {
    std::vector<TileId> r;
    for (char ch : row) {
      switch (ch) {
        case '.': r.push_back(0); break;
        case 'E': r.push_back(1); break;
        case 'S': r.push_back(2); break;
        case 'C': r.push_back(3); break;
        case 'K': r.push_back(4); break;
        default: REQUIRE(false);
      }
    }
    cells.push_back(std::move(r));
  }
  return Grid::from_rows(cells);
}

BuildingLayout layout_of(const std::vector<std::string>& rows) {
  const Grid g = grid_of(rows);
  std::vector<LayoutCell> cells;
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c)
      if (g.at(r, c) != 0) cells.push_back({r, c, g.at(r, c)});
  return BuildingLayout::from_cells(std::move(cells));
}

// independent flood-fill oracle over a glyph grid
std::vector<std::set<std::pair<int, int>>> oracle_components(const Grid& g) {
  std::vector<std::set<std::pair<int, int>>> comps;
  std::set<std::pair<int, int>> seen;
  for (int r = 0; r < g.height; ++r)
    for (int c = 0; c < g.width; ++c) {
      if (g.at(r, c) == 0 || seen.count({r, c})) continue;
      std::set<std::pair<int, int>> comp;
      std::vector<std::pair<int, int>> stack{{r, c}};
      seen.insert({r, c});
      while (!stack.empty()) {
        auto [cr, cc] = stack.back();
        stack.pop_back();
        comp.insert({cr, cc});
        const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int nr = cr + dr[k], nc = cc + dc[k];
          if (nr < 0 || nr >= g.height || nc < 0 || nc >= g.width) continue;
          if (g.at(nr, nc) == 0 || seen.count({nr, nc})) continue;
          seen.insert({nr, nc});
          stack.push_back({nr, nc});
        }
      }
      comps.push_back(std::move(comp));
    }
  return comps;
}

}  // namespace

TEST_CASE("extract_layouts: all-empty grid yields nothing") {
  const TileSet ts = midrise_tiles();
  const Grid g = grid_of({"....", "....", "...."});
  CHECK(extract_layouts(g, ts).empty());
}

TEST_CASE("extract_layouts drops core-less components when asked") {
  const TileSet ts = midrise_tiles();
  const Grid g = grid_of({
      ".......",
      ".SKS...",
      ".......",
      "...SS..",
      ".......",
  });
  CHECK(extract_layouts(g, ts, true).size() == 1);
  CHECK(extract_layouts(g, ts, false).size() == 2);
}

TEST_CASE("extract_layouts partitions the building cells") {
  const TileSet ts = midrise_tiles();
  const Grid g = grid_of({
      "..........",
      ".SKS..CCK.",
      "......SSS.",
      ".EK.......",
      "..........",
  });
  const auto comps = oracle_components(g);
  const auto layouts = extract_layouts(g, ts, false);
  REQUIRE(layouts.size() == comps.size());
  std::size_t covered = 0;
  for (const auto& l : layouts) covered += l.cells.size();
  std::size_t expected = 0;
  for (const auto& c : comps) expected += c.size();
  CHECK(covered == expected);
  // with cores required, exactly the 3 core-bearing components remain
  CHECK(extract_layouts(g, ts, true).size() == 3);
}

TEST_CASE("canonical keys identify the four rotations and translations") {
  const BuildingLayout l = layout_of({
      "SS.",
      "S..",
      "SK.",
  });
  const std::string key = canonical_key(l);
  BuildingLayout r = l;
  for (int i = 0; i < 3; ++i) {
    r = rotate90(r);
    CHECK(canonical_key(r) == key);
  }
  // translation is normalized away by construction
  const BuildingLayout shifted = layout_of({
      "....",
      ".SS.",
      ".S..",
      ".SK.",
  });
  CHECK(canonical_key(shifted) == key);

  // one changed tile gives a different key
  const BuildingLayout other = layout_of({
      "SS.",
      "S..",
      "SS.",
  });
  CHECK(canonical_key(other) != key);
}

TEST_CASE("reflection dedup is opt-in") {
  const BuildingLayout l = layout_of({
      "SS",
      "S.",
      "SK",
  });
  const BuildingLayout m = mirror(l);
  CHECK(canonical_key(l) != canonical_key(m));
  CHECK(canonical_key(l, true) == canonical_key(m, true));
}

TEST_CASE("has_enclosed_void: ring yes, bar and courtyard no") {
  const BuildingLayout ring = layout_of({
      "SSS",
      "S.S",
      "SSS",
  });
  CHECK(has_enclosed_void(ring));

  const BuildingLayout single = layout_of({"S"});
  CHECK_FALSE(has_enclosed_void(single));

  const BuildingLayout ushape = layout_of({
      "S.S",
      "S.S",
      "SSS",
  });
  CHECK_FALSE(has_enclosed_void(ushape));
}

TEST_CASE("compute_features on hand-checked shapes") {
  const TileSet ts = midrise_tiles();

  const BuildingLayout bar = layout_of({"SS"});
  const LayoutFeatures fb = compute_features(bar, ts);
  CHECK(fb.tile_count == 2);
  CHECK(fb.footprint_area == 2);
  CHECK(fb.aspect_ratio == doctest::Approx(2.0));
  CHECK(fb.compactness == doctest::Approx(1.0));
  CHECK(fb.facade_count == 2);

  // a hollow frame: 21 building tiles inside a 5x10 bbox
  const BuildingLayout sparse = layout_of({
      "SSSSSSSSSS",
      "S........S",
      "S........S",
      "S........S",
      "SSSS.....S",
  });
  const LayoutFeatures fs = compute_features(sparse, ts);
  CHECK(fs.tile_count == 21);
  CHECK(fs.footprint_area == 50);
  CHECK(fs.compactness == doctest::Approx(0.42));

  const BuildingLayout block = layout_of({
      "SSSS",
      "SSSS",
      "SSSS",
      "SSSS",
  });
  const LayoutFeatures fblock = compute_features(block, ts);
  CHECK(fblock.corner_count == 4);
  CHECK(fblock.facade_count == 12);
  CHECK(fblock.aspect_ratio == doctest::Approx(1.0));
}

TEST_CASE("compactness is exactly 0.4 for 20 tiles in a 5x10 box") {
  const TileSet ts = midrise_tiles();
  const BuildingLayout l = layout_of({
      "SSSSSSSSSS",
      "S.........",
      "S.........",
      "S.........",
      "SSSSSSS...",
  });
  REQUIRE(l.cells.size() == 20);
  const LayoutFeatures f = compute_features(l, ts);
  CHECK(f.footprint_area == 50);
  CHECK(f.compactness == doctest::Approx(0.4));
  CHECK(f.aspect_ratio == doctest::Approx(2.0));
}

TEST_CASE("apartment counting rules") {
  const TileSet ts = midrise_tiles();
  const BuildingLayout l = layout_of({
      "ESSE",
      "CCKC",
      "ESSE",
  });
  const LayoutFeatures tile_rule = compute_features(l, ts, ApartmentRule::TilePerApartment);
  CHECK(tile_rule.apartment_count == 8);  // E and S tiles
  CHECK(tile_rule.core_count == 1);
  const LayoutFeatures groups = compute_features(l, ts, ApartmentRule::ContiguousGroups);
  CHECK(groups.apartment_count == 2);  // one run per side of the corridor
}

TEST_CASE("features are invariant under rotation") {
  const TileSet ts = midrise_tiles();
  BuildingLayout l = layout_of({
      "ESSSE.",
      "CCKCC.",
      "ESSSEE",
  });
  const LayoutFeatures base = compute_features(l, ts);
  for (int i = 0; i < 3; ++i) {
    l = rotate90(l);
    const LayoutFeatures f = compute_features(l, ts);
    CHECK(f.tile_count == base.tile_count);
    CHECK(f.core_count == base.core_count);
    CHECK(f.corner_count == base.corner_count);
    CHECK(f.facade_count == base.facade_count);
    CHECK(f.apartment_count == base.apartment_count);
    CHECK(f.footprint_area == base.footprint_area);
    CHECK(f.aspect_ratio == doctest::Approx(base.aspect_ratio));
    CHECK(f.compactness == doctest::Approx(base.compactness));
  }
}

TEST_CASE("build_catalog dedups, filters and orders deterministically") {
  const TileSet ts = midrise_tiles();
  // two solutions; the second repeats the first building rotated, plus a ring
  // and a tiny core-less fragment
  const Grid sol1 = grid_of({
      "..........",
      ".ESSSSSSE.",
      ".CCCKCCCC.",
      ".ESSSSSSE.",
      "..........",
  });
  const Grid sol2 = grid_of({
      "..........",
      ".ECE......",
      ".SCS..SSS.",
      ".SCS..K.S.",
      ".SKS..SSS.",
      ".SCS......",
      ".SCS..SS..",
      ".SCS......",
      ".ECE......",
      "..........",
  });
  CatalogFilter filter;
  filter.min_apartments = 1;
  filter.max_apartments = 100;
  const std::vector<Grid> sols{sol1, sol2, sol1};

  CatalogStats stats;
  const auto catalog = build_catalog(sols, ts, filter, 1, &stats);
  CHECK(stats.solutions == 3);
  CHECK(stats.raw_layouts == 5);  // 1 + 3 + 1 components
  // the vertical bar is the horizontal bar rotated, so it dedups away
  CHECK(stats.unique_layouts == 3);
  // the cored ring falls to the void rule, the core-less SS to the core rule
  CHECK(catalog.size() == 1);
  for (std::size_t i = 0; i < catalog.size(); ++i)
    CHECK(catalog[i].id == int(i));
  // keys are sorted
  for (std::size_t i = 1; i < catalog.size(); ++i)
    CHECK(catalog[i - 1].key < catalog[i].key);

  // duplicate solutions never produce duplicate layouts
  std::set<std::string> keys;
  for (const auto& e : catalog) keys.insert(e.key);
  CHECK(keys.size() == catalog.size());

  // parallel extraction gives the identical catalog
  const auto catalog8 = build_catalog(sols, ts, filter, 8, nullptr);
  REQUIRE(catalog8.size() == catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    CHECK(catalog8[i].key == catalog[i].key);
    CHECK(catalog8[i].layout == catalog[i].layout);
  }
}

TEST_CASE("apartment-range filter and monotonicity") {
  const TileSet ts = midrise_tiles();
  const Grid sol = grid_of({
      "............",
      ".SSK..SK....",
      "............",
      ".SSSSK......",
      "............",
  });
  // apartment counts: 2, 1, 4
  CatalogFilter narrow;
  narrow.min_apartments = 2;
  narrow.max_apartments = 2;
  const std::vector<Grid> sols{sol};
  const auto small = build_catalog(sols, ts, narrow);
  CHECK(small.size() == 1);

  CatalogFilter wide = narrow;
  wide.min_apartments = 1;
  wide.max_apartments = 10;
  const auto big = build_catalog(sols, ts, wide);
  CHECK(big.size() == 3);
  // widening the range never shrinks the catalog
  CHECK(big.size() >= small.size());
}

TEST_CASE("catalog json and csv round trip") {
  const TileSet ts = midrise_tiles();
  const Grid sol = grid_of({
      "......",
      ".ESKE.",
      "......",
  });
  CatalogFilter filter;
  filter.min_apartments = 1;
  filter.max_apartments = 50;
  const std::vector<Grid> sols{sol};
  const auto catalog = build_catalog(sols, ts, filter);
  REQUIRE(catalog.size() == 1);

  const std::string json_text = catalog_to_json(catalog, ts);
  const auto parsed = catalog_from_json(json_text, ts);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].layout == catalog[0].layout);
  CHECK(parsed[0].features.apartment_count == catalog[0].features.apartment_count);

  const std::string csv = features_csv(catalog);
  CHECK(csv.find("layout_id,tile_count,core_count,corner_count,facade_count,"
                 "apartment_count,footprint_area,aspect_ratio,compactness") == 0);
  CHECK(csv.find("\n0,") != std::string::npos);
}
