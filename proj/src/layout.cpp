#include "ventgen/layout.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "ventgen/errors.hpp"

namespace ventgen {

std::vector<std::uint8_t> BuildingLayout::occupancy_grid() const {
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(width) * height, 0);
  for (const LayoutCell& c : cells) grid[c.row * width + c.col] = 1;
  return grid;
}

BuildingLayout BuildingLayout::from_cells(std::vector<LayoutCell> cells) {
  if (cells.empty()) throw InvalidInputError("layout: no cells");
  int min_row = cells.front().row, max_row = cells.front().row;
  int min_col = cells.front().col, max_col = cells.front().col;
  for (const LayoutCell& c : cells) {
    min_row = std::min(min_row, c.row);
    max_row = std::max(max_row, c.row);
    min_col = std::min(min_col, c.col);
    max_col = std::max(max_col, c.col);
  }
  for (LayoutCell& c : cells) {
    c.row -= min_row;
    c.col -= min_col;
  }
  std::sort(cells.begin(), cells.end());
  BuildingLayout out;
  out.width = max_col - min_col + 1;
  out.height = max_row - min_row + 1;
  out.cells = std::move(cells);
  return out;
}

bool operator==(const BuildingLayout& a, const BuildingLayout& b) {
  return a.width == b.width && a.height == b.height && a.cells == b.cells;
}

BuildingLayout rotate90(const BuildingLayout& layout) {
  // (r, c) -> (c, height-1-r): 90 degrees clockwise.
  std::vector<LayoutCell> cells;
  cells.reserve(layout.cells.size());
  for (const LayoutCell& c : layout.cells)
    cells.push_back({c.col, layout.height - 1 - c.row, c.tile});
  return BuildingLayout::from_cells(std::move(cells));
}

BuildingLayout mirror(const BuildingLayout& layout) {
  std::vector<LayoutCell> cells;
  cells.reserve(layout.cells.size());
  for (const LayoutCell& c : layout.cells)
    cells.push_back({c.row, layout.width - 1 - c.col, c.tile});
  return BuildingLayout::from_cells(std::move(cells));
}

std::vector<BuildingLayout> extract_layouts(const Grid& solution,
                                            const TileSet& tileset,
                                            bool require_core) {
  const int w = solution.width, h = solution.height;
  std::vector<int> component(static_cast<std::size_t>(w) * h, -1);
  std::vector<BuildingLayout> out;
  std::vector<int> stack;

  for (int start = 0; start < w * h; ++start) {
    if (component[start] >= 0) continue;
    if (tileset.role(solution.cells[start]) == TileRole::Empty) continue;
    // flood fill one component, scan order keeps extraction deterministic
    const int comp_id = static_cast<int>(out.size());
    std::vector<LayoutCell> cells;
    bool has_core = false;
    stack.push_back(start);
    component[start] = comp_id;
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      const int r = idx / w, c = idx % w;
      const TileId tile = solution.cells[idx];
      if (tileset.role(tile) == TileRole::Core) has_core = true;
      cells.push_back({r, c, tile});
      for (Dir d : kDirs) {
        const int nr = r + row_step(d), nc = c + col_step(d);
        if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
        const int nidx = nr * w + nc;
        if (component[nidx] >= 0) continue;
        if (tileset.role(solution.cells[nidx]) == TileRole::Empty) continue;
        component[nidx] = comp_id;
        stack.push_back(nidx);
      }
    }
    if (require_core && !has_core) continue;
    out.push_back(BuildingLayout::from_cells(std::move(cells)));
  }
  return out;
}

namespace {

std::string serialize(const BuildingLayout& layout) {
  std::string s;
  s.reserve(layout.cells.size() * 8 + 8);
  s += std::to_string(layout.width);
  s += 'x';
  s += std::to_string(layout.height);
  for (const LayoutCell& c : layout.cells) {
    s += ';';
    s += std::to_string(c.row);
    s += ',';
    s += std::to_string(c.col);
    s += ',';
    s += std::to_string(int(c.tile));
  }
  return s;
}

}  // namespace

std::string canonical_key(const BuildingLayout& layout, bool include_reflections) {
  BuildingLayout current = layout;
  std::string best = serialize(current);
  for (int i = 0; i < 3; ++i) {
    current = rotate90(current);
    best = std::min(best, serialize(current));
  }
  if (include_reflections) {
    current = mirror(layout);
    best = std::min(best, serialize(current));
    for (int i = 0; i < 3; ++i) {
      current = rotate90(current);
      best = std::min(best, serialize(current));
    }
  }
  return best;
}

bool has_enclosed_void(const BuildingLayout& layout) {
  // Flood fill over empty cells from a one-cell margin around the bbox.
  const int w = layout.width + 2, h = layout.height + 2;
  std::vector<std::uint8_t> solid(static_cast<std::size_t>(w) * h, 0);
  for (const LayoutCell& c : layout.cells)
    solid[(c.row + 1) * w + (c.col + 1)] = 1;
  std::vector<std::uint8_t> seen(solid.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int idx = stack.back();
    stack.pop_back();
    const int r = idx / w, c = idx % w;
    for (Dir d : kDirs) {
      const int nr = r + row_step(d), nc = c + col_step(d);
      if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
      const int nidx = nr * w + nc;
      if (seen[nidx] || solid[nidx]) continue;
      seen[nidx] = 1;
      stack.push_back(nidx);
    }
  }
  for (std::size_t i = 0; i < solid.size(); ++i)
    if (!solid[i] && !seen[i]) return true;
  return false;
}

LayoutFeatures compute_features(const BuildingLayout& layout,
                                const TileSet& tileset, ApartmentRule rule) {
  LayoutFeatures f;
  f.tile_count = static_cast<int>(layout.cells.size());
  f.footprint_area = layout.width * layout.height;
  const double long_side = std::max(layout.width, layout.height);
  const double short_side = std::min(layout.width, layout.height);
  f.aspect_ratio = long_side / short_side;
  f.compactness = double(f.tile_count) / double(f.footprint_area);

  const auto occupied = layout.occupancy_grid();
  auto exposed = [&](int r, int c, Dir d) {
    const int nr = r + row_step(d), nc = c + col_step(d);
    if (nr < 0 || nr >= layout.height || nc < 0 || nc >= layout.width) return true;
    return occupied[nr * layout.width + nc] == 0;
  };

  std::vector<int> apartment_index;  // linear indices of apartment tiles
  for (const LayoutCell& c : layout.cells) {
    const TileRole role = tileset.role(c.tile);
    if (role == TileRole::Core) ++f.core_count;
    if (role == TileRole::Apartment)
      apartment_index.push_back(c.row * layout.width + c.col);

    bool exp_n = exposed(c.row, c.col, Dir::North);
    bool exp_e = exposed(c.row, c.col, Dir::East);
    bool exp_s = exposed(c.row, c.col, Dir::South);
    bool exp_w = exposed(c.row, c.col, Dir::West);
    if (exp_n || exp_e || exp_s || exp_w) ++f.facade_count;
    // corner: at least one perpendicular pair of exposed edges
    if ((exp_n && exp_e) || (exp_e && exp_s) || (exp_s && exp_w) ||
        (exp_w && exp_n))
      ++f.corner_count;
  }

  if (rule == ApartmentRule::TilePerApartment) {
    f.apartment_count = static_cast<int>(apartment_index.size());
  } else {
    // one apartment per 4-connected group of apartment tiles
    std::vector<std::uint8_t> is_apartment(occupied.size(), 0);
    for (int idx : apartment_index) is_apartment[idx] = 1;
    std::vector<std::uint8_t> seen(occupied.size(), 0);
    std::vector<int> stack;
    for (int idx : apartment_index) {
      if (seen[idx]) continue;
      ++f.apartment_count;
      seen[idx] = 1;
      stack.push_back(idx);
      while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int r = cur / layout.width, c = cur % layout.width;
        for (Dir d : kDirs) {
          const int nr = r + row_step(d), nc = c + col_step(d);
          if (nr < 0 || nr >= layout.height || nc < 0 || nc >= layout.width)
            continue;
          const int nidx = nr * layout.width + nc;
          if (seen[nidx] || !is_apartment[nidx]) continue;
          seen[nidx] = 1;
          stack.push_back(nidx);
        }
      }
    }
  }
  return f;
}

std::vector<CatalogEntry> build_catalog(std::span<const Grid> solutions,
                                        const TileSet& tileset,
                                        const CatalogFilter& filter,
                                        int jobs, CatalogStats* stats) {
  if (filter.min_apartments > filter.max_apartments)
    throw InvalidInputError("catalog filter: min_apartments > max_apartments");

  const int n = static_cast<int>(solutions.size());
  std::vector<std::vector<BuildingLayout>> extracted(n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i)
      extracted[i] = extract_layouts(solutions[i], tileset, /*require_core=*/false);
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int i = 0; i < n; ++i)
      extracted[i] = extract_layouts(solutions[i], tileset, /*require_core=*/false);
  }

  CatalogStats local;
  local.solutions = n;

  // sequential merge in solution order
  std::map<std::string, BuildingLayout> unique;
  for (const auto& batch : extracted) {
    local.raw_layouts += static_cast<int>(batch.size());
    for (const BuildingLayout& layout : batch)
      unique.emplace(canonical_key(layout, filter.dedup_reflections), layout);
  }
  local.unique_layouts = static_cast<int>(unique.size());

  std::vector<CatalogEntry> out;
  for (auto& [key, layout] : unique) {
    LayoutFeatures f = compute_features(layout, tileset, filter.apartment_rule);
    if (filter.require_core && f.core_count == 0) continue;
    ++local.with_core;
    if (filter.exclude_enclosed_voids && has_enclosed_void(layout)) continue;
    ++local.after_void_filter;
    if (f.apartment_count < filter.min_apartments ||
        f.apartment_count > filter.max_apartments)
      continue;
    CatalogEntry entry;
    entry.key = key;
    entry.layout = std::move(layout);
    entry.features = f;
    out.push_back(std::move(entry));
  }
  // std::map already iterates in key order; ids follow it
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  local.filtered = static_cast<int>(out.size());
  if (stats) *stats = local;
  return out;
}

namespace {
using nlohmann::json;
}

std::string catalog_to_json(const std::vector<CatalogEntry>& catalog,
                            const TileSet& tileset) {
  json j;
  j["tiles"] = json::array();
  for (const Tile& t : tileset.tiles)
    j["tiles"].push_back({{"id", int(t.id)}, {"name", t.name}});
  json entries = json::array();
  for (const CatalogEntry& e : catalog) {
    json cells = json::array();
    for (const LayoutCell& c : e.layout.cells)
      cells.push_back({c.row, c.col, int(c.tile)});
    entries.push_back({{"id", e.id},
                       {"width", e.layout.width},
                       {"height", e.layout.height},
                       {"cells", std::move(cells)},
                       {"features",
                        {{"tile_count", e.features.tile_count},
                         {"core_count", e.features.core_count},
                         {"corner_count", e.features.corner_count},
                         {"facade_count", e.features.facade_count},
                         {"apartment_count", e.features.apartment_count},
                         {"footprint_area", e.features.footprint_area},
                         {"aspect_ratio", e.features.aspect_ratio},
                         {"compactness", e.features.compactness}}}});
  }
  j["layouts"] = std::move(entries);
  return j.dump(2);
}

std::vector<CatalogEntry> catalog_from_json(const std::string& json_text,
                                            const TileSet& tileset) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("catalog: ") + e.what());
  }
  std::vector<CatalogEntry> out;
  for (const auto& je : j.at("layouts")) {
    CatalogEntry e;
    e.id = je.at("id").get<int>();
    std::vector<LayoutCell> cells;
    for (const auto& jc : je.at("cells"))
      cells.push_back({jc.at(0).get<int>(), jc.at(1).get<int>(),
                       static_cast<TileId>(jc.at(2).get<int>())});
    e.layout = BuildingLayout::from_cells(std::move(cells));
    e.key = canonical_key(e.layout);
    const auto& jf = je.at("features");
    e.features.tile_count = jf.at("tile_count").get<int>();
    e.features.core_count = jf.at("core_count").get<int>();
    e.features.corner_count = jf.at("corner_count").get<int>();
    e.features.facade_count = jf.at("facade_count").get<int>();
    e.features.apartment_count = jf.at("apartment_count").get<int>();
    e.features.footprint_area = jf.at("footprint_area").get<int>();
    e.features.aspect_ratio = jf.at("aspect_ratio").get<double>();
    e.features.compactness = jf.at("compactness").get<double>();
    if (e.features.tile_count != static_cast<int>(e.layout.cells.size()))
      throw FormatError("catalog: stored features disagree with layout cells for id " +
                        std::to_string(e.id));
    (void)tileset;
    out.push_back(std::move(e));
  }
  return out;
}

std::string features_csv(const std::vector<CatalogEntry>& catalog) {
  std::ostringstream os;
  os << "layout_id,tile_count,core_count,corner_count,facade_count,"
        "apartment_count,footprint_area,aspect_ratio,compactness\n";
  char buf[64];
  for (const CatalogEntry& e : catalog) {
    os << e.id << ',' << e.features.tile_count << ',' << e.features.core_count
       << ',' << e.features.corner_count << ',' << e.features.facade_count
       << ',' << e.features.apartment_count << ',' << e.features.footprint_area;
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f", e.features.aspect_ratio,
                  e.features.compactness);
    os << buf << '\n';
  }
  return os.str();
}

}  // namespace ventgen
