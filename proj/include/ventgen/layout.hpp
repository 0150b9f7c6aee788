#pragma once

#include <span>
#include <string>
#include <vector>

#include "ventgen/tiles.hpp"

namespace ventgen {

struct LayoutCell {
  int row = 0;
  int col = 0;
  TileId tile = 0;
};

inline bool operator==(const LayoutCell& a, const LayoutCell& b) {
  return a.row == b.row && a.col == b.col && a.tile == b.tile;
}
inline bool operator<(const LayoutCell& a, const LayoutCell& b) {
  if (a.row != b.row) return a.row < b.row;
  if (a.col != b.col) return a.col < b.col;
  return a.tile < b.tile;
}

// One 4-connected component of non-empty tiles, translated so that the tight
// bounding box starts at (0, 0). Cells are kept sorted row-major.
struct BuildingLayout {
  int width = 0;   // bbox width (columns)
  int height = 0;  // bbox height (rows)
  std::vector<LayoutCell> cells;

  // Occupancy grid over the bbox; cheap to rebuild where needed.
  std::vector<std::uint8_t> occupancy_grid() const;
  static BuildingLayout from_cells(std::vector<LayoutCell> cells);
};

bool operator==(const BuildingLayout& a, const BuildingLayout& b);

BuildingLayout rotate90(const BuildingLayout& layout);
BuildingLayout mirror(const BuildingLayout& layout);

enum class ApartmentRule {
  // Every building tile that is neither corridor nor core is one apartment.
  TilePerApartment,
  // Each maximal 4-connected group of such tiles is one apartment.
  ContiguousGroups,
};

struct LayoutFeatures {
  int tile_count = 0;
  int core_count = 0;
  int corner_count = 0;
  int facade_count = 0;
  int apartment_count = 0;
  int footprint_area = 0;    // bbox width * height, open space included
  double aspect_ratio = 1.0; // max(w,h) / min(w,h)
  double compactness = 1.0;  // tile_count / footprint_area
};

struct CatalogFilter {
  int min_apartments = 10;
  int max_apartments = 15;
  bool exclude_enclosed_voids = true;
  bool require_core = true;
  bool dedup_reflections = false;  // rotations are always identified
  ApartmentRule apartment_rule = ApartmentRule::TilePerApartment;
};

// Connected-component extraction over non-empty tiles (edge adjacency only).
// Components without a core tile are dropped when require_core is set; with it
// off, the returned cell sets partition the non-empty cells of the solution.
std::vector<BuildingLayout> extract_layouts(const Grid& solution,
                                            const TileSet& tileset,
                                            bool require_core = true);

// Serialization that is identical for the four 90-degree rotations of a
// layout (eight images when reflections are included) and distinct for
// genuinely different layouts.
std::string canonical_key(const BuildingLayout& layout,
                          bool include_reflections = false);

// True iff some empty cell inside the bbox cannot reach the outside through
// empty cells (ring-shaped plans and the like).
bool has_enclosed_void(const BuildingLayout& layout);

LayoutFeatures compute_features(const BuildingLayout& layout,
                                const TileSet& tileset,
                                ApartmentRule rule = ApartmentRule::TilePerApartment);

struct CatalogEntry {
  int id = 0;  // position in canonical-key order
  std::string key;
  BuildingLayout layout;
  LayoutFeatures features;
};

struct CatalogStats {
  int solutions = 0;
  int raw_layouts = 0;       // extracted components (before any filtering)
  int unique_layouts = 0;    // after rotational dedup
  int with_core = 0;         // after the core filter
  int after_void_filter = 0;
  int filtered = 0;          // final catalog size
};

// extraction -> dedup by canonical key -> core / void / apartment-range
// filters, in that order; result sorted by canonical key. Extraction runs per
// solution (optionally in parallel); the merge is sequential in solution
// order, so the catalog does not depend on the thread count.
std::vector<CatalogEntry> build_catalog(std::span<const Grid> solutions,
                                        const TileSet& tileset,
                                        const CatalogFilter& filter,
                                        int jobs = 1,
                                        CatalogStats* stats = nullptr);

// Catalog persistence: JSON for the layouts, CSV for the feature table.
std::string catalog_to_json(const std::vector<CatalogEntry>& catalog,
                            const TileSet& tileset);
std::vector<CatalogEntry> catalog_from_json(const std::string& json_text,
                                            const TileSet& tileset);
std::string features_csv(const std::vector<CatalogEntry>& catalog);

}  // namespace ventgen
