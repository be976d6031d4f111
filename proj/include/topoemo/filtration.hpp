#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "topoemo/cell_complex.hpp"

namespace topoemo {

enum class FilterLabel {
  horizontal_min,
  horizontal_max,
  vertical_min,
  vertical_max,
  oblique_pp_min,
  oblique_pp_max,
  oblique_pm_min,
  oblique_pm_max,
  audio,
  custom,
};

std::string_view to_string(FilterLabel label);

/// Scalar value per vertex. `values` is indexed by vertex id; entries for
/// non-vertex ids are ignored.
struct FilterFunction {
  FilterLabel label = FilterLabel::custom;
  std::vector<double> values;
};

/// A total order on the cells of a complex with a value per cell.
///
/// All per-cell vectors are indexed by cell id. `step` is the 1-based
/// sublevel index of the cell (for a lower-star filtration: the rank of the
/// vertex whose lower star contains it). The complex must outlive the
/// filtration.
struct Filtration {
  const CellComplex* complex = nullptr;
  FilterLabel label = FilterLabel::custom;
  std::vector<CellId> order;
  std::vector<double> cell_value;
  std::vector<std::size_t> cell_index;
  std::vector<std::size_t> cell_step;
};

/// Distances to the eight bounding-box planes, all parallel to the time
/// axis, in the order of FilterLabel (horizontal y=ymin, y=ymax; vertical
/// x=xmin, x=xmax; oblique x+y=min, x+y=max, x-y=min, x-y=max).
std::array<FilterFunction, 8> plane_filters(const CellComplex& complex);

/// Lower-star filtration of `filter`.
///
/// Vertices are processed by (value, id). A cell belongs to the lower star
/// of its maximal vertex, ties going to the largest id; within one lower
/// star cells are ordered by (dim, id).
Filtration lower_star_filtration(const CellComplex& complex, const FilterFunction& filter);

/// Builds a filtration from an explicit order and per-cell values (indexed
/// by id). Throws std::invalid_argument if the invariants do not hold.
Filtration filtration_from_order(const CellComplex& complex, std::vector<CellId> order, std::vector<double> values);

/// Empty when `f` is a permutation of the cells with faces before cofaces
/// and values non-decreasing along the order.
std::vector<std::string> check_filtration(const Filtration& f);

/// Debug dump: `id value` per cell in filtration order.
void write_filtration(std::ostream& out, const Filtration& f);

}  // namespace topoemo
