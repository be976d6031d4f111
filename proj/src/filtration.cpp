#include "topoemo/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace topoemo {

std::string_view to_string(FilterLabel label) {
  switch (label) {
    case FilterLabel::horizontal_min: return "horizontal-min";
    case FilterLabel::horizontal_max: return "horizontal-max";
    case FilterLabel::vertical_min: return "vertical-min";
    case FilterLabel::vertical_max: return "vertical-max";
    case FilterLabel::oblique_pp_min: return "oblique-pp-min";
    case FilterLabel::oblique_pp_max: return "oblique-pp-max";
    case FilterLabel::oblique_pm_min: return "oblique-pm-min";
    case FilterLabel::oblique_pm_max: return "oblique-pm-max";
    case FilterLabel::audio: return "audio";
    case FilterLabel::custom: return "custom";
  }
  return "unknown";
}

std::array<FilterFunction, 8> plane_filters(const CellComplex& complex) {
  const auto verts = complex.vertices();
  if (verts.empty()) throw std::invalid_argument("plane_filters: complex has no vertices");
  if (!complex.has_positions()) throw std::invalid_argument("plane_filters: missing vertex positions");

  constexpr double inf = std::numeric_limits<double>::infinity();
  double xmin = inf, xmax = -inf, ymin = inf, ymax = -inf;
  double smin = inf, smax = -inf, dmin = inf, dmax = -inf;  // x+y and x-y
  for (CellId v : verts) {
    const Point3 p = *complex.position(v);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
    smin = std::min(smin, p.x + p.y);
    smax = std::max(smax, p.x + p.y);
    dmin = std::min(dmin, p.x - p.y);
    dmax = std::max(dmax, p.x - p.y);
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<FilterFunction, 8> out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].label = static_cast<FilterLabel>(k);
    out[k].values.assign(static_cast<std::size_t>(verts.back()) + 1, std::numeric_limits<double>::quiet_NaN());
  }
  for (CellId v : verts) {
    const Point3 p = *complex.position(v);
    out[0].values[v] = p.y - ymin;
    out[1].values[v] = ymax - p.y;
    out[2].values[v] = p.x - xmin;
    out[3].values[v] = xmax - p.x;
    out[4].values[v] = (p.x + p.y - smin) * inv_sqrt2;
    out[5].values[v] = (smax - (p.x + p.y)) * inv_sqrt2;
    out[6].values[v] = (p.x - p.y - dmin) * inv_sqrt2;
    out[7].values[v] = (dmax - (p.x - p.y)) * inv_sqrt2;
  }
  return out;
}

Filtration lower_star_filtration(const CellComplex& complex, const FilterFunction& filter) {
  const std::size_t n = complex.size();
  const auto cells = complex.cells();

  auto value_of = [&](CellId v) {
    if (static_cast<std::size_t>(v) >= filter.values.size() || !std::isfinite(filter.values[v])) {
      throw std::invalid_argument("lower_star_filtration: no finite value for vertex " + std::to_string(v));
    }
    return filter.values[v];
  };

  // Owner of a cell: its maximal vertex under (value, id). Faces precede
  // cofaces in id order, so one forward pass suffices.
  std::vector<CellId> owner(n);
  for (const auto& c : cells) {
    if (c.dim == 0) {
      value_of(c.id);
      owner[c.id] = c.id;
      continue;
    }
    CellId best = owner[c.boundary.front()];
    for (CellId f : c.boundary) {
      const CellId o = owner[f];
      const double vo = filter.values[o], vb = filter.values[best];
      if (vo > vb || (vo == vb && o > best)) best = o;
    }
    owner[c.id] = best;
  }

  auto verts = complex.vertices();
  std::sort(verts.begin(), verts.end(), [&](CellId a, CellId b) {
    const double va = filter.values[a], vb = filter.values[b];
    return va < vb || (va == vb && a < b);
  });
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t r = 0; r < verts.size(); ++r) rank[verts[r]] = r;

  Filtration f;
  f.complex = &complex;
  f.label = filter.label;
  f.order.resize(n);
  std::iota(f.order.begin(), f.order.end(), 0);
  std::sort(f.order.begin(), f.order.end(), [&](CellId a, CellId b) {
    const auto ra = rank[owner[a]], rb = rank[owner[b]];
    if (ra != rb) return ra < rb;
    if (cells[a].dim != cells[b].dim) return cells[a].dim < cells[b].dim;
    return a < b;
  });
  f.cell_value.resize(n);
  f.cell_index.resize(n);
  f.cell_step.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CellId c = f.order[i];
    f.cell_index[c] = i;
    f.cell_value[c] = filter.values[owner[c]];
    f.cell_step[c] = rank[owner[c]] + 1;
  }
  return f;
}

Filtration filtration_from_order(const CellComplex& complex, std::vector<CellId> order, std::vector<double> values) {
  Filtration f;
  f.complex = &complex;
  f.order = std::move(order);
  f.cell_value = std::move(values);
  f.cell_index.assign(complex.size(), 0);
  f.cell_step.assign(complex.size(), 0);
  if (f.order.size() != complex.size() || f.cell_value.size() != complex.size()) {
    throw std::invalid_argument("filtration_from_order: order/values must cover every cell");
  }
  for (std::size_t i = 0; i < f.order.size(); ++i) {
    if (!complex.contains(f.order[i])) throw std::invalid_argument("filtration_from_order: unknown cell id");
    f.cell_index[f.order[i]] = i;
    f.cell_step[f.order[i]] = i + 1;
  }
  if (auto problems = check_filtration(f); !problems.empty()) {
    throw std::invalid_argument("filtration_from_order: " + problems.front());
  }
  return f;
}

std::vector<std::string> check_filtration(const Filtration& f) {
  std::vector<std::string> problems;
  if (f.complex == nullptr) return {"filtration has no complex"};
  const std::size_t n = f.complex->size();
  if (f.order.size() != n || f.cell_value.size() != n || f.cell_index.size() != n) {
    return {"filtration size does not match complex"};
  }
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const CellId c = f.order[i];
    if (c < 0 || static_cast<std::size_t>(c) >= n || seen[c]) {
      problems.push_back("order is not a permutation at position " + std::to_string(i));
      return problems;
    }
    seen[c] = 1;
    if (f.cell_index[c] != i) problems.push_back("cell_index disagrees with order for cell " + std::to_string(c));
    if (i > 0 && f.cell_value[c] < f.cell_value[f.order[i - 1]]) {
      problems.push_back("values decrease at position " + std::to_string(i));
    }
  }
  for (const auto& c : f.complex->cells())
    for (CellId face : c.boundary)
      if (f.cell_index[face] >= f.cell_index[c.id]) {
        problems.push_back("face " + std::to_string(face) + " does not precede cell " + std::to_string(c.id));
      }
  return problems;
}

void write_filtration(std::ostream& out, const Filtration& f) {
  const auto old = out.precision(17);
  for (CellId c : f.order) out << c << ' ' << f.cell_value[c] << '\n';
  out.precision(old);
}

}  // namespace topoemo
