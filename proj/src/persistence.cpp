#include "topoemo/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <ostream>
#include <stdexcept>
#include <string>

#include "topoemo/errors.hpp"

namespace topoemo {

PersistenceDiagram compute_persistence(const Filtration& f, DiagramCoordinates coords) {
  if (f.complex == nullptr) throw std::invalid_argument("compute_persistence: filtration without complex");
  const auto& complex = *f.complex;
  const std::size_t n = f.order.size();
  if (n != complex.size() || f.cell_index.size() != n || f.cell_value.size() != n) {
    throw std::invalid_argument("compute_persistence: filtration does not cover the complex");
  }

  // Columns hold filtration positions of the faces, ascending; the pivot is
  // the last (youngest) entry.
  std::vector<std::vector<std::size_t>> columns(n);
  std::vector<long> pivot_column(n, -1);
  std::vector<std::size_t> scratch;

  for (std::size_t j = 0; j < n; ++j) {
    const Cell& c = complex.cell(f.order[j]);
    auto& col = columns[j];
    col.reserve(c.boundary.size());
    for (CellId face : c.boundary) {
      const std::size_t i = f.cell_index[face];
      if (i >= j) {
        throw std::invalid_argument("compute_persistence: face " + std::to_string(face) + " enters after cell " +
                                    std::to_string(c.id));
      }
      col.push_back(i);
    }
    std::sort(col.begin(), col.end());

    while (!col.empty() && pivot_column[col.back()] >= 0) {
      const auto& other = columns[pivot_column[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) pivot_column[col.back()] = static_cast<long>(j);
  }

  auto coord = [&](CellId c) {
    return coords == DiagramCoordinates::values ? f.cell_value[c] : static_cast<double>(f.cell_step[c]);
  };

  PersistenceDiagram d;
  d.generated_from = f.label;
  for (std::size_t i = 0; i < n; ++i) {
    if (!columns[i].empty()) continue;  // this cell killed a class
    const CellId creator = f.order[i];
    PersistencePoint p;
    p.dim = complex.cell(creator).dim;
    p.birth = coord(creator);
    p.creator = creator;
    if (pivot_column[i] >= 0) {
      p.killer = f.order[pivot_column[i]];
      p.death = coord(p.killer);
    }
    d.points.push_back(p);
  }
  return d;
}

double cap_value(const Filtration& f, DiagramCoordinates coords) {
  if (f.order.empty()) throw std::invalid_argument("cap_value: empty filtration");
  const CellId last = f.order.back();
  return coords == DiagramCoordinates::values ? f.cell_value[last] : static_cast<double>(f.cell_step[last]);
}

PersistenceDiagram cap_infinite(PersistenceDiagram d, double cap) {
  for (const auto& p : d.points) {
    if (p.birth > cap || (std::isfinite(p.death) && p.death > cap)) {
      throw std::invalid_argument("cap_infinite: cap " + std::to_string(cap) + " is below a finite coordinate");
    }
  }
  for (auto& p : d.points)
    if (!std::isfinite(p.death)) p.death = cap + 1.0;
  return d;
}

double persistent_entropy(const PersistenceDiagram& d) {
  std::vector<double> lengths;
  lengths.reserve(d.points.size());
  for (const auto& p : d.points) {
    if (!std::isfinite(p.death)) throw std::invalid_argument("persistent_entropy: diagram has infinite deaths");
    const double l = p.death - p.birth;
    if (l > 0.0) lengths.push_back(l);
  }
  if (lengths.empty()) throw DegenerateInputError("persistent_entropy: every interval has zero length");

  // Summing in sorted order makes the result independent of point order.
  std::sort(lengths.begin(), lengths.end());
  double total = 0.0;
  for (double l : lengths) total += l;
  double entropy = 0.0;
  for (double l : lengths) {
    const double p = l / total;
    entropy -= p * std::log(p);
  }
  return entropy;
}

PersistenceDiagram restrict_to_dimension(const PersistenceDiagram& d, int dim) {
  PersistenceDiagram out;
  out.generated_from = d.generated_from;
  for (const auto& p : d.points)
    if (p.dim == dim) out.points.push_back(p);
  return out;
}

std::vector<std::size_t> essential_counts(const PersistenceDiagram& d) {
  std::vector<std::size_t> counts;
  for (const auto& p : d.points) {
    if (std::isfinite(p.death)) continue;
    if (counts.size() <= static_cast<std::size_t>(p.dim)) counts.resize(p.dim + 1, 0);
    ++counts[p.dim];
  }
  return counts;
}

void write_diagram(std::ostream& out, const PersistenceDiagram& d) {
  const auto old = out.precision(17);
  for (const auto& p : d.points) {
    out << p.dim << ' ' << p.birth << ' ';
    if (std::isfinite(p.death)) {
      out << p.death;
    } else {
      out << "inf";
    }
    out << '\n';
  }
  out.precision(old);
}

}  // namespace topoemo
