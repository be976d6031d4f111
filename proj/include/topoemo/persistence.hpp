#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "topoemo/filtration.hpp"

namespace topoemo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePoint {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  CellId creator = -1;
  CellId killer = -1;  // -1 for an essential class

  bool essential() const { return killer < 0; }
};

struct PersistenceDiagram {
  std::vector<PersistencePoint> points;
  FilterLabel generated_from = FilterLabel::custom;
};

/// Which coordinates a diagram is recorded in: the filter values of the
/// creating/killing cells, or their 1-based sublevel step.
enum class DiagramCoordinates { values, ordinal };

/// Persistence pairs of a filtration over Z/2 by column reduction: a cell
/// whose reduced boundary vanishes opens a class; otherwise it closes the
/// class of the youngest cell in its reduced boundary. Zero-length pairs are
/// kept. Throws std::invalid_argument if a face comes after its coface.
PersistenceDiagram compute_persistence(const Filtration& f,
                                       DiagramCoordinates coords = DiagramCoordinates::values);

/// Independent check of compute_persistence: persistent Betti numbers from
/// ranks of boundary matrices (Gaussian elimination over Z/2) for every pair
/// of filtration prefixes, then inclusion-exclusion. Cubic in the number of
/// cells; meant for complexes of a few hundred cells.
PersistenceDiagram betti_oracle(const Filtration& f);

/// Replaces every infinite death by cap + 1. Throws std::invalid_argument if
/// any finite coordinate exceeds `cap`.
PersistenceDiagram cap_infinite(PersistenceDiagram d, double cap);

/// Largest coordinate a diagram of `f` can have: the maximum cell value (or
/// the last step for ordinal diagrams).
double cap_value(const Filtration& f, DiagramCoordinates coords = DiagramCoordinates::values);

/// Shannon entropy (natural log) of the normalized interval lengths.
/// Zero-length intervals contribute nothing. Throws DegenerateInputError if
/// a death is infinite or every interval has zero length.
double persistent_entropy(const PersistenceDiagram& d);

/// Points of one homology dimension.
PersistenceDiagram restrict_to_dimension(const PersistenceDiagram& d, int dim);

/// Number of essential classes per dimension, i.e. the Betti numbers of the
/// full complex.
std::vector<std::size_t> essential_counts(const PersistenceDiagram& d);

/// Lines `dim birth death`, death printed as `inf` when infinite.
void write_diagram(std::ostream& out, const PersistenceDiagram& d);

}  // namespace topoemo
