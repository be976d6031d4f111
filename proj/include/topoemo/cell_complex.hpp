#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace topoemo {

using CellId = std::int32_t;

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// One cell of a finite complex. The boundary is a set of (dim-1)-cells
/// with Z/2 semantics, stored sorted and without repeats.
struct Cell {
  CellId id = 0;
  int dim = 0;
  std::vector<CellId> boundary;
};

struct Violation {
  enum class Kind {
    unknown_face,      // boundary references an id that is not in the complex
    wrong_dimension,   // boundary cell is not of dimension dim-1
    vertex_boundary,   // a 0-cell with a nonempty boundary
    empty_boundary,    // a positive-dimensional cell with no faces
    boundary_not_cycle,  // the boundary of the boundary is nonzero mod 2
  };
  Kind kind;
  CellId cell;
  std::vector<CellId> offending;
  std::string message;
};

/// Finite cell complex with dense ids assigned in insertion order.
///
/// Every cell's faces must already exist when it is added, so ids double as
/// a valid total order for boundary-matrix work. The complex does not check
/// that the boundary of a boundary vanishes; `validate` reports that.
class CellComplex {
 public:
  CellId add_cell(int dim, std::span<const CellId> boundary);
  CellId add_cell(int dim, std::initializer_list<CellId> boundary) {
    return add_cell(dim, std::span<const CellId>(boundary.begin(), boundary.size()));
  }
  CellId add_vertex() { return add_cell(0, {}); }
  CellId add_vertex(const Point3& position);

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const Cell& cell(CellId id) const;
  std::span<const Cell> cells() const { return cells_; }
  bool contains(CellId id) const { return id >= 0 && static_cast<std::size_t>(id) < cells_.size(); }

  /// Highest cell dimension, or -1 for the empty complex.
  int dimension() const { return static_cast<int>(count_by_dim_.size()) - 1; }
  std::size_t count(int dim) const;
  std::vector<CellId> vertices() const;

  void set_position(CellId vertex, const Point3& position);
  std::optional<Point3> position(CellId vertex) const;
  /// True when every vertex carries a position.
  bool has_positions() const;

  /// Cofaces of each cell (cells whose boundary contains it), indexed by id.
  std::vector<std::vector<CellId>> coboundaries() const;

 private:
  std::vector<Cell> cells_;
  std::vector<std::size_t> count_by_dim_;
  std::vector<std::optional<Point3>> positions_;
};

/// All cells sharing a common coface with `vertex` (the closed star).
/// Result is sorted by id. Throws std::invalid_argument for a non-vertex.
std::vector<CellId> closed_star(const CellComplex& complex, CellId vertex);

long euler_characteristic(const CellComplex& complex);

std::vector<Violation> validate(std::span<const Cell> cells);
inline std::vector<Violation> validate(const CellComplex& complex) { return validate(complex.cells()); }

/// Rebuilds a complex from serialized cells. Ids must be 0..n-1 in order and
/// every boundary must satisfy the add_cell preconditions.
CellComplex complex_from_cells(std::span<const Cell> cells);

/// Line format: `id dim b1 b2 ... bk`, ids ascending.
void write_cells(std::ostream& out, const CellComplex& complex);
std::vector<Cell> read_cells(std::istream& in);

}  // namespace topoemo
