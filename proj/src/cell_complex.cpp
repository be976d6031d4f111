#include "topoemo/cell_complex.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "topoemo/errors.hpp"

namespace topoemo {

CellId CellComplex::add_cell(int dim, std::span<const CellId> boundary) {
  if (dim < 0) throw std::invalid_argument("add_cell: negative dimension");
  if (dim == 0 && !boundary.empty()) throw std::invalid_argument("add_cell: a vertex has no boundary");
  if (dim > 0 && boundary.empty()) throw std::invalid_argument("add_cell: positive-dimensional cell needs faces");

  std::vector<CellId> faces(boundary.begin(), boundary.end());
  std::sort(faces.begin(), faces.end());
  if (std::adjacent_find(faces.begin(), faces.end()) != faces.end()) {
    throw std::invalid_argument("add_cell: repeated boundary id");
  }
  for (CellId f : faces) {
    if (!contains(f)) throw std::invalid_argument("add_cell: unknown boundary id " + std::to_string(f));
    if (cells_[f].dim != dim - 1) {
      throw std::invalid_argument("add_cell: boundary id " + std::to_string(f) + " has dimension " +
                                  std::to_string(cells_[f].dim) + ", expected " + std::to_string(dim - 1));
    }
  }
  if (dim == 1 && faces.size() != 2) throw std::invalid_argument("add_cell: an edge needs two distinct endpoints");

  const auto id = static_cast<CellId>(cells_.size());
  cells_.push_back(Cell{id, dim, std::move(faces)});
  positions_.emplace_back();
  if (count_by_dim_.size() <= static_cast<std::size_t>(dim)) count_by_dim_.resize(dim + 1, 0);
  ++count_by_dim_[dim];
  return id;
}

CellId CellComplex::add_vertex(const Point3& position) {
  const CellId id = add_vertex();
  positions_[id] = position;
  return id;
}

const Cell& CellComplex::cell(CellId id) const {
  if (!contains(id)) throw std::out_of_range("cell id " + std::to_string(id) + " not in complex");
  return cells_[id];
}

std::size_t CellComplex::count(int dim) const {
  if (dim < 0 || static_cast<std::size_t>(dim) >= count_by_dim_.size()) return 0;
  return count_by_dim_[dim];
}

std::vector<CellId> CellComplex::vertices() const {
  std::vector<CellId> out;
  out.reserve(count(0));
  for (const auto& c : cells_)
    if (c.dim == 0) out.push_back(c.id);
  return out;
}

void CellComplex::set_position(CellId vertex, const Point3& position) {
  if (cell(vertex).dim != 0) throw std::invalid_argument("set_position: not a vertex");
  positions_[vertex] = position;
}

std::optional<Point3> CellComplex::position(CellId vertex) const {
  if (!contains(vertex)) return std::nullopt;
  return positions_[vertex];
}

bool CellComplex::has_positions() const {
  for (const auto& c : cells_)
    if (c.dim == 0 && !positions_[c.id]) return false;
  return true;
}

std::vector<std::vector<CellId>> CellComplex::coboundaries() const {
  std::vector<std::vector<CellId>> co(cells_.size());
  for (const auto& c : cells_)
    for (CellId f : c.boundary) co[f].push_back(c.id);
  return co;
}

std::vector<CellId> closed_star(const CellComplex& complex, CellId vertex) {
  if (!complex.contains(vertex) || complex.cell(vertex).dim != 0) {
    throw std::invalid_argument("closed_star: " + std::to_string(vertex) + " is not a vertex");
  }
  const auto co = complex.coboundaries();
  std::vector<char> up(complex.size(), 0);
  std::vector<CellId> stack{vertex};
  up[vertex] = 1;
  while (!stack.empty()) {
    const CellId c = stack.back();
    stack.pop_back();
    for (CellId p : co[c])
      if (!up[p]) {
        up[p] = 1;
        stack.push_back(p);
      }
  }
  // Closure of every coface of the vertex.
  std::vector<char> in_star(complex.size(), 0);
  for (std::size_t i = 0; i < up.size(); ++i)
    if (up[i]) {
      in_star[i] = 1;
      stack.push_back(static_cast<CellId>(i));
    }
  while (!stack.empty()) {
    const CellId c = stack.back();
    stack.pop_back();
    for (CellId f : complex.cell(c).boundary)
      if (!in_star[f]) {
        in_star[f] = 1;
        stack.push_back(f);
      }
  }
  std::vector<CellId> out;
  for (std::size_t i = 0; i < in_star.size(); ++i)
    if (in_star[i]) out.push_back(static_cast<CellId>(i));
  return out;
}

long euler_characteristic(const CellComplex& complex) {
  long chi = 0;
  for (int d = 0; d <= complex.dimension(); ++d) {
    const auto n = static_cast<long>(complex.count(d));
    chi += (d % 2 == 0) ? n : -n;
  }
  return chi;
}

std::vector<Violation> validate(std::span<const Cell> cells) {
  std::vector<Violation> out;
  std::unordered_map<CellId, const Cell*> by_id;
  by_id.reserve(cells.size());
  for (const auto& c : cells) by_id.emplace(c.id, &c);

  for (const auto& c : cells) {
    if (c.dim == 0 && !c.boundary.empty()) {
      out.push_back({Violation::Kind::vertex_boundary, c.id, c.boundary, "vertex with nonempty boundary"});
    }
    if (c.dim > 0 && c.boundary.empty()) {
      out.push_back({Violation::Kind::empty_boundary, c.id, {}, "cell of dimension " + std::to_string(c.dim) +
                                                                     " has empty boundary"});
    }
    std::vector<CellId> missing;
    std::vector<CellId> wrong_dim;
    for (CellId f : c.boundary) {
      const auto it = by_id.find(f);
      if (it == by_id.end()) {
        missing.push_back(f);
      } else if (it->second->dim != c.dim - 1) {
        wrong_dim.push_back(f);
      }
    }
    if (!missing.empty()) {
      out.push_back({Violation::Kind::unknown_face, c.id, missing, "boundary references cells not in the complex"});
    }
    if (!wrong_dim.empty()) {
      out.push_back({Violation::Kind::wrong_dimension, c.id, wrong_dim, "boundary cells of wrong dimension"});
    }
    if (c.dim >= 2 && missing.empty()) {
      std::map<CellId, int> parity;
      for (CellId f : c.boundary)
        for (CellId g : by_id.at(f)->boundary) parity[g] ^= 1;
      std::vector<CellId> odd;
      for (const auto& [g, p] : parity)
        if (p) odd.push_back(g);
      if (!odd.empty()) {
        out.push_back({Violation::Kind::boundary_not_cycle, c.id, odd, "boundary of boundary is nonzero mod 2"});
      }
    }
  }
  return out;
}

CellComplex complex_from_cells(std::span<const Cell> cells) {
  CellComplex complex;
  for (const auto& c : cells) {
    if (c.id != static_cast<CellId>(complex.size())) {
      throw InputError("cell ids must be dense and ascending; got " + std::to_string(c.id) + " at position " +
                       std::to_string(complex.size()));
    }
    complex.add_cell(c.dim, c.boundary);
  }
  return complex;
}

void write_cells(std::ostream& out, const CellComplex& complex) {
  for (const auto& c : complex.cells()) {
    out << c.id << ' ' << c.dim;
    for (CellId f : c.boundary) out << ' ' << f;
    out << '\n';
  }
}

std::vector<Cell> read_cells(std::istream& in) {
  std::vector<Cell> cells;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    Cell c;
    if (!(row >> c.id >> c.dim)) throw InputError("cell line " + std::to_string(line_no) + ": expected `id dim`");
    CellId f;
    while (row >> f) c.boundary.push_back(f);
    if (!row.eof()) throw InputError("cell line " + std::to_string(line_no) + ": non-integer boundary id");
    cells.push_back(std::move(c));
  }
  return cells;
}

}  // namespace topoemo
