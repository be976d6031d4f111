#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "topoemo/persistence.hpp"

namespace topoemo {
namespace {

// Row-echelon basis of a subspace of (Z/2)^n, keyed by highest set bit.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t bits) : words_((bits + 63) / 64), rows_(bits) {}

  // Adds v to the span; returns true if the rank grew.
  bool insert(std::vector<std::uint64_t> v) {
    for (;;) {
      const long top = highest_bit(v);
      if (top < 0) return false;
      auto& row = rows_[top];
      if (row.empty()) {
        row = std::move(v);
        return true;
      }
      for (std::size_t w = 0; w < words_; ++w) v[w] ^= row[w];
    }
  }

  std::size_t words() const { return words_; }

 private:
  long highest_bit(const std::vector<std::uint64_t>& v) const {
    for (std::size_t w = words_; w-- > 0;)
      if (v[w]) return static_cast<long>(w * 64 + 63 - std::countl_zero(v[w]));
    return -1;
  }

  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace

PersistenceDiagram betti_oracle(const Filtration& f) {
  if (f.complex == nullptr) throw std::invalid_argument("betti_oracle: filtration without complex");
  const auto& complex = *f.complex;
  const std::size_t m = f.order.size();
  const int top = complex.dimension();
  const std::size_t dims = top < 0 ? 0 : static_cast<std::size_t>(top) + 1;

  std::vector<int> dim_at(m);
  for (std::size_t i = 0; i < m; ++i) dim_at[i] = complex.cell(f.order[i]).dim;

  // Boundary of the cell at position i, as a bit vector over positions,
  // keeping only rows at positions >= first_row.
  auto boundary_bits = [&](std::size_t i, std::size_t first_row, std::size_t words) {
    std::vector<std::uint64_t> v(words, 0);
    for (CellId face : complex.cell(f.order[i]).boundary) {
      const std::size_t r = f.cell_index[face];
      if (r >= first_row) v[r / 64] ^= std::uint64_t{1} << (r % 64);
    }
    return v;
  };

  // count[d][s]: d-cells among the first s; rank[d][s]: rank of the
  // boundary map on d-chains of that prefix.
  std::vector<std::vector<long>> count(dims + 1, std::vector<long>(m + 1, 0));
  std::vector<std::vector<long>> rank(dims + 1, std::vector<long>(m + 1, 0));
  {
    std::vector<EchelonBasis> basis(dims + 1, EchelonBasis(m));
    for (std::size_t s = 1; s <= m; ++s) {
      for (std::size_t d = 0; d <= dims; ++d) {
        count[d][s] = count[d][s - 1];
        rank[d][s] = rank[d][s - 1];
      }
      const int d = dim_at[s - 1];
      ++count[d][s];
      if (d > 0 && basis[d].insert(boundary_bits(s - 1, 0, basis[d].words()))) ++rank[d][s];
    }
  }

  // beta[d][s][t] for s <= t: rank of H_d(K_s) -> H_d(K_t)
  //   = dim Z_d(K_s) - rank d_{d+1}(K_t) + rank of d_{d+1}(K_t) on rows outside K_s.
  std::vector<std::vector<std::vector<long>>> beta(
      dims, std::vector<std::vector<long>>(m + 1, std::vector<long>(m + 1, 0)));
  for (std::size_t s = 0; s <= m; ++s) {
    std::vector<EchelonBasis> outside(dims + 1, EchelonBasis(m));
    std::vector<long> outside_rank(dims + 1, 0);
    for (std::size_t t = 0; t <= m; ++t) {
      if (t > 0) {
        const int d = dim_at[t - 1];
        if (d > 0 && outside[d].insert(boundary_bits(t - 1, s, outside[d].words()))) ++outside_rank[d];
      }
      if (t < s) continue;
      for (std::size_t d = 0; d < dims; ++d) {
        const long cycles = count[d][s] - rank[d][s];
        beta[d][s][t] = cycles - rank[d + 1][t] + outside_rank[d + 1];
      }
    }
  }

  PersistenceDiagram out;
  out.generated_from = f.label;
  auto emit = [&](std::size_t d, std::size_t s, long multiplicity, long t) {
    if (multiplicity < 0) throw std::logic_error("betti_oracle: negative multiplicity");
    for (long k = 0; k < multiplicity; ++k) {
      PersistencePoint p;
      p.dim = static_cast<int>(d);
      p.creator = f.order[s - 1];
      p.birth = f.cell_value[p.creator];
      if (t >= 0) {
        p.killer = f.order[t - 1];
        p.death = f.cell_value[p.killer];
      }
      out.points.push_back(p);
    }
  };
  for (std::size_t d = 0; d < dims; ++d) {
    const auto& b = beta[d];
    for (std::size_t s = 1; s <= m; ++s) {
      for (std::size_t t = s + 1; t <= m; ++t) {
        emit(d, s, b[s][t - 1] - b[s][t] - b[s - 1][t - 1] + b[s - 1][t], static_cast<long>(t));
      }
      emit(d, s, b[s][m] - b[s - 1][m], -1);
    }
  }
  return out;
}

}  // namespace topoemo
