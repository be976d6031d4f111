#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "topoemo/complex_build.hpp"
#include "topoemo/errors.hpp"

namespace topoemo {

CellComplex build_stacked_complex(std::span<const LandmarkFrame> frames) {
  if (frames.empty()) throw DegenerateInputError("build_stacked_complex: no frames");
  const std::size_t landmarks = frames.front().points.size();
  for (const auto& f : frames) {
    if (f.points.size() != landmarks) {
      throw DegenerateInputError("build_stacked_complex: landmark count " + std::to_string(f.points.size()) +
                                 " differs from " + std::to_string(landmarks));
    }
  }

  std::vector<Triangulation2D> tri;
  tri.reserve(frames.size());
  for (const auto& f : frames) tri.push_back(delaunay2d(f.points));

  double xmin = frames[0].points[0].x, xmax = xmin, ymin = frames[0].points[0].y, ymax = ymin;
  for (const auto& p : frames[0].points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double spacing = std::hypot(xmax - xmin, ymax - ymin) / static_cast<double>(frames.size());

  const std::size_t nf = frames.size();
  CellComplex complex;
  auto vertex = [landmarks](std::size_t frame, int index) {
    return static_cast<CellId>(frame * landmarks + static_cast<std::size_t>(index));
  };
  for (std::size_t k = 0; k < nf; ++k)
    for (const auto& p : frames[k].points) complex.add_vertex({p.x, p.y, static_cast<double>(k) * spacing});

  std::vector<std::map<Edge, CellId>> edge_id(nf);
  std::vector<std::map<Triangle, CellId>> tri_id(nf);
  for (std::size_t k = 0; k < nf; ++k)
    for (const auto& e : tri[k].edges) edge_id[k][e] = complex.add_cell(1, {vertex(k, e[0]), vertex(k, e[1])});
  for (std::size_t k = 0; k < nf; ++k)
    for (const auto& t : tri[k].triangles) {
      tri_id[k][t] = complex.add_cell(
          2, {edge_id[k].at({t[0], t[1]}), edge_id[k].at({t[0], t[2]}), edge_id[k].at({t[1], t[2]})});
    }

  // temporal[k][i] joins landmark i in frames k and k+1
  std::vector<std::vector<CellId>> temporal(nf > 0 ? nf - 1 : 0);
  for (std::size_t k = 0; k + 1 < nf; ++k)
    for (std::size_t i = 0; i < landmarks; ++i) {
      temporal[k].push_back(complex.add_cell(1, {vertex(k, static_cast<int>(i)), vertex(k + 1, static_cast<int>(i))}));
    }

  std::vector<std::map<Edge, CellId>> quad_id(nf > 0 ? nf - 1 : 0);
  for (std::size_t k = 0; k + 1 < nf; ++k)
    for (const auto& [e, id] : edge_id[k]) {
      const auto next = edge_id[k + 1].find(e);
      if (next == edge_id[k + 1].end()) continue;
      quad_id[k][e] = complex.add_cell(2, {id, next->second, temporal[k][e[0]], temporal[k][e[1]]});
    }
  for (std::size_t k = 0; k + 1 < nf; ++k)
    for (const auto& [t, id] : tri_id[k]) {
      const auto next = tri_id[k + 1].find(t);
      if (next == tri_id[k + 1].end()) continue;
      complex.add_cell(3, {id, next->second, quad_id[k].at({t[0], t[1]}), quad_id[k].at({t[0], t[2]}),
                           quad_id[k].at({t[1], t[2]})});
    }
  return complex;
}

PathComplex build_path_complex(const AudioSignal& signal) {
  if (signal.samples.empty()) throw DegenerateInputError("build_path_complex: empty signal");
  PathComplex out;
  const std::size_t n = signal.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(signal.samples[i])) {
      throw DegenerateInputError("build_path_complex: non-finite sample at " + std::to_string(i));
    }
    out.complex.add_vertex({static_cast<double>(i), signal.samples[i], 0.0});
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.complex.add_cell(1, {static_cast<CellId>(i), static_cast<CellId>(i + 1)});
  }
  out.vertex_values = signal.samples;
  return out;
}

}  // namespace topoemo
