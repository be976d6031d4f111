#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "topoemo/cell_complex.hpp"

namespace topoemo {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Landmark positions (pixels) of one video frame, indexed by landmark.
struct LandmarkFrame {
  std::vector<Point2> points;
  std::size_t frame_index = 0;
};

struct AudioSignal {
  std::vector<double> samples;
  double sample_rate = 0.0;
};

using Triangle = std::array<int, 3>;
using Edge = std::array<int, 2>;

/// Triangles and edges hold ascending vertex indices; both lists are sorted.
struct Triangulation2D {
  std::vector<Point2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
};

/// Relative tolerance on the in-circle and orientation determinants.
inline constexpr double kDelaunayTolerance = 1e-9;

/// Delaunay triangulation of a planar point set.
///
/// Cocircular ties resolve toward the diagonal incident to the smallest
/// vertex index, so the output is unique for a given input order. Throws
/// DegenerateInputError for fewer than three points, coincident points, or
/// an all-collinear set.
Triangulation2D delaunay2d(std::span<const Point2> points);

/// Stacks per-frame Delaunay triangulations into a 3-D cell complex.
///
/// Ids: all vertices first (frame-major, `frame * landmarks + index`), then
/// per-frame edges, per-frame triangles, temporal edges, quads and prisms.
/// Quads and prisms join only the edges/triangles present in both
/// neighbouring frames. Vertex positions are (x, y, k * spacing) with
/// spacing = (frame-0 bounding-box diagonal) / (number of frames).
CellComplex build_stacked_complex(std::span<const LandmarkFrame> frames);

struct PathComplex {
  CellComplex complex;
  /// Amplitude per vertex id (vertices are ids 0..n-1).
  std::vector<double> vertex_values;
};

/// Path complex of a sampled signal: one vertex per sample, one edge per
/// consecutive pair (2n-1 cells).
PathComplex build_path_complex(const AudioSignal& signal);

}  // namespace topoemo
