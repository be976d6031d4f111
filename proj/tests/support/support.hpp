#pragma once

// Generators and independent reference computations shared by the tests.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <tuple>
#include <vector>

#include "topoemo/cell_complex.hpp"
#include "topoemo/complex_build.hpp"
#include "topoemo/filtration.hpp"
#include "topoemo/persistence.hpp"

namespace topoemo::testing {

/// Random simplicial complex (closure of random simplices) with at most
/// `max_cells` cells and dimension at most `max_dim`.
CellComplex random_simplicial_complex(std::mt19937_64& rng, std::size_t max_cells = 200, int max_dim = 3);

/// Small stacked complex from random landmark frames; has quads and prisms.
CellComplex random_stacked_complex(std::mt19937_64& rng, std::size_t max_cells = 200);

/// Either a lower-star filtration of random integer vertex values (many
/// ties) or a general filtration whose cell values are random increments
/// over the maximum of the faces.
Filtration random_filtration(const CellComplex& complex, std::mt19937_64& rng);

std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t n, double extent = 100.0);

/// Landmark frames: a random cloud moved by independent per-frame noise of
/// scale `motion`, so triangulations may change between frames.
std::vector<LandmarkFrame> random_landmark_sequence(std::mt19937_64& rng, std::size_t frames, std::size_t landmarks,
                                                    double motion);

/// True when no input point lies strictly inside the circumcircle of any
/// triangle (long double, relative slack 1e-9).
bool empty_circumcircles(std::span<const Point2> points, std::span<const Triangle> triangles);

/// Every triangle whose circumcircle contains no other point strictly
/// inside, by enumeration of all triples.
std::vector<Triangle> brute_force_delaunay_candidates(std::span<const Point2> points);

/// -sum p log p over positive lengths, p = length / total.
double hand_entropy(std::span<const double> lengths);

/// Lengths of a diagram after replacing infinite deaths by cap + 1.
std::vector<double> capped_lengths(const PersistenceDiagram& d, double cap);

/// 0-dimensional persistence of a sampled signal on a path, by a
/// union-find sweep with the elder rule. Deaths are infinite for the
/// surviving component.
std::vector<std::pair<double, double>> path_h0_pairs(std::span<const double> values);

/// Sorted (dim, birth, death) triples for multiset comparison.
std::vector<std::tuple<int, double, double>> as_multiset(const PersistenceDiagram& d);
/// Sorted (dim, creator, killer) triples.
std::vector<std::tuple<int, CellId, CellId>> pairing(const PersistenceDiagram& d);

/// Complexes used throughout: a vertex, a path, hollow and filled triangles.
CellComplex path_complex(std::size_t n);
CellComplex hollow_triangle();
CellComplex filled_triangle();

}  // namespace topoemo::testing
