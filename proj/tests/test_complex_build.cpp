#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "support.hpp"
#include "topoemo/errors.hpp"

using namespace topoemo;
using namespace topoemo::testing;

namespace {

std::vector<Triangle> sorted(std::vector<Triangle> t) {
  std::sort(t.begin(), t.end());
  return t;
}

std::size_t hull_size(std::span<const Point2> pts) {
  // Andrew's monotone chain, counting only strict turns.
  std::vector<Point2> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](auto a, auto b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  auto cross = [](Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<Point2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  return k - 1;
}

LandmarkFrame frame(std::vector<Point2> pts, std::size_t index = 0) { return {std::move(pts), index}; }

}  // namespace

TEST_CASE("three points give one triangle") {
  const std::vector<Point2> pts{{0, 0}, {4, 0}, {1, 3}};
  const auto t = delaunay2d(pts);
  CHECK(t.triangles == std::vector<Triangle>{{0, 1, 2}});
  CHECK(t.edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("cocircular square takes the diagonal with the smallest index pair") {
  const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(sorted(delaunay2d(square).triangles) == std::vector<Triangle>{{0, 1, 2}, {0, 2, 3}});

  const std::vector<Point2> relabelled{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK(sorted(delaunay2d(relabelled).triangles) == std::vector<Triangle>{{0, 1, 3}, {0, 2, 3}});

  const std::vector<Point2> rotated{{1, 0}, {1, 1}, {0, 1}, {0, 0}};
  CHECK(sorted(delaunay2d(rotated).triangles) == std::vector<Triangle>{{0, 1, 2}, {0, 2, 3}});
}

TEST_CASE("square with centre gives four triangles around the centre") {
  const std::vector<Point2> pts{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}};
  const auto t = delaunay2d(pts);
  CHECK(sorted(t.triangles) == std::vector<Triangle>{{0, 1, 4}, {0, 3, 4}, {1, 2, 4}, {2, 3, 4}});
  CHECK(sorted(t.triangles) == sorted(brute_force_delaunay_candidates(pts)));
}

TEST_CASE("random point sets match the brute-force Delaunay triangulation") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(3, 30);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = random_points(rng, size(rng));
    const auto t = delaunay2d(pts);
    CHECK(empty_circumcircles(pts, t.triangles));
    CHECK(sorted(t.triangles) == sorted(brute_force_delaunay_candidates(pts)));
    const std::size_t n = pts.size(), h = hull_size(pts);
    CHECK(t.triangles.size() == 2 * n - h - 2);
    CHECK(t.edges.size() == 3 * n - h - 3);
  }
}

TEST_CASE("lattice input with many cocircular quadruples") {
  std::vector<Point2> grid;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 5; ++j) grid.push_back({10.0 * i, 10.0 * j});
  const auto t = delaunay2d(grid);
  CHECK(t.triangles.size() == 2 * grid.size() - 18 - 2);
  CHECK(empty_circumcircles(grid, t.triangles));
  CHECK(delaunay2d(grid).triangles == t.triangles);
}

TEST_CASE("degenerate point sets are rejected") {
  CHECK_THROWS_AS(delaunay2d(std::vector<Point2>{{0, 0}, {1, 1}}), DegenerateInputError);
  CHECK_THROWS_AS(delaunay2d(std::vector<Point2>{{0, 0}, {1, 1}, {2, 2}, {5, 5}}), DegenerateInputError);
  CHECK_THROWS_AS(delaunay2d(std::vector<Point2>{{0, 0}, {1, 0}, {1, 0}, {0, 1}}), DegenerateInputError);
  CHECK_THROWS_AS(delaunay2d(std::vector<Point2>{{0, 0}, {1, 0}, {NAN, 1}}), DegenerateInputError);
}

TEST_CASE("single frame gives its triangle complex") {
  const std::vector<LandmarkFrame> frames{frame({{0, 0}, {4, 0}, {1, 3}})};
  const auto c = build_stacked_complex(frames);
  CHECK(c.size() == 7);
  CHECK(c.count(0) == 3);
  CHECK(c.count(1) == 3);
  CHECK(c.count(2) == 1);
  CHECK(euler_characteristic(c) == 1);
  CHECK(validate(c).empty());
}

TEST_CASE("two identical triangle frames give a solid prism") {
  const std::vector<Point2> pts{{0, 0}, {4, 0}, {1, 3}};
  const std::vector<LandmarkFrame> frames{frame(pts, 0), frame(pts, 1)};
  const auto c = build_stacked_complex(frames);
  CHECK(c.count(0) == 6);
  CHECK(c.count(1) == 6 + 3);
  CHECK(c.count(2) == 2 + 3);
  CHECK(c.count(3) == 1);
  CHECK(euler_characteristic(c) == 1);
  CHECK(validate(c).empty());
  const auto& prism = c.cell(c.size() - 1);
  CHECK(prism.dim == 3);
  CHECK(prism.boundary.size() == 5);
}

TEST_CASE("diagonal flip between frames drops the diagonal quad and prisms") {
  const std::vector<LandmarkFrame> frames{frame({{-10, 0}, {0, -3}, {10, 0}, {0, 3}}, 0),
                                          frame({{-3, 0}, {0, -10}, {3, 0}, {0, 10}}, 1)};
  const auto t0 = delaunay2d(frames[0].points);
  const auto t1 = delaunay2d(frames[1].points);
  REQUIRE(std::find(t0.edges.begin(), t0.edges.end(), Edge{1, 3}) != t0.edges.end());
  REQUIRE(std::find(t1.edges.begin(), t1.edges.end(), Edge{0, 2}) != t1.edges.end());

  const auto c = build_stacked_complex(frames);
  CHECK(c.count(0) == 8);
  CHECK(c.count(1) == 5 + 5 + 4);
  CHECK(c.count(2) == 2 + 2 + 4);
  CHECK(c.count(3) == 0);
  CHECK(euler_characteristic(c) == 2);  // two disks glued along a cylinder: a sphere
  CHECK(validate(c).empty());
}

TEST_CASE("stacked complex vertex layout and positions") {
  std::mt19937_64 rng(5);
  const auto seq = random_landmark_sequence(rng, 4, 10, 0.0);
  const auto c = build_stacked_complex(seq);
  CHECK(c.count(0) == 40);
  CHECK(c.has_positions());
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : seq[0].points) {
    xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
  }
  const double spacing = std::hypot(xmax - xmin, ymax - ymin) / 4.0;
  for (std::size_t f = 0; f < 4; ++f)
    for (std::size_t i = 0; i < 10; ++i) {
      const auto p = *c.position(static_cast<CellId>(f * 10 + i));
      CHECK(p.x == seq[f].points[i].x);
      CHECK(p.y == seq[f].points[i].y);
      CHECK(p.z == doctest::Approx(f * spacing).epsilon(1e-12));
    }
}

TEST_CASE("identical frames produce the full quad and prism census") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto base = random_points(rng, 12);
    const auto tri = delaunay2d(base);
    const std::size_t k = 2 + trial % 4;
    std::vector<LandmarkFrame> frames;
    for (std::size_t f = 0; f < k; ++f) frames.push_back(frame(base, f));
    const auto c = build_stacked_complex(frames);
    const std::size_t E = tri.edges.size(), T = tri.triangles.size();
    CHECK(c.count(0) == k * 12);
    CHECK(c.count(1) == k * E + (k - 1) * 12);
    CHECK(c.count(2) == k * T + (k - 1) * E);
    CHECK(c.count(3) == (k - 1) * T);
    CHECK(euler_characteristic(c) == 1);
  }
}

TEST_CASE("random landmark sequences give valid complexes") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto seq = random_landmark_sequence(rng, 1 + trial % 5, 8 + trial % 9, 4.0);
    const auto c = build_stacked_complex(seq);
    CHECK(validate(c).empty());
    CHECK(c.count(0) == seq.size() * seq[0].points.size());
  }
}

TEST_CASE("stacked complex input errors") {
  CHECK_THROWS_AS(build_stacked_complex({}), DegenerateInputError);
  const std::vector<LandmarkFrame> ragged{frame({{0, 0}, {4, 0}, {1, 3}}), frame({{0, 0}, {4, 0}, {1, 3}, {5, 5}})};
  CHECK_THROWS_AS(build_stacked_complex(ragged), DegenerateInputError);
  const std::vector<LandmarkFrame> flat{frame({{0, 0}, {1, 1}, {2, 2}})};
  CHECK_THROWS_AS(build_stacked_complex(flat), DegenerateInputError);
}

TEST_CASE("path complex") {
  const auto one = build_path_complex({{0.5}, 8000});
  CHECK(one.complex.size() == 1);
  CHECK(one.vertex_values == std::vector<double>{0.5});

  const auto three = build_path_complex({{1, 3, 2}, 8000});
  CHECK(three.complex.count(0) == 3);
  CHECK(three.complex.count(1) == 2);
  CHECK(three.vertex_values == std::vector<double>{1, 3, 2});
  CHECK(three.complex.cell(3).boundary == std::vector<CellId>{0, 1});
  CHECK(three.complex.cell(4).boundary == std::vector<CellId>{1, 2});

  AudioSignal long_signal{std::vector<double>(10000, 0.25), 8000};
  CHECK(build_path_complex(long_signal).complex.size() == 19999);

  CHECK_THROWS_AS(build_path_complex({{}, 8000}), DegenerateInputError);
  CHECK_THROWS_AS(build_path_complex({{0.0, INFINITY}, 8000}), DegenerateInputError);
}
