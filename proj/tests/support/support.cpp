#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace topoemo::testing {

CellComplex random_simplicial_complex(std::mt19937_64& rng, std::size_t max_cells, int max_dim) {
  std::uniform_int_distribution<int> n_vertices(1, 14);
  const int n = n_vertices(rng);
  std::set<std::vector<int>> simplices;
  for (int v = 0; v < n; ++v) simplices.insert({v});

  auto closure_size = [](const std::set<std::vector<int>>& s) { return s.size(); };
  std::uniform_int_distribution<int> dim_pick(1, max_dim);
  std::uniform_int_distribution<int> attempts(0, 40);
  const int tries = attempts(rng);
  for (int t = 0; t < tries; ++t) {
    const int d = std::min(dim_pick(rng), n - 1);
    if (d < 1) break;
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    std::shuffle(verts.begin(), verts.end(), rng);
    verts.resize(d + 1);
    std::sort(verts.begin(), verts.end());

    // All faces of the new simplex.
    std::set<std::vector<int>> grown = simplices;
    for (unsigned mask = 1; mask < (1u << (d + 1)); ++mask) {
      std::vector<int> face;
      for (int i = 0; i <= d; ++i)
        if (mask & (1u << i)) face.push_back(verts[i]);
      grown.insert(face);
    }
    if (closure_size(grown) <= max_cells) simplices = std::move(grown);
  }

  std::vector<std::vector<int>> by_dim(simplices.begin(), simplices.end());
  std::stable_sort(by_dim.begin(), by_dim.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  CellComplex complex;
  std::map<std::vector<int>, CellId> id_of;
  for (const auto& s : by_dim) {
    std::vector<CellId> boundary;
    if (s.size() > 1) {
      for (std::size_t skip = 0; skip < s.size(); ++skip) {
        std::vector<int> face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != skip) face.push_back(s[i]);
        boundary.push_back(id_of.at(face));
      }
    }
    id_of[s] = complex.add_cell(static_cast<int>(s.size()) - 1, boundary);
  }
  return complex;
}

std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t n, double extent) {
  std::uniform_real_distribution<double> coord(0.0, extent);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  return pts;
}

std::vector<LandmarkFrame> random_landmark_sequence(std::mt19937_64& rng, std::size_t frames, std::size_t landmarks,
                                                    double motion) {
  const auto base = random_points(rng, landmarks);
  std::normal_distribution<double> noise(0.0, motion);
  std::vector<LandmarkFrame> out(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    out[f].frame_index = f;
    for (const auto& p : base) out[f].points.push_back({p.x + noise(rng), p.y + noise(rng)});
  }
  return out;
}

CellComplex random_stacked_complex(std::mt19937_64& rng, std::size_t max_cells) {
  std::uniform_int_distribution<std::size_t> landmarks(3, 6);
  std::uniform_int_distribution<std::size_t> frames(1, 3);
  for (;;) {
    const auto seq = random_landmark_sequence(rng, frames(rng), landmarks(rng), 3.0);
    CellComplex c = build_stacked_complex(seq);
    if (c.size() <= max_cells) return c;
  }
}

Filtration random_filtration(const CellComplex& complex, std::mt19937_64& rng) {
  std::bernoulli_distribution lower_star(0.5);
  if (lower_star(rng)) {
    std::uniform_int_distribution<int> value(0, 4);
    FilterFunction h;
    h.values.assign(complex.size(), 0.0);
    for (CellId v : complex.vertices()) h.values[v] = value(rng);
    return lower_star_filtration(complex, h);
  }
  std::uniform_int_distribution<int> bump(0, 2);
  std::vector<double> values(complex.size(), 0.0);
  for (const auto& c : complex.cells()) {
    double top = 0.0;
    for (CellId f : c.boundary) top = std::max(top, values[f]);
    values[c.id] = top + bump(rng);
  }
  std::vector<CellId> order(complex.size());
  std::vector<std::uint64_t> tiebreak(complex.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = static_cast<CellId>(i);
    tiebreak[i] = rng();
  }
  std::sort(order.begin(), order.end(), [&](CellId a, CellId b) {
    const auto ka = std::make_tuple(values[a], complex.cell(a).dim, tiebreak[a]);
    const auto kb = std::make_tuple(values[b], complex.cell(b).dim, tiebreak[b]);
    return ka < kb;
  });
  return filtration_from_order(complex, std::move(order), std::move(values));
}

bool empty_circumcircles(std::span<const Point2> points, std::span<const Triangle> triangles) {
  for (const auto& t : triangles) {
    const long double ax = points[t[0]].x, ay = points[t[0]].y;
    const long double bx = points[t[1]].x, by = points[t[1]].y;
    const long double cx = points[t[2]].x, cy = points[t[2]].y;
    const long double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (d == 0) return false;
    const long double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    const long double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    const long double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    const long double r2 = (ax - ux) * (ax - ux) + (ay - uy) * (ay - uy);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (static_cast<int>(i) == t[0] || static_cast<int>(i) == t[1] || static_cast<int>(i) == t[2]) continue;
      const long double dx = points[i].x - ux, dy = points[i].y - uy;
      if (dx * dx + dy * dy < r2 * (1 - 1e-9L)) return false;
    }
  }
  return true;
}

std::vector<Triangle> brute_force_delaunay_candidates(std::span<const Point2> points) {
  std::vector<Triangle> out;
  const int n = static_cast<int>(points.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const Triangle t{a, b, c};
        const double cross = (points[b].x - points[a].x) * (points[c].y - points[a].y) -
                             (points[b].y - points[a].y) * (points[c].x - points[a].x);
        if (cross == 0.0) continue;
        const std::array<Triangle, 1> one{t};
        if (empty_circumcircles(points, one)) out.push_back(t);
      }
  return out;
}

double hand_entropy(std::span<const double> lengths) {
  double total = 0.0;
  for (double l : lengths)
    if (l > 0) total += l;
  double e = 0.0;
  for (double l : lengths) {
    if (l <= 0) continue;
    const double p = l / total;
    e -= p * std::log(p);
  }
  return e;
}

std::vector<double> capped_lengths(const PersistenceDiagram& d, double cap) {
  std::vector<double> out;
  for (const auto& p : d.points) out.push_back((std::isinf(p.death) ? cap + 1.0 : p.death) - p.birth);
  return out;
}

std::vector<std::pair<double, double>> path_h0_pairs(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n), parent(n), birth_vertex(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = parent[i] = birth_vertex[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(values[a], a) < std::make_pair(values[b], b);
  });
  std::vector<char> active(n, 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto older = [&](std::size_t a, std::size_t b) {
    return std::make_pair(values[a], a) < std::make_pair(values[b], b);
  };
  std::vector<std::pair<double, double>> out;
  for (std::size_t v : order) {
    active[v] = 1;
    for (std::size_t w : {v - 1, v + 1}) {
      if (w >= n || !active[w]) continue;  // v - 1 wraps for v = 0
      std::size_t a = find(v), b = find(w);
      if (a == b) continue;
      if (older(birth_vertex[b], birth_vertex[a])) std::swap(a, b);
      out.emplace_back(values[birth_vertex[b]], values[v]);
      parent[b] = a;
    }
  }
  out.emplace_back(values[order.front()], std::numeric_limits<double>::infinity());
  return out;
}

std::vector<std::tuple<int, double, double>> as_multiset(const PersistenceDiagram& d) {
  std::vector<std::tuple<int, double, double>> out;
  for (const auto& p : d.points) out.emplace_back(p.dim, p.birth, p.death);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::tuple<int, CellId, CellId>> pairing(const PersistenceDiagram& d) {
  std::vector<std::tuple<int, CellId, CellId>> out;
  for (const auto& p : d.points) out.emplace_back(p.dim, p.creator, p.killer);
  std::sort(out.begin(), out.end());
  return out;
}

CellComplex path_complex(std::size_t n) {
  CellComplex c;
  for (std::size_t i = 0; i < n; ++i) c.add_vertex();
  for (std::size_t i = 0; i + 1 < n; ++i) c.add_cell(1, {static_cast<CellId>(i), static_cast<CellId>(i + 1)});
  return c;
}

CellComplex hollow_triangle() {
  CellComplex c;
  for (int i = 0; i < 3; ++i) c.add_vertex();
  c.add_cell(1, {0, 1});
  c.add_cell(1, {1, 2});
  c.add_cell(1, {0, 2});
  return c;
}

CellComplex filled_triangle() {
  CellComplex c = hollow_triangle();
  c.add_cell(2, {3, 4, 5});
  return c;
}

}  // namespace topoemo::testing
