#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "topoemo/complex_build.hpp"
#include "topoemo/errors.hpp"

namespace topoemo {
namespace {

// Sign of the orientation determinant with a relative dead band: +1 for a
// counter-clockwise turn, -1 clockwise, 0 when |det| is within tolerance.
int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double l = (b.x - a.x) * (c.y - a.y);
  const double r = (b.y - a.y) * (c.x - a.x);
  const double det = l - r;
  const double scale = std::abs(l) + std::abs(r);
  if (std::abs(det) <= kDelaunayTolerance * scale) return 0;
  return det > 0 ? 1 : -1;
}

// +1 when d is strictly inside the circumcircle of the counter-clockwise
// triangle abc, -1 when strictly outside, 0 within tolerance.
int in_circle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double bc = bdx * cdy - cdx * bdy;
  const double ca = cdx * ady - adx * cdy;
  const double ab = adx * bdy - bdx * ady;
  const double det = alift * bc + blift * ca + clift * ab;
  const double scale = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) +
                       blift * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
                       clift * (std::abs(adx * bdy) + std::abs(bdx * ady));
  if (std::abs(det) <= kDelaunayTolerance * scale) return 0;
  return det > 0 ? 1 : -1;
}

void check_input(std::span<const Point2> points) {
  if (points.size() < 3) {
    throw DegenerateInputError("delaunay2d: need at least 3 points, got " + std::to_string(points.size()));
  }
  for (const auto& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DegenerateInputError("delaunay2d: non-finite coordinate");

  std::vector<std::pair<double, double>> sorted;
  sorted.reserve(points.size());
  for (const auto& p : points) sorted.emplace_back(p.x, p.y);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DegenerateInputError("delaunay2d: coincident points");
  }

  std::size_t far = 1;
  double best = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d = std::hypot(points[i].x - points[0].x, points[i].y - points[0].y);
    if (d > best) {
      best = d;
      far = i;
    }
  }
  for (const auto& p : points)
    if (orientation(points[0], points[far], p) != 0) return;
  throw DegenerateInputError("delaunay2d: all points are collinear");
}

using Tri = std::array<int, 3>;  // counter-clockwise

// Sweep in (x, y) order: every new point is a vertex of the hull of the
// points so far, so it is fanned to the hull edges it sees. The result
// triangulates the convex hull and is then legalized by flips.
std::vector<Tri> sweep_triangulation(std::span<const Point2> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(pts[a].x, pts[a].y, a) < std::tie(pts[b].x, pts[b].y, b);
  });

  // Leading run of collinear points, closed by the first point off the line.
  int j = 2;
  while (j < n && orientation(pts[order[0]], pts[order[1]], pts[order[j]]) == 0) ++j;
  if (j == n) throw DegenerateInputError("delaunay2d: all points are collinear");
  const int apex = order[j];
  const bool left = orientation(pts[order[0]], pts[order[1]], pts[apex]) > 0;

  std::vector<Tri> tris;
  std::vector<int> hull;  // counter-clockwise
  for (int i = 0; i + 1 < j; ++i) {
    tris.push_back(left ? Tri{order[i], order[i + 1], apex} : Tri{order[i + 1], order[i], apex});
  }
  if (left) {
    hull.assign(order.begin(), order.begin() + j);
  } else {
    hull.assign(order.rend() - j, order.rend());
  }
  hull.push_back(apex);

  std::vector<char> visible;
  for (int k = j + 1; k < n; ++k) {
    const int p = order[k];
    const int h = static_cast<int>(hull.size());
    visible.assign(h, 0);
    int count = 0;
    for (int i = 0; i < h; ++i) {
      visible[i] = orientation(pts[hull[i]], pts[hull[(i + 1) % h]], pts[p]) < 0;
      count += visible[i];
    }
    if (count == 0) {
      // Within the dead band of every edge; fall back to the raw sign.
      for (int i = 0; i < h; ++i) {
        const Point2 &a = pts[hull[i]], &b = pts[hull[(i + 1) % h]], &c = pts[p];
        visible[i] = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) < 0;
        count += visible[i];
      }
    }
    if (count == 0 || count == h) throw DegenerateInputError("delaunay2d: sweep point sees no hull edge");
    int start = 0;
    while (!(visible[start] && !visible[(start + h - 1) % h])) {
      if (++start == h) throw DegenerateInputError("delaunay2d: visible hull chain is not contiguous");
    }
    int run = 0;
    while (visible[(start + run) % h]) ++run;
    if (run != count) throw DegenerateInputError("delaunay2d: visible hull chain is not contiguous");
    for (int r = 0; r < run; ++r) {
      const int a = hull[(start + r) % h], b = hull[(start + r + 1) % h];
      tris.push_back({b, a, p});
    }
    // Drop the interior vertices of the visible chain and splice p in.
    std::vector<int> next;
    next.reserve(h - run + 2);
    const int end = (start + run) % h;
    for (int i = end;; i = (i + 1) % h) {
      next.push_back(hull[i]);
      if (i == start) break;
    }
    next.push_back(p);
    hull = std::move(next);
  }
  return tris;
}

// Lawson flips until every interior edge is locally Delaunay. A cocircular
// quad keeps the diagonal incident to its smallest vertex index, which is
// the lexicographically smallest diagonal pair.
void legalize(std::span<const Point2> pts, std::vector<Tri>& tris) {
  std::map<std::pair<int, int>, int> owner;  // directed edge -> triangle
  for (int i = 0; i < static_cast<int>(tris.size()); ++i)
    for (int k = 0; k < 3; ++k) owner[{tris[i][k], tris[i][(k + 1) % 3]}] = i;

  std::vector<std::pair<int, int>> stack;
  for (const auto& [e, t] : owner)
    if (e.first < e.second && owner.count({e.second, e.first})) stack.push_back(e);

  const std::size_t max_flips = 50 * pts.size() * pts.size() + 100;
  std::size_t flips = 0;
  auto third = [](const Tri& t, int u, int v) {
    for (int w : t)
      if (w != u && w != v) return w;
    return -1;
  };

  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const auto i1 = owner.find({a, b});
    const auto i2 = owner.find({b, a});
    if (i1 == owner.end() || i2 == owner.end()) continue;
    const int t1 = i1->second, t2 = i2->second;
    const int c = third(tris[t1], a, b);  // tris[t1] is (a, b, c) ccw
    const int d = third(tris[t2], a, b);  // tris[t2] is (b, a, d) ccw

    const int test = in_circle(pts[a], pts[b], pts[c], pts[d]);
    bool flip = test > 0;
    if (test == 0) {
      const int lowest = std::min({a, b, c, d});
      flip = (lowest == c || lowest == d);
    }
    if (!flip) continue;
    if (orientation(pts[a], pts[d], pts[c]) <= 0 || orientation(pts[d], pts[b], pts[c]) <= 0) continue;
    if (++flips > max_flips) throw DegenerateInputError("delaunay2d: edge flipping did not converge");

    for (int k = 0; k < 3; ++k) {
      owner.erase({tris[t1][k], tris[t1][(k + 1) % 3]});
      owner.erase({tris[t2][k], tris[t2][(k + 1) % 3]});
    }
    tris[t1] = {a, d, c};
    tris[t2] = {d, b, c};
    for (int t : {t1, t2})
      for (int k = 0; k < 3; ++k) owner[{tris[t][k], tris[t][(k + 1) % 3]}] = t;
    stack.push_back({std::min(a, d), std::max(a, d)});
    stack.push_back({std::min(d, b), std::max(d, b)});
    stack.push_back({std::min(b, c), std::max(b, c)});
    stack.push_back({std::min(c, a), std::max(c, a)});
  }
}

}  // namespace

Triangulation2D delaunay2d(std::span<const Point2> points) {
  check_input(points);
  auto tris = sweep_triangulation(points);
  legalize(points, tris);

  Triangulation2D out;
  out.vertices.assign(points.begin(), points.end());
  std::set<Edge> edges;
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : tris) {
    Triangle s{t[0], t[1], t[2]};
    std::sort(s.begin(), s.end());
    out.triangles.push_back(s);
    edges.insert({s[0], s[1]});
    edges.insert({s[0], s[2]});
    edges.insert({s[1], s[2]});
    for (int k = 0; k < 3; ++k) directed[{t[k], t[(k + 1) % 3]}] = 1;
  }
  std::sort(out.triangles.begin(), out.triangles.end());
  out.edges.assign(edges.begin(), edges.end());

  // A triangulated point set with h boundary vertices has 2n - h - 2
  // triangles; anything else means the construction went wrong.
  std::set<int> hull;
  std::set<int> used;
  for (const auto& [e, one] : directed) {
    used.insert(e.first);
    if (!directed.count({e.second, e.first})) hull.insert(e.first);
  }
  const long n = static_cast<long>(points.size());
  const long h = static_cast<long>(hull.size());
  if (static_cast<long>(used.size()) != n || static_cast<long>(out.triangles.size()) != 2 * n - h - 2 ||
      static_cast<long>(out.edges.size()) != 3 * n - h - 3) {
    throw DegenerateInputError("delaunay2d: inconsistent triangulation (near-degenerate input)");
  }
  return out;
}

}  // namespace topoemo
