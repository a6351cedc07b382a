// Bowyer-Watson incremental Delaunay triangulation.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "error.hpp"
#include "geometry.hpp"

namespace ppl {

namespace {

double orient(const Point& a, const Point& b, const Point& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
}

}  // namespace

// > 0 when d lies inside the circumcircle of counter-clockwise (a, b, c).
// `bound` receives a magnitude bound of the determinant terms.
double incircle(const Point& a, const Point& b, const Point& c, const Point& d, double& bound) {
  double adx = a[0] - d[0], ady = a[1] - d[1];
  double bdx = b[0] - d[0], bdy = b[1] - d[1];
  double cdx = c[0] - d[0], cdy = c[1] - d[1];
  double alift = adx * adx + ady * ady;
  double blift = bdx * bdx + bdy * bdy;
  double clift = cdx * cdx + cdy * cdy;
  double t1 = alift * (bdx * cdy - cdx * bdy);
  double t2 = blift * (cdx * ady - adx * cdy);
  double t3 = clift * (adx * bdy - bdx * ady);
  bound = alift * (std::fabs(bdx * cdy) + std::fabs(cdx * bdy)) +
          blift * (std::fabs(cdx * ady) + std::fabs(adx * cdy)) +
          clift * (std::fabs(adx * bdy) + std::fabs(bdx * ady));
  return t1 + t2 + t3;
}

namespace {

struct Tri {
  std::array<int, 3> v;
  bool alive = true;
};

}  // namespace

std::vector<std::array<int, 3>> delaunay(const std::vector<Point>& input) {
  const int n = static_cast<int>(input.size());
  if (n < 3) throw ConfigError("Delaunay triangulation needs at least 3 points");

  double minx = input[0][0], maxx = minx, miny = input[0][1], maxy = miny;
  for (const auto& p : input) {
    minx = std::min(minx, p[0]);
    maxx = std::max(maxx, p[0]);
    miny = std::min(miny, p[1]);
    maxy = std::max(maxy, p[1]);
  }
  double span = std::max({maxx - minx, maxy - miny, 1.0});
  double cx = 0.5 * (minx + maxx), cy = 0.5 * (miny + maxy);

  std::vector<Point> pts = input;
  pts.push_back(Point{cx - 40.0 * span, cy - 30.0 * span});
  pts.push_back(Point{cx + 40.0 * span, cy - 30.0 * span});
  pts.push_back(Point{cx, cy + 40.0 * span});

  std::vector<Tri> tris;
  tris.push_back(Tri{{n, n + 1, n + 2}});

  std::vector<int> bad;
  std::map<std::pair<int, int>, int> edge_count;
  for (int i = 0; i < n; ++i) {
    const Point& p = pts[i];
    bad.clear();
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      if (!tris[t].alive) continue;
      const auto& v = tris[t].v;
      double bound = 0.0;
      if (incircle(pts[v[0]], pts[v[1]], pts[v[2]], p, bound) > 0.0) bad.push_back(t);
    }
    edge_count.clear();
    for (int t : bad) {
      const auto& v = tris[t].v;
      for (int e = 0; e < 3; ++e) {
        int a = v[e], b = v[(e + 1) % 3];
        ++edge_count[{std::min(a, b), std::max(a, b)}];
      }
    }
    for (int t : bad) {
      const auto v = tris[t].v;
      tris[t].alive = false;
      for (int e = 0; e < 3; ++e) {
        int a = v[e], b = v[(e + 1) % 3];
        if (edge_count[{std::min(a, b), std::max(a, b)}] != 1) continue;
        std::array<int, 3> nt{a, b, i};
        if (orient(pts[nt[0]], pts[nt[1]], pts[nt[2]]) < 0.0) std::swap(nt[0], nt[1]);
        tris.push_back(Tri{nt});
      }
    }
    // Compact occasionally to keep the scan linear in live triangles.
    if (tris.size() > 4 * static_cast<std::size_t>(i + 8)) {
      std::erase_if(tris, [](const Tri& t) { return !t.alive; });
    }
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris) {
    if (!t.alive) continue;
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    out.push_back(t.v);
  }
  return out;
}

}  // namespace ppl
