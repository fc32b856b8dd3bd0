#include "polyvem/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace polyvem {

double polygon_signed_area(const Polygon& p) {
  const std::size_t n = p.size();
  double a = 0.0;
  for (std::size_t i = 0; i < n; ++i) a += cross(p[i], p[(i + 1) % n]);
  return 0.5 * a;
}

Point2 polygon_centroid(const Polygon& p) {
  const std::size_t n = p.size();
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& u = p[i];
    const Point2& v = p[(i + 1) % n];
    const double w = cross(u, v);
    a += w;
    cx += (u.x + v.x) * w;
    cy += (u.y + v.y) * w;
  }
  if (a == 0.0) throw std::runtime_error("polygon_centroid: degenerate polygon");
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

double polygon_diameter(const Polygon& p) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) d = std::max(d, dist(p[i], p[j]));
  return d;
}

double polygon_perimeter(const Polygon& p) {
  const std::size_t n = p.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += dist(p[i], p[(i + 1) % n]);
  return s;
}

namespace {

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

bool on_segment(Point2 a, Point2 b, Point2 q) {
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

// Closed-segment intersection test (touching counts).
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0) != (o2 > 0)) && o1 != 0 && o2 != 0 &&
      ((o3 > 0) != (o4 > 0)) && o3 != 0 && o4 != 0)
    return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool polygon_is_simple(const Polygon& p) {
  const std::size_t n = p.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (p[i].x == p[(i + 1) % n].x && p[i].y == p[(i + 1) % n].y) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = p[i];
    const Point2 b = p[(i + 1) % n];
    // Consecutive edges may be collinear (split cells have straight-through
    // vertices) but must not fold back onto each other.
    const Point2 c = p[(i + 2) % n];
    if (orient(a, b, c) == 0 && dot(b - a, c - b) < 0) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t jn = (j + 1) % n;
      if (j == i || jn == i || j == (i + 1) % n) continue;  // adjacent pairs
      if (segments_intersect(a, b, p[j], p[jn])) return false;
    }
  }
  return true;
}

double kernel_distance(const Polygon& p, Point2 q) {
  const std::size_t n = p.size();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = p[i];
    const Point2 b = p[(i + 1) % n];
    const double len = dist(a, b);
    if (len == 0.0) continue;
    d = std::min(d, cross(b - a, q - a) / len);
  }
  return d;
}

namespace {

struct HalfPlane {
  Point2 n;  // unit inner normal
  double c;  // constraint n.x >= c
};

// Feasibility of a candidate (center x, radius r): n_i . x - r >= c_i for all
// constraints, up to a small tolerance scaled by the polygon size.
bool feasible(const std::vector<HalfPlane>& hp, Point2 x, double r, double tol) {
  for (const auto& h : hp)
    if (dot(h.n, x) - r < h.c - tol) return false;
  return true;
}

}  // namespace

Disc kernel_chebyshev_disc(const Polygon& p) {
  const std::size_t n = p.size();
  if (n < 3) return {};
  std::vector<HalfPlane> hp;
  hp.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = p[i];
    const Point2 b = p[(i + 1) % n];
    const double len = dist(a, b);
    if (len == 0.0) continue;
    const Point2 nrm = (1.0 / len) * perp(b - a);
    hp.push_back({nrm, dot(nrm, a)});
  }
  const std::size_t m = hp.size();
  const double scale = polygon_diameter(p);
  const double tol = 1e-9 * scale;

  // LP: maximize r subject to n_i . x - r >= c_i. The optimum is attained at a
  // basic solution: three active constraints, or two with antiparallel normals
  // (optimal centre then lies on their midline). Enumerate both families.
  double best_r = -std::numeric_limits<double>::infinity();
  Point2 best_x{};
  bool found = false;

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        // Solve [n.x n.y -1][x y r]^T = c for the three active constraints.
        const double a11 = hp[i].n.x, a12 = hp[i].n.y;
        const double a21 = hp[j].n.x, a22 = hp[j].n.y;
        const double a31 = hp[k].n.x, a32 = hp[k].n.y;
        const double b1 = hp[i].c, b2 = hp[j].c, b3 = hp[k].c;
        const double det = a11 * (a22 * (-1) - (-1) * a32) -
                           a12 * (a21 * (-1) - (-1) * a31) +
                           (-1) * (a21 * a32 - a22 * a31);
        if (std::abs(det) < 1e-12) continue;
        // Cramer's rule.
        const double dx = b1 * (a22 * (-1) - (-1) * a32) -
                          a12 * (b2 * (-1) - (-1) * b3) +
                          (-1) * (b2 * a32 - a22 * b3);
        const double dy = a11 * (b2 * (-1) - (-1) * b3) -
                          b1 * (a21 * (-1) - (-1) * a31) +
                          (-1) * (a21 * b3 - b2 * a31);
        const double dr = a11 * (a22 * b3 - b2 * a32) -
                          a12 * (a21 * b3 - b2 * a31) +
                          b1 * (a21 * a32 - a22 * a31);
        const Point2 x{dx / det, dy / det};
        const double r = dr / det;
        if (r > best_r && feasible(hp, x, r, tol)) {
          best_r = r;
          best_x = x;
          found = true;
        }
      }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(cross(hp[i].n, hp[j].n)) > 1e-12 || dot(hp[i].n, hp[j].n) >= 0)
        continue;
      // n.x - r = c_i and -n.x - r = c_j give r on the midline of the pair.
      const double r = -(hp[i].c + hp[j].c) / 2.0;
      if (r <= best_r) continue;
      // Centre line: n.x = c_i + r, parametrised along t = perp(n).
      const Point2 nrm = hp[i].n;
      const Point2 tdir = perp(nrm);
      const Point2 x0 = (hp[i].c + r) * nrm;
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      bool ok = true;
      for (std::size_t k = 0; k < m && ok; ++k) {
        if (k == i || k == j) continue;
        // n_k.(x0 + t tdir) - r >= c_k
        const double coef = dot(hp[k].n, tdir);
        const double rhs = hp[k].c + r - dot(hp[k].n, x0);
        if (std::abs(coef) < 1e-14) {
          if (rhs > tol) ok = false;
        } else if (coef > 0) {
          lo = std::max(lo, rhs / coef);
        } else {
          hi = std::min(hi, rhs / coef);
        }
      }
      if (ok && lo <= hi + tol) {
        const double t = lo > hi ? 0.5 * (lo + hi) : std::clamp(0.0, lo, hi);
        best_r = r;
        best_x = x0 + t * tdir;
        found = true;
      }
    }

  if (!found || best_r <= 0.0) return {};
  return {best_x, best_r};
}

}  // namespace polyvem
