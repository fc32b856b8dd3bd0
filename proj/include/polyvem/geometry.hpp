#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace polyvem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
// 90 degree counter-clockwise rotation; for a CCW polygon edge direction d,
// perp(d) points into the polygon.
inline Point2 perp(Point2 d) { return {-d.y, d.x}; }

using Polygon = std::vector<Point2>;

double polygon_signed_area(const Polygon& p);
Point2 polygon_centroid(const Polygon& p);
double polygon_diameter(const Polygon& p);
double polygon_perimeter(const Polygon& p);
bool polygon_is_simple(const Polygon& p);

struct Disc {
  Point2 center;
  double radius = 0.0;
};

// Signed distance from q to the kernel of a CCW simple polygon: the minimum
// over edges of the distance to the edge's inner half-plane (positive inside).
double kernel_distance(const Polygon& p, Point2 q);
inline bool point_in_kernel(const Polygon& p, Point2 q, double tol = 0.0) {
  return kernel_distance(p, q) >= -tol;
}

// Largest disc inscribed in the kernel of a CCW simple polygon (Chebyshev
// center of the intersection of the edge half-planes). radius = 0 when the
// kernel is empty.
Disc kernel_chebyshev_disc(const Polygon& p);

// Deterministic uniform doubles. mt19937_64 with an explicit 53-bit mantissa
// conversion; std::uniform_real_distribution is not bit-stable across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace polyvem
