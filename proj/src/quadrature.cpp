#include "polyvem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

namespace polyvem::quadrature {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by the Golub-Welsch method: the
// nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix with
// off-diagonal entries k/sqrt(4k^2-1); the weights are 2 * (first eigenvector
// component)^2.
EdgeRule make_edge_rule(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::runtime_error("edge_rule: unsupported degree");
  const int n = (degree + 2) / 2;  // 2n-1 >= degree
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  EdgeRule rule;
  rule.degree = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double x = es.eigenvalues()(k);
    const double w = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
    rule.points[k] = 0.5 * (x + 1.0);  // map to [0,1]
    rule.weights[k] = 0.5 * w;
  }
  return rule;
}

// Conical-product rule on the reference triangle {x,y >= 0, x+y <= 1} from
// the substitution x = s(1-t), y = t with Jacobian (1-t): a monomial x^a y^b
// of total degree <= d becomes degree a <= d in s and a+b+1 <= d+1 in t.
TriangleRule make_triangle_rule(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::runtime_error("triangle_rule: unsupported degree");
  const EdgeRule gs = make_edge_rule(degree);
  const EdgeRule gt = make_edge_rule(degree + 1);
  TriangleRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < gs.points.size(); ++i)
    for (std::size_t j = 0; j < gt.points.size(); ++j) {
      const double s = gs.points[i];
      const double t = gt.points[j];
      const double x = s * (1.0 - t);
      const double y = t;
      // Normalise by the reference area 1/2 so weights sum to 1.
      const double w = gs.weights[i] * gt.weights[j] * (1.0 - t) * 2.0;
      rule.bary.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(w);
    }
  return rule;
}

std::mutex cache_mutex;

}  // namespace

const EdgeRule& edge_rule(int degree) {
  static std::map<int, EdgeRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_edge_rule(degree)).first;
  return it->second;
}

const TriangleRule& triangle_rule(int degree) {
  static std::map<int, TriangleRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(degree);
  if (it == cache.end())
    it = cache.emplace(degree, make_triangle_rule(degree)).first;
  return it->second;
}

std::vector<Triangle> fan_triangulate(const Polygon& cell, Point2 apex) {
  const double diam = polygon_diameter(cell);
  if (!point_in_kernel(cell, apex, 1e-12 * diam))
    throw std::runtime_error(
        "fan_triangulate: apex outside the cell kernel; pass the kernel "
        "Chebyshev centre");
  std::vector<Triangle> out;
  const std::size_t n = cell.size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = cell[i];
    const Point2 b = cell[(i + 1) % n];
    if (cross(a - apex, b - apex) <= 0.0) continue;  // apex on the edge line
    out.push_back({apex, a, b});
  }
  if (out.empty()) throw std::runtime_error("fan_triangulate: degenerate cell");
  return out;
}

Point2 fan_apex(const Polygon& cell) {
  const Point2 c = polygon_centroid(cell);
  const double diam = polygon_diameter(cell);
  if (point_in_kernel(cell, c, -1e-9 * diam)) return c;
  const Disc d = kernel_chebyshev_disc(cell);
  if (d.radius <= 0.0)
    throw std::runtime_error("fan_apex: cell is not star-shaped");
  return d.center;
}

double trapezoid_boundary(const Polygon& cell, const std::vector<double>& values) {
  const std::size_t n = cell.size();
  if (values.size() != n)
    throw std::runtime_error("trapezoid_boundary: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    s += 0.5 * dist(cell[i], cell[j]) * (values[i] + values[j]);
  }
  return s;
}

}  // namespace polyvem::quadrature
