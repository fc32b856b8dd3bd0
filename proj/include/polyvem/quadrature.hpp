#pragma once

#include <array>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "polyvem/geometry.hpp"

namespace polyvem::quadrature {

// 1D Gauss-Legendre rule on [0,1]; weights sum to 1, exact for polynomials of
// degree <= degree within roundoff.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

// Rule on the reference triangle in barycentric coordinates; weights are
// normalised to sum to 1 (fractions of the triangle area).
struct TriangleRule {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> weights;
  int degree = 0;
};

// Cached rules, built on first use.
const EdgeRule& edge_rule(int degree);
const TriangleRule& triangle_rule(int degree);

constexpr int kMaxDegree = 30;

struct Triangle {
  Point2 a, b, c;
};

// Fan triangulation from an apex that must lie in the cell's kernel.
std::vector<Triangle> fan_triangulate(const Polygon& cell, Point2 apex);

// Apex for fan integration: the centroid when it lies in the kernel, else the
// kernel's Chebyshev centre. Throws when the kernel is empty.
Point2 fan_apex(const Polygon& cell);

namespace detail {
template <class R>
R zero_like() {
  if constexpr (std::is_arithmetic_v<R>) {
    return R(0);
  } else {
    return R::Zero();
  }
}
}  // namespace detail

template <class F>
auto integrate_triangle(F&& f, const Triangle& t, int degree) {
  using R = std::invoke_result_t<F&, Point2>;
  const TriangleRule& rule = triangle_rule(degree);
  const double area = 0.5 * std::abs(cross(t.b - t.a, t.c - t.a));
  R acc = detail::zero_like<R>();
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const auto& l = rule.bary[q];
    const Point2 p = l[0] * t.a + l[1] * t.b + l[2] * t.c;
    acc += rule.weights[q] * f(p);
  }
  return R(area * acc);
}

template <class F>
auto integrate_cell(F&& f, const Polygon& cell, int degree, Point2 apex) {
  using R = std::invoke_result_t<F&, Point2>;
  R acc = detail::zero_like<R>();
  for (const Triangle& t : fan_triangulate(cell, apex))
    acc += integrate_triangle(f, t, degree);
  return acc;
}

template <class F>
auto integrate_cell(F&& f, const Polygon& cell, int degree) {
  return integrate_cell(f, cell, degree, fan_apex(cell));
}

// Integral with respect to arclength along the segment p0-p1.
template <class F>
auto integrate_edge(F&& f, Point2 p0, Point2 p1, int degree) {
  using R = std::invoke_result_t<F&, Point2>;
  const double len = dist(p0, p1);
  if (len == 0.0) throw std::runtime_error("integrate_edge: zero-length edge");
  const EdgeRule& rule = edge_rule(degree);
  R acc = detail::zero_like<R>();
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const Point2 p = p0 + rule.points[q] * (p1 - p0);
    acc += rule.weights[q] * f(p);
  }
  return R(len * acc);
}

// Trapezoid rule around the closed cell boundary for a continuous piecewise
// linear trace given by vertex values; exact for such traces.
double trapezoid_boundary(const Polygon& cell, const std::vector<double>& values);

}  // namespace polyvem::quadrature
