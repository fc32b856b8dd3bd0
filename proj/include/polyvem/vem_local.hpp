#pragma once

#include <functional>

#include <Eigen/Dense>

#include "polyvem/geometry.hpp"
#include "polyvem/mesh.hpp"

namespace polyvem::vem_local {

using VecField = std::function<Eigen::Vector2d(Point2)>;

// Per-cell DOF layout: x-components of the N cycle vertices first, then the
// y-components (2N total), matching the CCW vertex cycle.
struct CellGeometry {
  Polygon verts;
  double area = 0.0;
  Point2 centroid;
  double diameter = 0.0;
  double perimeter = 0.0;
};
CellGeometry make_cell_geometry(const Polygon& poly);

// Scaled monomials m = {1, (x-xc)/h, (y-yc)/h}; the vector P1 basis consists
// of the 6 component-wise monomials, x-block then y-block.
struct ScaledP1Basis {
  Point2 centroid;
  double h = 1.0;

  double m(int k, Point2 p) const {
    switch (k) {
      case 0: return 1.0;
      case 1: return (p.x - centroid.x) / h;
      default: return (p.y - centroid.y) / h;
    }
  }
  Eigen::Vector2d p(int beta, Point2 pt) const {
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    v(beta / 3) = m(beta % 3, pt);
    return v;
  }
  // Jacobian of basis function beta: J(r,c) = d p_r / d x_c (constant).
  Eigen::Matrix2d jacobian(int beta) const {
    Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
    const int k = beta % 3;
    if (k > 0) J(beta / 3, k - 1) = 1.0 / h;
    return J;
  }
  // DOF evaluation matrix of the 6 basis functions: 2N x 6.
  Eigen::MatrixXd dof_matrix(const Polygon& verts) const;
};

struct LocalProjection {
  ScaledP1Basis basis;
  Eigen::MatrixXd pi1_coeffs;  // 6 x 2N, coefficients of Pi1 phi_j
  Eigen::MatrixXd pi1_dof;     // 2N x 2N, DOF values of Pi1 phi_j
  Eigen::RowVectorXd pi0_div;  // cell mean of div from boundary normal traces
  Eigen::RowVectorXd pi0_rot;  // cell mean of rot from boundary tangential traces
};

LocalProjection build_projectors(const CellGeometry& cell);

// S = (I - Pi1_dof)^T (I - Pi1_dof), coefficient exactly 1; the caller scales
// the whole a_mu block by 2 mu.
Eigen::MatrixXd build_stabilization(const LocalProjection& proj);

struct LocalMatrices {
  Eigen::MatrixXd a_mu;   // consistency + stabilization; scale by 2 mu
  Eigen::MatrixXd b_div;  // |K| pi0_div^T pi0_div; scale by lambda
  Eigen::VectorXd load;
};

// Fills a_mu and b_div; the load is composed separately by build_local_load.
LocalMatrices build_local_matrices(const LocalProjection& proj,
                                   const CellGeometry& cell);

// Load for <Pi0 f, v-hat>: entry j = (Pi0 f)_comp(j) * |K| * w_j / |bdry K|
// with w_j the trapezoid weight of DOF j on the cell boundary.
Eigen::VectorXd build_local_load(const VecField& f, const CellGeometry& cell,
                                 int degree = 5);

// DOF values of the interpolant on the split cell built from the CCW cell
// `poly` with the inserted point at fraction alpha along each edge: vertex
// DOFs are u(z_i); the edge-point value is
//   (2/|e|) int_e u ds - alpha u(z_i) - (1-alpha) u(z_{i+1}).
// Returned in the 4N-DOF layout of the split cycle [z0, m0, z1, m1, ...].
Eigen::VectorXd interpolate_dirichlet(const VecField& u, const Polygon& poly,
                                      double alpha, int degree = 5);

// Mesh-wide interpolant on a split mesh, global component-block layout;
// edge-point values use the canonical edge orientation of the SplitMap.
Eigen::VectorXd interpolate_nodal(const VecField& u,
                                  const mesh::PolygonalMesh& split,
                                  const mesh::SplitMap& map, int degree = 5);

// Interpolant minus its boundary mean, so the trace integrates to zero over
// the domain boundary (the pure-traction constraint space).
Eigen::VectorXd interpolate_traction(const VecField& u,
                                     const mesh::PolygonalMesh& split,
                                     const mesh::SplitMap& map, int degree = 5);

}  // namespace polyvem::vem_local
