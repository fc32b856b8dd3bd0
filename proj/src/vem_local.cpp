#include "polyvem/vem_local.hpp"

#include <stdexcept>
#include <string>

#include "polyvem/quadrature.hpp"

namespace polyvem::vem_local {

CellGeometry make_cell_geometry(const Polygon& poly) {
  CellGeometry g;
  g.verts = poly;
  g.area = polygon_signed_area(poly);
  if (g.area <= 0.0)
    throw std::runtime_error("make_cell_geometry: cell is not CCW with positive area");
  g.centroid = polygon_centroid(poly);
  g.diameter = polygon_diameter(poly);
  g.perimeter = polygon_perimeter(poly);
  return g;
}

Eigen::MatrixXd ScaledP1Basis::dof_matrix(const Polygon& verts) const {
  const int n = static_cast<int>(verts.size());
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * n, 6);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) {
      const double v = m(k, verts[i]);
      D(i, k) = v;          // x-component rows against the x-block monomials
      D(n + i, 3 + k) = v;  // y-component rows against the y-block monomials
    }
  return D;
}

LocalProjection build_projectors(const CellGeometry& cell) {
  const Polygon& v = cell.verts;
  const int n = static_cast<int>(v.size());
  LocalProjection proj;
  proj.basis = {cell.centroid, cell.diameter};

  // Constant-strain test fields for the epsilon-energy conditions.
  const Eigen::Matrix2d E[3] = {
      (Eigen::Matrix2d() << 1, 0, 0, 0).finished(),
      (Eigen::Matrix2d() << 0, 0, 0, 1).finished(),
      (Eigen::Matrix2d() << 0, 1, 1, 0).finished(),
  };

  // Right-hand sides: all six conditions reduce to trapezoid sums over the
  // piecewise-linear boundary trace of the argument.
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(6, 2 * n);
  proj.pi0_div = Eigen::RowVectorXd::Zero(2 * n);
  proj.pi0_rot = Eigen::RowVectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Point2 d = v[j] - v[i];
    const double len = norm(d);
    const Point2 t = (1.0 / len) * d;
    const Point2 nrm{t.y, -t.x};  // outward for a CCW cycle
    const double w = 0.5 * len;
    // int v_x ds and int v_y ds
    R(0, i) += w;
    R(0, j) += w;
    R(1, n + i) += w;
    R(1, n + j) += w;
    // int v . t ds
    R(2, i) += w * t.x;
    R(2, j) += w * t.x;
    R(2, n + i) += w * t.y;
    R(2, n + j) += w * t.y;
    // int (E_a n) . v ds
    for (int a = 0; a < 3; ++a) {
      const Eigen::Vector2d en = E[a] * Eigen::Vector2d(nrm.x, nrm.y);
      R(3 + a, i) += w * en(0);
      R(3 + a, j) += w * en(0);
      R(3 + a, n + i) += w * en(1);
      R(3 + a, n + j) += w * en(1);
    }
    proj.pi0_div(i) += w * nrm.x;
    proj.pi0_div(j) += w * nrm.x;
    proj.pi0_div(n + i) += w * nrm.y;
    proj.pi0_div(n + j) += w * nrm.y;
    proj.pi0_rot(i) += w * t.x;
    proj.pi0_rot(j) += w * t.x;
    proj.pi0_rot(n + i) += w * t.y;
    proj.pi0_rot(n + j) += w * t.y;
  }
  proj.pi0_div /= cell.area;
  proj.pi0_rot /= cell.area;

  // Left-hand side on the scaled P1 basis. Boundary integrals of the basis
  // are trapezoid sums of its (linear) trace, so P1 reproduction is exact by
  // construction.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(6, 6);
  for (int beta = 0; beta < 6; ++beta) {
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const double w = 0.5 * dist(v[i], v[j]);
      const Eigen::Vector2d pi = proj.basis.p(beta, v[i]);
      const Eigen::Vector2d pj = proj.basis.p(beta, v[j]);
      M(0, beta) += w * (pi(0) + pj(0));
      M(1, beta) += w * (pi(1) + pj(1));
    }
    const Eigen::Matrix2d J = proj.basis.jacobian(beta);
    const Eigen::Matrix2d eps = 0.5 * (J + J.transpose());
    M(2, beta) = cell.area * (J(1, 0) - J(0, 1));
    for (int a = 0; a < 3; ++a)
      M(3 + a, beta) = cell.area * (eps.cwiseProduct(E[a])).sum();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond = svd.singularValues()(0) / svd.singularValues()(5);
  if (!(svd.singularValues()(5) > 1e-13 * svd.singularValues()(0)))
    throw std::runtime_error(
        "build_projectors: singular projector system, condition number " +
        std::to_string(cond));
  proj.pi1_coeffs = svd.solve(R);
  proj.pi1_dof = proj.basis.dof_matrix(v) * proj.pi1_coeffs;
  return proj;
}

Eigen::MatrixXd build_stabilization(const LocalProjection& proj) {
  const Eigen::MatrixXd I =
      Eigen::MatrixXd::Identity(proj.pi1_dof.rows(), proj.pi1_dof.cols());
  const Eigen::MatrixXd R = I - proj.pi1_dof;
  return R.transpose() * R;
}

LocalMatrices build_local_matrices(const LocalProjection& proj,
                                   const CellGeometry& cell) {
  // Constant-strain Gram matrix G_ab = |K| eps(p_a) : eps(p_b).
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(6, 6);
  for (int a = 0; a < 6; ++a) {
    const Eigen::Matrix2d Ja = proj.basis.jacobian(a);
    const Eigen::Matrix2d ea = 0.5 * (Ja + Ja.transpose());
    for (int b = 0; b < 6; ++b) {
      const Eigen::Matrix2d Jb = proj.basis.jacobian(b);
      const Eigen::Matrix2d eb = 0.5 * (Jb + Jb.transpose());
      G(a, b) = cell.area * (ea.cwiseProduct(eb)).sum();
    }
  }
  LocalMatrices out;
  out.a_mu = proj.pi1_coeffs.transpose() * G * proj.pi1_coeffs +
             build_stabilization(proj);
  out.b_div = cell.area * proj.pi0_div.transpose() * proj.pi0_div;
  out.load = Eigen::VectorXd::Zero(proj.pi1_dof.rows());
  return out;
}

Eigen::VectorXd build_local_load(const VecField& f, const CellGeometry& cell,
                                 int degree) {
  const int n = static_cast<int>(cell.verts.size());
  const Eigen::Vector2d pi0f =
      quadrature::integrate_cell(f, cell.verts, degree) / cell.area;
  Eigen::VectorXd load = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double w = 0.5 * dist(cell.verts[i], cell.verts[j]);
    load(i) += w;
    load(j) += w;
  }
  load /= cell.perimeter;          // trapezoid weights w_j / |bdry K|
  load.tail(n) = load.head(n).eval();
  load.head(n) *= pi0f(0) * cell.area;
  load.tail(n) *= pi0f(1) * cell.area;
  return load;
}

Eigen::VectorXd interpolate_dirichlet(const VecField& u, const Polygon& poly,
                                      double alpha, int degree) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::runtime_error("interpolate_dirichlet: alpha must be in (0,1)");
  const int n = static_cast<int>(poly.size());
  const int nn = 2 * n;  // split cycle vertex count
  Eigen::VectorXd dofs(2 * nn);
  for (int i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    const Eigen::Vector2d ua = u(a);
    const Eigen::Vector2d edge_int = quadrature::integrate_edge(u, a, b, degree);
    const Eigen::Vector2d um = (2.0 / dist(a, b)) * edge_int - alpha * ua -
                               (1.0 - alpha) * u(b);
    dofs(2 * i) = ua(0);
    dofs(nn + 2 * i) = ua(1);
    dofs(2 * i + 1) = um(0);
    dofs(nn + 2 * i + 1) = um(1);
  }
  return dofs;
}

Eigen::VectorXd interpolate_nodal(const VecField& u,
                                  const mesh::PolygonalMesh& split,
                                  const mesh::SplitMap& map, int degree) {
  const int nv = static_cast<int>(split.vertices.size());
  Eigen::VectorXd dofs(2 * nv);
  for (int v = 0; v < map.n_original_vertices; ++v) {
    const Eigen::Vector2d uv = u(split.vertices[v]);
    dofs(v) = uv(0);
    dofs(nv + v) = uv(1);
  }
  for (int v = map.n_original_vertices; v < nv; ++v) {
    const auto& ep = map.edge_point(v);
    const Point2 a = split.vertices[ep.a];
    const Point2 b = split.vertices[ep.b];
    const Eigen::Vector2d edge_int = quadrature::integrate_edge(u, a, b, degree);
    const Eigen::Vector2d um = (2.0 / dist(a, b)) * edge_int -
                               map.alpha * u(a) - (1.0 - map.alpha) * u(b);
    dofs(v) = um(0);
    dofs(nv + v) = um(1);
  }
  return dofs;
}

Eigen::VectorXd interpolate_traction(const VecField& u,
                                     const mesh::PolygonalMesh& split,
                                     const mesh::SplitMap& map, int degree) {
  Eigen::VectorXd dofs = interpolate_nodal(u, split, map, degree);
  const int nv = static_cast<int>(split.vertices.size());
  double per = 0.0;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& e : split.boundary_edges) {
    const double w = 0.5 * dist(split.vertices[e.a], split.vertices[e.b]);
    per += 2.0 * w;
    mean(0) += w * (dofs(e.a) + dofs(e.b));
    mean(1) += w * (dofs(nv + e.a) + dofs(nv + e.b));
  }
  mean /= per;
  dofs.head(nv).array() -= mean(0);
  dofs.tail(nv).array() -= mean(1);
  return dofs;
}

}  // namespace polyvem::vem_local
