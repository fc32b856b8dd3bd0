#include "polyvem/assembly_solve.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "polyvem/quadrature.hpp"

namespace polyvem::assembly_solve {

DofMap build_dof_map(const mesh::PolygonalMesh& split) {
  DofMap dm;
  dm.n_vertices = static_cast<int>(split.vertices.size());
  dm.cell_dofs.reserve(split.cells.size());
  for (const auto& cell : split.cells) {
    std::vector<int> g;
    g.reserve(2 * cell.size());
    for (int v : cell) g.push_back(dm.x_dof(v));
    for (int v : cell) g.push_back(dm.y_dof(v));
    dm.cell_dofs.push_back(std::move(g));
  }
  dm.vertex_markers.resize(dm.n_vertices);
  for (const auto& e : split.boundary_edges) {
    dm.vertex_markers[e.a].push_back(e.marker);
    dm.vertex_markers[e.b].push_back(e.marker);
  }
  for (auto& ms : dm.vertex_markers) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  }
  return dm;
}

namespace {

void check_spec(const mesh::PolygonalMesh& split, const BoundarySpec& spec) {
  std::set<int> present;
  for (const auto& e : split.boundary_edges) present.insert(e.marker);
  if (spec.pure_traction) {
    if (!spec.dirichlet_markers.empty())
      throw SolveError("boundary spec: pure traction excludes Dirichlet markers");
    return;
  }
  for (int m : present) {
    const bool d = spec.dirichlet_markers.count(m) > 0;
    const bool n = spec.neumann_markers.count(m) > 0;
    if (d && n)
      throw SolveError("boundary spec: marker " + std::to_string(m) +
                       " assigned to both Dirichlet and Neumann parts");
    if (!d && !n)
      throw SolveError("boundary spec: marker " + std::to_string(m) +
                       " not covered by any condition");
  }
  for (int m : spec.dirichlet_markers)
    if (!present.count(m))
      throw SolveError("boundary spec: Dirichlet marker " + std::to_string(m) +
                       " has no boundary edges");
}

}  // namespace

GlobalSystem assemble(const mesh::PolygonalMesh& split, double mu, double lambda,
                      const VecField& f, const BoundarySpec& spec) {
  if (!(mu > 0.0) || !(lambda >= 0.0))
    throw SolveError("assemble: need mu > 0 and lambda >= 0");
  check_spec(split, spec);
  GlobalSystem sys;
  sys.dofs = build_dof_map(split);
  const int n = sys.dofs.n_dofs();
  sys.rhs = Eigen::VectorXd::Zero(n);

  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t c = 0; c < split.cells.size(); ++c) {
    const auto geom = vem_local::make_cell_geometry(split.cell_polygon(static_cast<int>(c)));
    const auto proj = vem_local::build_projectors(geom);
    const auto local = vem_local::build_local_matrices(proj, geom);
    const Eigen::MatrixXd Ke = 2.0 * mu * local.a_mu + lambda * local.b_div;
    const Eigen::VectorXd fe = vem_local::build_local_load(f, geom);
    const auto& g = sys.dofs.cell_dofs[c];
    const int k = static_cast<int>(g.size());
    for (int r = 0; r < k; ++r) {
      sys.rhs(g[r]) += fe(r);
      for (int s = 0; s < k; ++s) trips.emplace_back(g[r], g[s], Ke(r, s));
    }
  }
  sys.A.resize(n, n);
  sys.A.setFromTriplets(trips.begin(), trips.end());

  if (!spec.neumann_markers.empty() && spec.g2) {
    for (const auto& e : split.boundary_edges) {
      if (!spec.neumann_markers.count(e.marker)) continue;
      const Point2 pa = split.vertices[e.a];
      const Point2 pb = split.vertices[e.b];
      const double len = dist(pa, pb);
      const Point2 t = (1.0 / len) * (pb - pa);
      const Eigen::Vector2d nrm(t.y, -t.x);  // outward for cell-CCW orientation
      const auto& rule = quadrature::edge_rule(5);
      Eigen::Vector2d la = Eigen::Vector2d::Zero();
      Eigen::Vector2d lb = Eigen::Vector2d::Zero();
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double s = rule.points[q];
        const Eigen::Vector2d g2 = spec.g2(pa + s * (pb - pa), nrm);
        la += rule.weights[q] * (1.0 - s) * g2;
        lb += rule.weights[q] * s * g2;
      }
      sys.rhs(sys.dofs.x_dof(e.a)) += len * la(0);
      sys.rhs(sys.dofs.y_dof(e.a)) += len * la(1);
      sys.rhs(sys.dofs.x_dof(e.b)) += len * lb(0);
      sys.rhs(sys.dofs.y_dof(e.b)) += len * lb(1);
    }
  }
  return sys;
}

void apply_dirichlet(GlobalSystem& sys, const mesh::PolygonalMesh& split,
                     const BoundarySpec& spec) {
  if (sys.bordered || sys.reduced)
    throw SolveError("apply_dirichlet: system already transformed");
  const int n = sys.dofs.n_dofs();
  std::vector<char> constrained(n, 0);
  Eigen::VectorXd gval = Eigen::VectorXd::Zero(n);
  int hits = 0;
  for (int v = 0; v < sys.dofs.n_vertices; ++v) {
    bool c = false;
    for (int m : sys.dofs.vertex_markers[v])
      if (spec.dirichlet_markers.count(m)) c = true;
    if (!c) continue;
    ++hits;
    const Eigen::Vector2d g =
        spec.g1 ? spec.g1(split.vertices[v]) : Eigen::Vector2d::Zero();
    constrained[sys.dofs.x_dof(v)] = 1;
    constrained[sys.dofs.y_dof(v)] = 1;
    gval(sys.dofs.x_dof(v)) = g(0);
    gval(sys.dofs.y_dof(v)) = g(1);
  }
  if (!spec.dirichlet_markers.empty() && hits == 0)
    throw SolveError("apply_dirichlet: no boundary vertices match the markers");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(sys.A.nonZeros());
  for (int col = 0; col < sys.A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it) {
      const int r = static_cast<int>(it.row());
      if (constrained[r]) continue;
      if (constrained[col]) {
        sys.rhs(r) -= it.value() * gval(col);
        continue;
      }
      trips.emplace_back(r, col, it.value());
    }
  for (int d = 0; d < n; ++d)
    if (constrained[d]) {
      trips.emplace_back(d, d, 1.0);
      sys.rhs(d) = gval(d);
    }
  Eigen::SparseMatrix<double> B(n, n);
  B.setFromTriplets(trips.begin(), trips.end());
  sys.A.swap(B);
  sys.reduced = true;
}

void build_traction_system(GlobalSystem& sys, const mesh::PolygonalMesh& split) {
  if (sys.bordered || sys.reduced)
    throw SolveError("build_traction_system: system already transformed");
  const int n = sys.dofs.n_dofs();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, 3);
  for (const auto& e : split.boundary_edges) {
    const double w = 0.5 * dist(split.vertices[e.a], split.vertices[e.b]);
    D(sys.dofs.x_dof(e.a), 0) += w;
    D(sys.dofs.x_dof(e.b), 0) += w;
    D(sys.dofs.y_dof(e.a), 1) += w;
    D(sys.dofs.y_dof(e.b), 1) += w;
  }
  for (std::size_t c = 0; c < split.cells.size(); ++c) {
    const auto geom = vem_local::make_cell_geometry(split.cell_polygon(static_cast<int>(c)));
    const auto proj = vem_local::build_projectors(geom);
    const Eigen::RowVectorXd row = geom.area * proj.pi0_rot;
    const auto& g = sys.dofs.cell_dofs[c];
    for (std::size_t j = 0; j < g.size(); ++j) D(g[j], 2) += row(j);
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(sys.A.nonZeros() + 6 * n);
  for (int col = 0; col < sys.A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), col, it.value());
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < n; ++r)
      if (D(r, k) != 0.0) {
        trips.emplace_back(r, n + k, D(r, k));
        trips.emplace_back(n + k, r, D(r, k));
      }
  Eigen::SparseMatrix<double> B(n + 3, n + 3);
  B.setFromTriplets(trips.begin(), trips.end());
  sys.A.swap(B);
  sys.rhs.conservativeResize(n + 3);
  sys.rhs.tail(3).setZero();
  sys.bordered = true;
}

namespace {

// Residual b - A x accumulated in long double.
Eigen::VectorXd residual(const Eigen::SparseMatrix<double>& A,
                         const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  std::vector<long double> acc(static_cast<std::size_t>(b.size()));
  for (Eigen::Index i = 0; i < b.size(); ++i) acc[i] = b(i);
  for (int col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
      acc[it.row()] -= static_cast<long double>(it.value()) * x(col);
  Eigen::VectorXd r(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i)
    r(i) = static_cast<double>(acc[i]);
  return r;
}

double inf_norm(const Eigen::SparseMatrix<double>& A) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(A.rows());
  for (int col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
      row_sums(it.row()) += std::abs(it.value());
  return row_sums.maxCoeff();
}

template <class Factorization>
Eigen::VectorXd refine(const Factorization& fact, const GlobalSystem& sys,
                       SolveReport& rep) {
  if (sys.rhs.lpNorm<Eigen::Infinity>() == 0.0) {
    rep.rel_residual = 0.0;
    return Eigen::VectorXd::Zero(sys.rhs.size());
  }
  const double anorm = inf_norm(sys.A);
  const double bnorm = sys.rhs.lpNorm<Eigen::Infinity>();
  // Normwise backward error |b - A x| / (|A| |x| + |b|); scale-invariant,
  // reaches O(eps) for a backward-stable solve even when the lambda term
  // makes |A| |x| >> |b|.
  const auto backward_error = [&](const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& r) {
    return r.lpNorm<Eigen::Infinity>() /
           (anorm * x.lpNorm<Eigen::Infinity>() + bnorm);
  };
  Eigen::VectorXd x = fact.solve(sys.rhs);
  Eigen::VectorXd r = residual(sys.A, x, sys.rhs);
  double eta = backward_error(x, r);
  int steps = 0;
  while (eta > 1e-15 && steps < 5) {
    x += fact.solve(r);
    ++steps;
    r = residual(sys.A, x, sys.rhs);
    eta = backward_error(x, r);
  }
  rep.refinement_steps = steps;
  rep.rel_residual = eta;
  if (!(eta <= 1e-10)) {
    std::ostringstream os;
    os << "solve: backward error " << eta << " after iterative refinement";
    throw SolveError(os.str());
  }
  return x;
}

}  // namespace

std::string SolveReport::to_string() const {
  std::ostringstream os;
  os << "dofs " << dofs << ", nnz " << nnz << ", method " << method
     << ", refinement steps " << refinement_steps << ", relative residual "
     << rel_residual;
  return os.str();
}

Eigen::VectorXd solve(const GlobalSystem& sys, SolveReport* report) {
  SolveReport rep;
  rep.dofs = static_cast<int>(sys.A.rows());
  rep.nnz = static_cast<int>(sys.A.nonZeros());
  Eigen::VectorXd x;
  if (sys.bordered) {
    rep.method = "SparseLU";
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(sys.A);
    if (lu.info() != Eigen::Success)
      throw SolveError("solve: LU factorization failed");
    x = refine(lu, sys, rep);
  } else {
    rep.method = "SimplicialLDLT";
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.A);
    if (ldlt.info() != Eigen::Success)
      throw SolveError("solve: LDLT factorization failed");
    x = refine(ldlt, sys, rep);
  }
  if (report) *report = rep;
  return x;
}

}  // namespace polyvem::assembly_solve
