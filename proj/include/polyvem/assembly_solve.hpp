#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "polyvem/mesh.hpp"
#include "polyvem/vem_local.hpp"

namespace polyvem::assembly_solve {

using vem_local::VecField;
// Traction data: position and outward unit normal -> traction vector.
using TractionField = std::function<Eigen::Vector2d(Point2, Eigen::Vector2d)>;

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Global component-block layout: x-components of the V split-mesh vertices in
// [0, V), y-components in [V, 2V).
struct DofMap {
  int n_vertices = 0;
  std::vector<std::vector<int>> cell_dofs;       // gather lists, local layout
  std::vector<std::vector<int>> vertex_markers;  // boundary markers per vertex

  int n_dofs() const { return 2 * n_vertices; }
  int x_dof(int v) const { return v; }
  int y_dof(int v) const { return n_vertices + v; }
};

DofMap build_dof_map(const mesh::PolygonalMesh& split);

struct BoundarySpec {
  std::set<int> dirichlet_markers;
  VecField g1;  // Dirichlet data; evaluated nodally at boundary vertices
  std::set<int> neumann_markers;
  TractionField g2;  // traction data on the Neumann part
  bool pure_traction = false;
};

struct GlobalSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd rhs;
  DofMap dofs;
  bool bordered = false;  // 3 Lagrange-multiplier rows appended
  bool reduced = false;   // Dirichlet DOFs eliminated to identity rows
};

// Scatters the local 2 mu a_mu + lambda b_div blocks and loads, then adds the
// Neumann boundary loads (Gauss degree 5 against the hat traces).
GlobalSystem assemble(const mesh::PolygonalMesh& split, double mu, double lambda,
                      const VecField& f, const BoundarySpec& spec);

// Symmetric elimination with identity rows for the constrained DOFs; values
// by nodal interpolation of spec.g1 at split-mesh boundary vertices.
void apply_dirichlet(GlobalSystem& sys, const mesh::PolygonalMesh& split,
                     const BoundarySpec& spec);

// Borders the matrix with the three constraint columns d1, d2 (boundary
// means of the two components) and d3 (integrated rotation).
void build_traction_system(GlobalSystem& sys, const mesh::PolygonalMesh& split);

struct SolveReport {
  int dofs = 0;
  int nnz = 0;
  std::string method;
  int refinement_steps = 0;
  double rel_residual = 0.0;

  std::string to_string() const;
};

// Direct factorization (LDLT for the reduced SPD path, LU for the bordered
// path) with iterative refinement on a long-double residual.
Eigen::VectorXd solve(const GlobalSystem& sys, SolveReport* report = nullptr);

}  // namespace polyvem::assembly_solve
