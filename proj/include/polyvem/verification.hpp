#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyvem/assembly_solve.hpp"
#include "polyvem/mesh.hpp"
#include "polyvem/vem_local.hpp"

namespace polyvem::verification {

using vem_local::VecField;

enum class BoundaryKind { dirichlet, mixed_bottom_neumann, pure_traction };

struct ManufacturedCase {
  std::string name;
  double mu = 1.0;
  double lambda = 1.0;
  std::function<Eigen::Vector2d(Point2)> u;
  std::function<Eigen::Matrix2d(Point2)> grad_u;  // J(r,c) = d u_r / d x_c
  std::function<double(Point2)> div_u;            // analytic divergence
  std::function<Eigen::Vector2d(Point2)> f;
  BoundaryKind boundary = BoundaryKind::dirichlet;
  // Lambda entering sigma = 2 mu eps + lambda_for_f (div u) I; equal to
  // lambda except for the incompressible case, where div u = 0 makes the
  // lambda term vanish identically and f carries no lambda at all.
  double lambda_for_f = 1.0;

  Eigen::Matrix2d stress(Point2 p) const;
};

// Each factory validates f and grad_u against centred finite differences of
// u and sigma (step 1e-5, 20 interior points, 1e-5 relative) and throws on
// disagreement.
ManufacturedCase case_patch(double mu, double lambda);
ManufacturedCase case_test1(double lambda, double mu = 1.0);
ManufacturedCase case_test2(double lambda);        // mu fixed at 0.5
ManufacturedCase case_test3(double lambda = 1.0);  // mu = 1, f lambda-free
void validate_case(const ManufacturedCase& c);

struct ErrorReport {
  double h = 0.0;
  int dofs = 0;
  double errH1 = 0.0;
  double errL2 = 0.0;
  std::vector<double> cell_errH1_sq;
  std::vector<double> cell_errL2_sq;
};

// Errors of the elliptic projection of u_h against the exact solution,
// integrated cell-by-cell at the given quadrature degree.
ErrorReport compute_errors(const mesh::PolygonalMesh& split,
                           const Eigen::VectorXd& u_h,
                           const ManufacturedCase& c, int degree = 8);

// Least-squares slope of log(err) against log(h).
double fit_rate(const std::vector<std::pair<double, double>>& h_err);

// || Pi0 div u_h ||_{L2}: the divergence projection is piecewise constant.
double div_l2_norm(const mesh::PolygonalMesh& split, const Eigen::VectorXd& u_h);

// One assemble/solve pass on an already generated original mesh.
struct RunResult {
  ErrorReport errors;
  assembly_solve::SolveReport solve;
  Eigen::VectorXd u_h;
  Eigen::Vector3d beta = Eigen::Vector3d::Zero();  // multipliers (traction)
  double div_norm = 0.0;
};

RunResult run_single(const ManufacturedCase& c,
                     const mesh::PolygonalMesh& original, double alpha,
                     bool no_split = false, int quad_degree = 8);

// Boundary spec used by run_single for a given case (exposed for tests).
assembly_solve::BoundarySpec boundary_spec(const ManufacturedCase& c);

struct StudyConfig {
  std::string case_name = "test1";  // patch|test1|test2|test3
  std::string family = "voronoi";   // tri|dquad|voronoi
  int levels = 5;
  double alpha = 0.5;
  double mu = 1.0;  // honoured by patch/test1; test2/test3 fix their own
  std::vector<double> lambdas = {1.0};
  std::uint64_t seed = 20240915;
  int lloyd = 5;
  double jitter = 0.2;
  bool no_split = false;
};

// Mesh for one refinement level of a family; deterministic in (config, level).
mesh::PolygonalMesh make_level_mesh(const StudyConfig& cfg, int level);
ManufacturedCase make_case(const std::string& case_name, double lambda, double mu);

struct LevelRow {
  double h = 0.0;
  int dofs = 0;
  double errH1 = 0.0;
  double errL2 = 0.0;
};

struct ConvergenceTable {
  double lambda = 1.0;
  std::vector<LevelRow> rows;  // ordered by decreasing h
  double rateH1 = 0.0;
  double rateL2 = 0.0;
};

std::vector<ConvergenceTable> run_study(const StudyConfig& cfg);

// Report writers.
std::string table_csv(const ConvergenceTable& t);
std::string tables_markdown(const std::vector<ConvergenceTable>& tables,
                            const StudyConfig& cfg);
std::string table_svg(const ConvergenceTable& t, const std::string& title);

}  // namespace polyvem::verification
