// Acceptance gate: one binary, ten criteria, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "polyvem/assembly_solve.hpp"
#include "polyvem/geometry.hpp"
#include "polyvem/mesh.hpp"
#include "polyvem/quadrature.hpp"
#include "polyvem/vem_local.hpp"
#include "polyvem/verification.hpp"

#include "../oracles.hpp"

using namespace polyvem;
namespace as = assembly_solve;
namespace vf = verification;

namespace {

int g_failed = 0;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

void run_criterion(int idx, const char* name, const std::function<Outcome()>& fn) {
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] %2d %-26s %s\n", o.ok ? "PASS" : "FAIL", idx, name,
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.ok) ++g_failed;
}

double ratio(double a, double b) { return a > b ? a / b : b / a; }

double sparse_inf_norm(const Eigen::SparseMatrix<double>& A) {
  Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(A.rows());
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      rowsum(it.row()) += std::abs(it.value());
  return rowsum.maxCoeff();
}

// Split every edge of a CCW cell at fraction alpha, cycle order preserved.
Polygon split_polygon(const Polygon& poly, double alpha) {
  Polygon out;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    out.push_back(a);
    out.push_back(a + alpha * (b - a));
  }
  return out;
}

// 1. Exact reproduction of linear displacement fields: nodal errors at
// rounding level on every family, split fraction, and lambda.
Outcome criterion_patch_test() {
  const std::vector<std::pair<std::string, mesh::PolygonalMesh>> meshes = {
      {"tri", mesh::generate_triangle_mesh(6, 0.2)},
      {"dquad", mesh::generate_distorted_quad_mesh(6)},
      {"voronoi", mesh::generate_voronoi_mesh(24, 5, 20240915)}};
  double worst = 0.0;
  int runs = 0;
  for (const auto& [family, m] : meshes) {
    for (double alpha : {0.25, 0.5, 0.75}) {
      for (double lambda : {1.0, 1e6}) {
        const vf::ManufacturedCase c = vf::case_patch(1.5, lambda);
        const mesh::SplitResult sr = mesh::split_edges(m, alpha);
        const as::BoundarySpec spec = vf::boundary_spec(c);
        as::GlobalSystem sys =
            as::assemble(sr.mesh, c.mu, c.lambda, c.f, spec);
        as::apply_dirichlet(sys, sr.mesh, spec);
        const Eigen::VectorXd u_h = as::solve(sys);
        const int V = sys.dofs.n_vertices;
        double err = 0.0, scale = 0.0;
        for (int v = 0; v < V; ++v) {
          const Eigen::Vector2d ue = c.u(sr.mesh.vertices[v]);
          err = std::max(err, std::abs(u_h(v) - ue(0)));
          err = std::max(err, std::abs(u_h(V + v) - ue(1)));
          scale = std::max(scale, ue.lpNorm<Eigen::Infinity>());
        }
        worst = std::max(worst, err / scale);
        ++runs;
      }
    }
  }
  return {worst <= 1e-9,
          fmt("max nodal rel err %.2e over %d runs (tol 1e-9)", worst, runs)};
}

// 2. First-order H1 / second-order L2 convergence on five Voronoi levels at
// lambda = 1e6.
Outcome criterion_voronoi_rates() {
  vf::StudyConfig cfg;
  cfg.case_name = "test1";
  cfg.family = "voronoi";
  cfg.levels = 5;
  cfg.lambdas = {1e6};
  const vf::ConvergenceTable t = vf::run_study(cfg)[0];
  const bool ok = t.rateH1 >= 0.85 && t.rateH1 <= 1.15 && t.rateL2 >= 1.8 &&
                  t.rateL2 <= 2.2;
  return {ok, fmt("rates H1 %.3f L2 %.3f, dofs %d..%d", t.rateH1, t.rateL2,
                  t.rows.front().dofs, t.rows.back().dofs)};
}

// 3. Error spread across lambda = 1..1e7 on one fixed ~5000-dof mesh.
Outcome criterion_lambda_robustness() {
  const mesh::PolygonalMesh m = mesh::generate_voronoi_mesh(512, 5, 20240915);
  std::vector<double> h1, l2;
  int dofs = 0;
  for (int k = 0; k <= 7; ++k) {
    const vf::RunResult r =
        vf::run_single(vf::case_test1(std::pow(10.0, k)), m, 0.5);
    h1.push_back(r.errors.errH1);
    l2.push_back(r.errors.errL2);
    dofs = r.errors.dofs;
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return (*mx - *mn) / *mn;
  };
  const double sH1 = spread(h1), sL2 = spread(l2);
  return {sH1 <= 0.02 && sL2 <= 0.02,
          fmt("spread H1 %.3f%% L2 %.3f%% at %d dofs (tol 2%%)", 100 * sH1,
              100 * sL2, dofs)};
}

// 4. Coarse-mesh error magnitudes against pinned reference values at
// comparable mesh size (h about 0.40).
Outcome criterion_error_anchor() {
  const double refH1 = 4.859, refL2 = 4.708e-1, refH = 0.3968;
  const mesh::PolygonalMesh m = mesh::generate_voronoi_mesh(16, 5, 13);
  const vf::RunResult r = vf::run_single(vf::case_test1(1.0), m, 0.5);
  const double fH1 = ratio(r.errors.errH1, refH1);
  const double fL2 = ratio(r.errors.errL2, refL2);
  return {fH1 <= 1.5 && fL2 <= 1.5,
          fmt("errH1 %.3f (x%.2f of %.3f), errL2 %.4f (x%.2f of %.4f), "
              "h %.4f vs %.4f",
              r.errors.errH1, fH1, refH1, r.errors.errL2, fL2, refL2,
              r.errors.h, refH)};
}

// 5. Mixed Dirichlet/Neumann case: per-lambda rates in window and H1 error
// columns agreeing level-by-level within 2% across lambda up to 1e10.
Outcome criterion_mixed_bc() {
  vf::StudyConfig cfg;
  cfg.case_name = "test2";
  cfg.family = "dquad";
  cfg.levels = 5;
  cfg.lambdas = {1.0, 1e4, 1e7, 1e10};
  const std::vector<vf::ConvergenceTable> tables = vf::run_study(cfg);
  bool ok = true;
  double worstH1 = 0.0, worstL2 = 0.0, worstCol = 0.0;
  for (const auto& t : tables) {
    ok = ok && t.rateH1 >= 0.85 && t.rateH1 <= 1.15 && t.rateL2 >= 1.8 &&
         t.rateL2 <= 2.2;
    worstH1 = std::max(worstH1, std::abs(t.rateH1 - 1.0));
    worstL2 = std::max(worstL2, std::abs(t.rateL2 - 2.0));
  }
  for (std::size_t level = 0; level < tables[0].rows.size(); ++level) {
    double mn = tables[0].rows[level].errH1, mx = mn;
    for (const auto& t : tables) {
      mn = std::min(mn, t.rows[level].errH1);
      mx = std::max(mx, t.rows[level].errH1);
    }
    worstCol = std::max(worstCol, (mx - mn) / mn);
  }
  ok = ok && worstCol <= 0.02;
  return {ok, fmt("max |rateH1-1| %.3f, |rateL2-2| %.3f, column spread %.3f%% "
                  "over 4 lambdas",
                  worstH1, worstL2, 100 * worstCol)};
}

// 6. Incompressible limit: finite errors and first/second-order rates at
// lambda = 1e10 on two families; || Pi0 div u_h || non-increasing in lambda.
Outcome criterion_incompressible() {
  bool ok = true;
  std::string detail;
  for (const char* family : {"voronoi", "dquad"}) {
    vf::StudyConfig cfg;
    cfg.case_name = "test3";
    cfg.family = family;
    cfg.levels = 5;
    cfg.lambdas = {1e10};
    const vf::ConvergenceTable t = vf::run_study(cfg)[0];
    for (const auto& row : t.rows)
      ok = ok && std::isfinite(row.errH1) && std::isfinite(row.errL2);
    ok = ok && t.rateH1 >= 0.85 && t.rateH1 <= 1.15 && t.rateL2 >= 1.8 &&
         t.rateL2 <= 2.2;
    detail += fmt("%s H1 %.3f L2 %.3f; ", family, t.rateH1, t.rateL2);
  }
  vf::StudyConfig cfg;
  cfg.case_name = "test3";
  cfg.family = "voronoi";
  const mesh::PolygonalMesh m = vf::make_level_mesh(cfg, 1);
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (int k = 0; k <= 10; k += 2) {
    const double dn =
        vf::run_single(vf::case_test3(std::pow(10.0, k)), m, 0.5).div_norm;
    monotone = monotone && dn <= prev * (1.0 + 1e-9) + 1e-15;
    prev = dn;
  }
  ok = ok && monotone;
  detail += fmt("div norm %s, last %.2e", monotone ? "non-increasing" : "NOT "
                "monotone", prev);
  return {ok, detail};
}

// 7. Local operator identities on 100 random valid cells: projector algebra
// at 1e-12 (scaled), stiffness kernel exactly the rigid motions.
Outcome criterion_operator_suite() {
  Rng rng(911);
  double worst = 0.0, worst_gap_low = 0.0, worst_gap_high = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Polygon poly = oracles::random_valid_cell(rng);
    const vem_local::CellGeometry geo = vem_local::make_cell_geometry(poly);
    const vem_local::LocalProjection proj = vem_local::build_projectors(geo);
    const int N = static_cast<int>(poly.size());
    const Eigen::MatrixXd D = proj.basis.dof_matrix(poly);
    const Eigen::MatrixXd P = proj.pi1_dof;
    const Eigen::MatrixXd R =
        Eigen::MatrixXd::Identity(2 * N, 2 * N) - P;

    // P1 reproduction and idempotence.
    const double dnorm = std::max(1.0, D.lpNorm<Eigen::Infinity>());
    worst = std::max(
        worst, (proj.pi1_coeffs * D - Eigen::MatrixXd::Identity(6, 6))
                       .lpNorm<Eigen::Infinity>() /
                   dnorm);
    worst = std::max(worst, (P * P - P).lpNorm<Eigen::Infinity>() /
                                P.lpNorm<Eigen::Infinity>());

    // Boundary-mean and rot conditions on the remainder.
    std::vector<double> w(N);
    for (int i = 0; i < N; ++i)
      w[i] = 0.5 * (dist(poly[i], poly[(i + 1) % N]) +
                    dist(poly[i], poly[(i + N - 1) % N]));
    for (int j = 0; j < 2 * N; ++j) {
      double sx = 0.0, sy = 0.0;
      for (int i = 0; i < N; ++i) {
        sx += w[i] * R(i, j);
        sy += w[i] * R(N + i, j);
      }
      const double colinf = std::max(1.0, R.col(j).lpNorm<Eigen::Infinity>());
      worst = std::max(worst, std::abs(sx) / (geo.perimeter * colinf));
      worst = std::max(worst, std::abs(sy) / (geo.perimeter * colinf));
      worst = std::max(
          worst, std::abs(double(proj.pi0_rot * R.col(j))) /
                     (proj.pi0_rot.lpNorm<1>() * colinf));
    }

    // Pi0 div/rot exactness on the P1 basis itself.
    for (int beta = 0; beta < 6; ++beta) {
      const Eigen::Matrix2d J = proj.basis.jacobian(beta);
      const double cscale =
          std::max(1.0, D.col(beta).lpNorm<Eigen::Infinity>());
      worst = std::max(
          worst, std::abs(double(proj.pi0_div * D.col(beta)) - J.trace()) /
                     (proj.pi0_div.lpNorm<1>() * cscale));
      worst = std::max(
          worst, std::abs(double(proj.pi0_rot * D.col(beta)) -
                          (J(1, 0) - J(0, 1))) /
                     (proj.pi0_rot.lpNorm<1>() * cscale));
    }

    // Stabilization vanishes on P1. On triangles the DOFs span exactly the
    // vector P1 space and S itself is at rounding level, hence the max.
    const Eigen::MatrixXd S = vem_local::build_stabilization(proj);
    worst = std::max(worst,
                     (S * D).lpNorm<Eigen::Infinity>() /
                         (std::max(1.0, S.lpNorm<Eigen::Infinity>()) * dnorm));

    // a_mu kernel: rigid motions annihilated, rank exactly 2N - 3.
    const vem_local::LocalMatrices lm =
        vem_local::build_local_matrices(proj, geo);
    Eigen::MatrixXd rm = Eigen::MatrixXd::Zero(2 * N, 3);
    for (int i = 0; i < N; ++i) {
      rm(i, 0) = 1.0;
      rm(N + i, 1) = 1.0;
      rm(i, 2) = -(poly[i].y - geo.centroid.y);
      rm(N + i, 2) = poly[i].x - geo.centroid.x;
    }
    worst = std::max(worst, (lm.a_mu * rm).lpNorm<Eigen::Infinity>() /
                                (lm.a_mu.lpNorm<Eigen::Infinity>() *
                                 rm.lpNorm<Eigen::Infinity>()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (lm.a_mu + lm.a_mu.transpose()));
    const Eigen::VectorXd ev = es.eigenvalues();
    const double evmax = ev(2 * N - 1);
    worst_gap_low = std::max(worst_gap_low, ev(2) / evmax);
    worst_gap_high = std::min(worst_gap_high, ev(3) / evmax);
  }
  const bool ok = worst <= 1e-12 && worst_gap_low <= 1e-11 &&
                  worst_gap_high >= 1e-9;
  return {ok, fmt("max scaled violation %.2e (tol 1e-12), kernel gap "
                  "%.1e / %.1e over 100 cells",
                  worst, worst_gap_low, worst_gap_high)};
}

// 8. Interpolant preserves cell div/rot means for polynomial fields up to
// degree 4; traction interpolant has zero boundary mean.
Outcome criterion_interpolation() {
  Rng rng(2718);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    Polygon poly = oracles::random_valid_cell(rng);
    const Point2 c = polygon_centroid(poly);
    const double d = polygon_diameter(poly);
    for (Point2& p : poly) p = (1.0 / d) * (p - c);

    double cf[2][15];
    for (int comp = 0; comp < 2; ++comp)
      for (int k = 0; k < 15; ++k) cf[comp][k] = rng.uniform(-1.0, 1.0);
    auto u = [&cf](Point2 p) {
      Eigen::Vector2d v = Eigen::Vector2d::Zero();
      int k = 0;
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b, ++k) {
          const double m = std::pow(p.x, a) * std::pow(p.y, b);
          v(0) += cf[0][k] * m;
          v(1) += cf[1][k] * m;
        }
      return v;
    };

    const int n = static_cast<int>(poly.size());
    double flux = 0.0, circ = 0.0;
    for (int i = 0; i < n; ++i) {
      const Point2 a = poly[i], b = poly[(i + 1) % n];
      const double len = dist(a, b);
      const Eigen::Vector2d nh((b.y - a.y) / len, -(b.x - a.x) / len);
      const Eigen::Vector2d th((b.x - a.x) / len, (b.y - a.y) / len);
      flux += quadrature::integrate_edge(
          [&](Point2 p) { return u(p).dot(nh); }, a, b, 11);
      circ += quadrature::integrate_edge(
          [&](Point2 p) { return u(p).dot(th); }, a, b, 11);
    }
    const double area = polygon_signed_area(poly);

    for (double alpha : {0.25, 0.5, 0.75}) {
      const Eigen::VectorXd dofs =
          vem_local::interpolate_dirichlet(u, poly, alpha, 11);
      const vem_local::CellGeometry geo =
          vem_local::make_cell_geometry(split_polygon(poly, alpha));
      const vem_local::LocalProjection proj = vem_local::build_projectors(geo);
      worst = std::max(
          worst, std::abs(double(proj.pi0_div * dofs) - flux / area));
      worst = std::max(
          worst, std::abs(double(proj.pi0_rot * dofs) - circ / area));
    }
  }

  const mesh::PolygonalMesh m = mesh::generate_voronoi_mesh(32, 5, 20240915);
  const mesh::SplitResult sr = mesh::split_edges(m, 0.4);
  auto u = [](Point2 p) {
    return Eigen::Vector2d(std::exp(p.x) * std::sin(p.y) + 0.3,
                           std::cos(2.0 * p.x) * p.y * p.y - 0.7);
  };
  const Eigen::VectorXd uJ =
      vem_local::interpolate_traction(u, sr.mesh, sr.map, 11);
  const int V = static_cast<int>(sr.mesh.vertices.size());
  Eigen::Vector2d bmean = Eigen::Vector2d::Zero();
  for (const auto& e : sr.mesh.boundary_edges) {
    const double len = dist(sr.mesh.vertices[e.a], sr.mesh.vertices[e.b]);
    bmean(0) += 0.5 * len * (uJ(e.a) + uJ(e.b));
    bmean(1) += 0.5 * len * (uJ(V + e.a) + uJ(V + e.b));
  }
  const double bres = bmean.lpNorm<Eigen::Infinity>();
  const bool ok = worst <= 1e-10 && bres <= 1e-12;
  return {ok, fmt("max div/rot mean defect %.2e (tol 1e-10), boundary mean "
                  "%.2e (tol 1e-12)",
                  worst, bres)};
}

// 9. Pure-traction path: zero data gives the zero solution; constraint
// residuals at solver tolerance on a manufactured traction run.
Outcome criterion_pure_traction() {
  vf::ManufacturedCase zero;
  zero.name = "zero";
  zero.mu = 1.0;
  zero.lambda = 1e4;
  zero.lambda_for_f = 1e4;
  zero.u = [](Point2) { return Eigen::Vector2d::Zero(); };
  zero.grad_u = [](Point2) { return Eigen::Matrix2d::Zero(); };
  zero.div_u = [](Point2) { return 0.0; };
  zero.f = [](Point2) { return Eigen::Vector2d::Zero(); };
  zero.boundary = vf::BoundaryKind::pure_traction;
  const mesh::PolygonalMesh m0 = mesh::generate_voronoi_mesh(48, 5, 20240915);
  const vf::RunResult rz = vf::run_single(zero, m0, 0.5);
  const double uinf = rz.u_h.lpNorm<Eigen::Infinity>();
  const double binf = rz.beta.lpNorm<Eigen::Infinity>();

  vf::ManufacturedCase c = vf::case_test2(1e4);
  c.boundary = vf::BoundaryKind::pure_traction;
  const mesh::PolygonalMesh m1 = mesh::generate_voronoi_mesh(64, 5, 20240915);
  const mesh::SplitResult sr = mesh::split_edges(m1, 0.5);
  const as::BoundarySpec spec = vf::boundary_spec(c);
  as::GlobalSystem sys = as::assemble(sr.mesh, c.mu, c.lambda, c.f, spec);
  as::build_traction_system(sys, sr.mesh);
  const Eigen::VectorXd x = as::solve(sys);
  const Eigen::VectorXd res = sys.A * x - sys.rhs;
  const double dres = res.tail(3).lpNorm<Eigen::Infinity>();
  const double scale = sparse_inf_norm(sys.A) * x.lpNorm<Eigen::Infinity>() +
                       sys.rhs.lpNorm<Eigen::Infinity>();
  const bool ok = uinf <= 1e-12 && binf <= 1e-12 && dres <= 1e-10 * scale;
  return {ok, fmt("zero data |u_h| %.2e |beta| %.2e (tol 1e-12); constraint "
                  "residual %.2e vs %.2e",
                  uinf, binf, dres, 1e-10 * scale)};
}

// 10. Chebyshev kernel disc against brute-force grid search on a convex, a
// star-shaped, and a non-star polygon.
Outcome criterion_kernel_disc() {
  const std::vector<std::pair<std::string, Polygon>> shapes = {
      {"square", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
      {"L-shape", {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}},
      {"U-shape",
       {{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}}}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, poly] : shapes) {
    const Disc d = kernel_chebyshev_disc(poly);
    const oracles::GridSearchResult gs = oracles::kernel_radius_grid(poly, 160);
    ok = ok && std::abs(d.radius - gs.radius) <= 2.0 * gs.spacing;
    detail += fmt("%s %.4f/%.4f ", name.c_str(), d.radius, gs.radius);
  }
  return {ok, detail + "(exact/grid, tol 2 spacings)"};
}

}  // namespace

int main() {
  run_criterion(1, "patch test", criterion_patch_test);
  run_criterion(2, "voronoi convergence rates", criterion_voronoi_rates);
  run_criterion(3, "lambda robustness", criterion_lambda_robustness);
  run_criterion(4, "error magnitude anchor", criterion_error_anchor);
  run_criterion(5, "mixed boundary conditions", criterion_mixed_bc);
  run_criterion(6, "incompressible limit", criterion_incompressible);
  run_criterion(7, "local operator identities", criterion_operator_suite);
  run_criterion(8, "interpolation div/rot", criterion_interpolation);
  run_criterion(9, "pure traction path", criterion_pure_traction);
  run_criterion(10, "kernel disc oracle", criterion_kernel_disc);
  if (g_failed == 0)
    std::printf("all 10 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failed);
  return g_failed;
}
