#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "polyvem/verification.hpp"

using namespace polyvem;
using namespace polyvem::verification;

TEST_CASE("manufactured cases pass their own finite-difference gates") {
  CHECK_NOTHROW(case_patch(1.0, 1.0));
  CHECK_NOTHROW(case_patch(2.0, 1e6));
  CHECK_NOTHROW(case_test1(1.0));
  CHECK_NOTHROW(case_test1(1e6));
  CHECK_NOTHROW(case_test2(1.0));
  CHECK_NOTHROW(case_test2(1e10));
  CHECK_NOTHROW(case_test3());
  CHECK_NOTHROW(case_test3(1e10));
}

TEST_CASE("validate_case rejects inconsistent data") {
  SUBCASE("wrong body force") {
    auto c = case_test1(1.0);
    const auto good = c.f;
    c.f = [good](Point2 p) {
      return (good(p) + Eigen::Vector2d(0.01, 0.0)).eval();
    };
    CHECK_THROWS(validate_case(c));
  }
  SUBCASE("wrong gradient") {
    auto c = case_test2(1.0);
    const auto good = c.grad_u;
    c.grad_u = [good](Point2 p) {
      Eigen::Matrix2d J = good(p);
      J(0, 1) += 0.02;
      return J;
    };
    CHECK_THROWS(validate_case(c));
  }
  SUBCASE("divergence disagreeing with the gradient trace") {
    auto c = case_test2(1.0);
    c.div_u = [](Point2) { return 0.1234; };
    CHECK_THROWS(validate_case(c));
  }
}

TEST_CASE("analytic divergence closures") {
  Rng rng(111);
  SUBCASE("test2: exactly 2 / lambda everywhere") {
    for (double lambda : {1.0, 1e4, 1e10}) {
      const auto c = case_test2(lambda);
      for (int i = 0; i < 50; ++i) {
        const Point2 p{rng.uniform(), rng.uniform()};
        CHECK(c.div_u(p) == 2.0 / lambda);
        CHECK(std::abs(c.grad_u(p).trace() - 2.0 / lambda) < 1e-16 + 1e-10 / lambda);
      }
    }
  }
  SUBCASE("test3: the gradient trace is exactly zero in floating point") {
    const auto c = case_test3(1e10);
    for (int i = 0; i < 50; ++i) {
      const Point2 p{rng.uniform(), rng.uniform()};
      CHECK(c.div_u(p) == 0.0);
      CHECK(c.grad_u(p).trace() == 0.0);
    }
  }
}

TEST_CASE("test2 stress and traction data") {
  const double lambda = 25.0;
  const auto c = case_test2(lambda);
  // At (x, 0): grad = [[1/l, sin x], [-sin x, 1/l]], so the strain is
  // diagonal and sigma = (1/l) I + 2 I; bottom traction (n = (0,-1)) is
  // (0, -(1/l + 2)).
  const Eigen::Matrix2d sig = c.stress({0.5, 0.0});
  CHECK(sig(0, 0) == doctest::Approx(1.0 / lambda + 2.0).epsilon(1e-14));
  CHECK(sig(1, 1) == doctest::Approx(1.0 / lambda + 2.0).epsilon(1e-14));
  CHECK(sig(0, 1) == doctest::Approx(0.0));
  CHECK(sig(1, 0) == doctest::Approx(0.0));

  const auto spec = boundary_spec(c);
  CHECK(spec.dirichlet_markers == std::set<int>{2, 3, 4});
  CHECK(spec.neumann_markers == std::set<int>{1});
  CHECK_FALSE(spec.pure_traction);
  const Eigen::Vector2d g2 = spec.g2({0.5, 0.0}, Eigen::Vector2d(0, -1));
  CHECK(g2(0) == doctest::Approx(0.0));
  CHECK(g2(1) == doctest::Approx(-(1.0 / lambda + 2.0)).epsilon(1e-14));
}

TEST_CASE("boundary specs of the other cases") {
  const auto cd = case_test1(1.0);
  const auto sd = boundary_spec(cd);
  CHECK(sd.dirichlet_markers == std::set<int>{1, 2, 3, 4});
  CHECK(sd.neumann_markers.empty());
  const Eigen::Vector2d g = sd.g1({0.3, 0.7});
  const Eigen::Vector2d ue = cd.u({0.3, 0.7});
  CHECK(g(0) == doctest::Approx(ue(0)));
  CHECK(g(1) == doctest::Approx(ue(1)));

  auto ct = case_test2(1.0);
  ct.boundary = BoundaryKind::pure_traction;
  const auto st = boundary_spec(ct);
  CHECK(st.pure_traction);
  CHECK(st.dirichlet_markers.empty());
  CHECK(st.neumann_markers == std::set<int>{1, 2, 3, 4});
}

TEST_CASE("patch solutions are nodally exact") {
  for (const char* family : {"tri", "dquad", "voronoi"}) {
    StudyConfig cfg;
    cfg.family = family;
    const auto original = make_level_mesh(cfg, 0);
    for (double lambda : {1.0, 1e6}) {
      const auto c = case_patch(1.0, lambda);
      const auto r = run_single(c, original, 0.5);
      CHECK(r.errors.errH1 < 1e-9);
      CHECK(r.errors.errL2 < 1e-10);
    }
  }
}

TEST_CASE("compute_errors measures the projection error") {
  const auto c = case_test1(10.0);
  StudyConfig cfg;
  cfg.family = "voronoi";
  const auto original = make_level_mesh(cfg, 1);
  const auto r = run_single(c, original, 0.5);
  CHECK(r.errors.h > 0.0);
  CHECK(r.errors.dofs > 0);
  CHECK(r.errors.errH1 > 0.0);
  CHECK(r.errors.errL2 > 0.0);
  CHECK(r.errors.cell_errH1_sq.size() == r.errors.cell_errL2_sq.size());

  SUBCASE("cell contributions sum to the squared totals") {
    double h1 = 0.0, l2 = 0.0;
    for (double v : r.errors.cell_errH1_sq) h1 += v;
    for (double v : r.errors.cell_errL2_sq) l2 += v;
    CHECK(std::sqrt(h1) == doctest::Approx(r.errors.errH1).epsilon(1e-12));
    CHECK(std::sqrt(l2) == doctest::Approx(r.errors.errL2).epsilon(1e-12));
  }
  SUBCASE("quadrature degree is converged") {
    const auto r10 = run_single(c, original, 0.5, false, 10);
    CHECK(r10.errors.errH1 ==
          doctest::Approx(r.errors.errH1).epsilon(1e-8));
    CHECK(r10.errors.errL2 ==
          doctest::Approx(r.errors.errL2).epsilon(1e-8));
  }
}

TEST_CASE("fit_rate") {
  SUBCASE("recovers an exact power law") {
    std::vector<std::pair<double, double>> pts;
    for (double h : {0.4, 0.2, 0.1, 0.05}) pts.push_back({h, 3.0 * h * h});
    CHECK(fit_rate(pts) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("reference eight-level sequence") {
    const std::vector<double> h{0.396819, 0.275890, 0.193715, 0.140331,
                                0.096262, 0.065690, 0.046554, 0.033120};
    const std::vector<double> err{1.076e-1, 7.381e-2, 5.238e-2, 3.727e-2,
                                  2.605e-2, 1.847e-2, 1.297e-2, 9.158e-3};
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < h.size(); ++i) pts.push_back({h[i], err[i]});
    CHECK(fit_rate(pts) == doctest::Approx(0.98387).epsilon(1e-4));
  }
  SUBCASE("degenerate input throws") {
    CHECK_THROWS(fit_rate({}));
    CHECK_THROWS(fit_rate({{0.1, 0.5}}));
    CHECK_THROWS(fit_rate({{0.1, 0.5}, {0.1, 0.3}}));
    CHECK_THROWS(fit_rate({{0.1, -0.5}, {0.2, 0.3}}));
  }
}

TEST_CASE("interpolation error of the exact solution decays linearly") {
  const auto c = case_test1(100.0);
  StudyConfig cfg;
  cfg.family = "dquad";
  std::vector<std::pair<double, double>> pts;
  for (int level = 0; level < 3; ++level) {
    const auto original = make_level_mesh(cfg, level);
    const auto [split, map] = mesh::split_edges(original, 0.5);
    const Eigen::VectorXd ui = vem_local::interpolate_nodal(c.u, split, map);
    const auto rep = compute_errors(split, ui, c);
    pts.push_back({rep.h, rep.errH1});
  }
  const double rate = fit_rate(pts);
  CHECK(rate > 0.8);
  CHECK(rate < 1.3);
}

TEST_CASE("div_l2_norm matches the divergence closure on interpolants") {
  // Pi0 div of the test2 interpolant equals 2 / lambda cellwise (the edge
  // means are integrated exactly enough), so the norm is 2 / lambda.
  const double lambda = 1e6;
  const auto c = case_test2(lambda);
  StudyConfig cfg;
  cfg.family = "voronoi";
  const auto original = make_level_mesh(cfg, 1);
  const auto [split, map] = mesh::split_edges(original, 0.5);
  const Eigen::VectorXd ui = vem_local::interpolate_nodal(c.u, split, map);
  CHECK(div_l2_norm(split, ui) ==
        doctest::Approx(2.0 / lambda).epsilon(1e-4));
}

TEST_CASE("make_level_mesh is deterministic and refines") {
  StudyConfig cfg;
  cfg.family = "voronoi";
  const auto a = mesh::mesh_to_string(make_level_mesh(cfg, 2));
  const auto b = mesh::mesh_to_string(make_level_mesh(cfg, 2));
  CHECK(a == b);
  const auto q1 = mesh::check_quality(make_level_mesh(cfg, 0));
  const auto q2 = mesh::check_quality(make_level_mesh(cfg, 2));
  CHECK(q2.h < 0.6 * q1.h);
}

TEST_CASE("run_study shape and reporting") {
  StudyConfig cfg;
  cfg.case_name = "test2";
  cfg.family = "dquad";
  cfg.levels = 3;
  cfg.lambdas = {1.0, 1e4};
  const auto tables = run_study(cfg);
  REQUIRE(tables.size() == 2);
  for (const auto& t : tables) {
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].h > t.rows[1].h);
    CHECK(t.rows[1].h > t.rows[2].h);
    CHECK(t.rateH1 > 0.8);
    CHECK(t.rateL2 > 1.6);
  }
  // Same meshes for both lambdas: identical h and dof columns.
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(tables[0].rows[r].h == tables[1].rows[r].h);
    CHECK(tables[0].rows[r].dofs == tables[1].rows[r].dofs);
  }

  SUBCASE("csv writer") {
    const std::string csv = table_csv(tables[0]);
    CHECK(csv.substr(0, 19) == "h,dofs,errH1,errL2\n");
  }
  SUBCASE("markdown writer") {
    const std::string md = tables_markdown(tables, cfg);
    CHECK(md.find("| h | dofs | ErrH1 | rate | ErrL2 | rate |") != std::string::npos);
    CHECK(md.find("lambda = 10000") != std::string::npos);
  }
  SUBCASE("svg writer") {
    const std::string svg = table_svg(tables[0], "test");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  }
}

TEST_CASE("no-split runs lock for large lambda") {
  // The unsplit lowest-order method on triangles volume-locks; the split
  // method does not. Observational ratio on the same base mesh.
  StudyConfig cfg;
  cfg.family = "tri";
  const auto c = case_test3(1e8);
  const auto coarse = run_single(c, make_level_mesh(cfg, 1), 0.5, true);
  const auto original = make_level_mesh(cfg, 2);
  const auto locked = run_single(c, original, 0.5, true);
  const auto split = run_single(c, original, 0.5, false);
  // The unsplit error stalls under refinement; the split one converges.
  CHECK(locked.errors.errH1 > 0.8 * coarse.errors.errH1);
  CHECK(split.errors.errH1 < 0.2 * locked.errors.errH1);
  CHECK(split.div_norm < 0.1 * locked.div_norm);
}

TEST_CASE("make_case dispatch") {
  CHECK(make_case("patch", 2.0, 3.0).name == "patch");
  CHECK(make_case("test1", 2.0, 1.0).name == "test1");
  CHECK(make_case("test2", 2.0, 1.0).mu == doctest::Approx(0.5));
  CHECK(make_case("test3", 2.0, 1.0).lambda == doctest::Approx(2.0));
  CHECK_THROWS(make_case("nope", 1.0, 1.0));
}
