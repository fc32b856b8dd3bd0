#include "polyvem/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "polyvem/quadrature.hpp"

namespace polyvem::verification {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Eigen::Matrix2d ManufacturedCase::stress(Point2 p) const {
  const Eigen::Matrix2d J = grad_u(p);
  const Eigen::Matrix2d eps = 0.5 * (J + J.transpose());
  return 2.0 * mu * eps +
         lambda_for_f * div_u(p) * Eigen::Matrix2d::Identity();
}

void validate_case(const ManufacturedCase& c) {
  const double step = 1e-5;
  Rng rng(777);
  for (int k = 0; k < 20; ++k) {
    const Point2 p{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};

    // grad_u against finite differences of u.
    Eigen::Matrix2d J_fd;
    J_fd.col(0) = (c.u({p.x + step, p.y}) - c.u({p.x - step, p.y})) / (2 * step);
    J_fd.col(1) = (c.u({p.x, p.y + step}) - c.u({p.x, p.y - step})) / (2 * step);
    const Eigen::Matrix2d J = c.grad_u(p);
    if ((J_fd - J).norm() > 1e-5 * std::max(1.0, J.norm()))
      throw std::runtime_error(c.name + ": grad_u disagrees with finite differences");

    // div_u against the trace of grad_u.
    if (std::abs(J.trace() - c.div_u(p)) > 1e-10 * std::max(1.0, std::abs(c.div_u(p))))
      throw std::runtime_error(c.name + ": div_u disagrees with grad_u");

    // f against -div sigma(u).
    const Eigen::Matrix2d sxp = c.stress({p.x + step, p.y});
    const Eigen::Matrix2d sxm = c.stress({p.x - step, p.y});
    const Eigen::Matrix2d syp = c.stress({p.x, p.y + step});
    const Eigen::Matrix2d sym = c.stress({p.x, p.y - step});
    Eigen::Vector2d f_fd;
    f_fd(0) = -((sxp(0, 0) - sxm(0, 0)) + (syp(0, 1) - sym(0, 1))) / (2 * step);
    f_fd(1) = -((sxp(1, 0) - sxm(1, 0)) + (syp(1, 1) - sym(1, 1))) / (2 * step);
    const Eigen::Vector2d fv = c.f(p);
    if ((f_fd - fv).norm() > 1e-5 * std::max(1.0, fv.norm()))
      throw std::runtime_error(c.name + ": f disagrees with -div sigma(u)");
  }
}

ManufacturedCase case_patch(double mu, double lambda) {
  if (!(lambda > 0.0) || !(mu > 0.0))
    throw std::runtime_error("case_patch: material constants must be positive");
  ManufacturedCase c;
  c.name = "patch";
  c.mu = mu;
  c.lambda = lambda;
  c.lambda_for_f = lambda;
  c.u = [](Point2 p) {
    return Eigen::Vector2d(0.17 + 0.6 * p.x - 0.3 * p.y,
                           -0.42 + 0.25 * p.x + 0.8 * p.y);
  };
  c.grad_u = [](Point2) {
    return (Eigen::Matrix2d() << 0.6, -0.3, 0.25, 0.8).finished();
  };
  c.div_u = [](Point2) { return 1.4; };
  c.f = [](Point2) { return Eigen::Vector2d::Zero(); };
  c.boundary = BoundaryKind::dirichlet;
  validate_case(c);
  return c;
}

ManufacturedCase case_test1(double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0))
    throw std::runtime_error("case_test1: material constants must be positive");
  ManufacturedCase c;
  c.name = "test1";
  c.mu = mu;
  c.lambda = lambda;
  c.lambda_for_f = lambda;
  const double cc = 1.0 / (mu + lambda);
  c.u = [cc](Point2 p) {
    const double s2x = std::sin(2 * kPi * p.x), c2x = std::cos(2 * kPi * p.x);
    const double s2y = std::sin(2 * kPi * p.y), c2y = std::cos(2 * kPi * p.y);
    const double sxy = std::sin(kPi * p.x) * std::sin(kPi * p.y);
    return Eigen::Vector2d((-1 + c2x) * s2y + cc * sxy,
                           (1 - c2y) * s2x + cc * sxy);
  };
  c.grad_u = [cc](Point2 p) {
    const double s2x = std::sin(2 * kPi * p.x), c2x = std::cos(2 * kPi * p.x);
    const double s2y = std::sin(2 * kPi * p.y), c2y = std::cos(2 * kPi * p.y);
    const double sx = std::sin(kPi * p.x), cx = std::cos(kPi * p.x);
    const double sy = std::sin(kPi * p.y), cy = std::cos(kPi * p.y);
    const double mix = 2 * kPi * s2x * s2y;
    Eigen::Matrix2d J;
    J(0, 0) = -mix + cc * kPi * cx * sy;
    J(0, 1) = 2 * kPi * (-1 + c2x) * c2y + cc * kPi * sx * cy;
    J(1, 0) = 2 * kPi * (1 - c2y) * c2x + cc * kPi * cx * sy;
    J(1, 1) = mix + cc * kPi * sx * cy;
    return J;
  };
  c.div_u = [cc](Point2 p) { return cc * kPi * std::sin(kPi * (p.x + p.y)); };
  c.f = [cc, mu](Point2 p) {
    const double s2x = std::sin(2 * kPi * p.x), c2x = std::cos(2 * kPi * p.x);
    const double s2y = std::sin(2 * kPi * p.y), c2y = std::cos(2 * kPi * p.y);
    const double sxy = std::sin(kPi * p.x) * std::sin(kPi * p.y);
    const double pi2 = kPi * kPi;
    const double shared = 2 * mu * pi2 * cc * sxy - pi2 * std::cos(kPi * (p.x + p.y));
    return Eigen::Vector2d(4 * mu * pi2 * s2y * (2 * c2x - 1) + shared,
                           -4 * mu * pi2 * s2x * (2 * c2y - 1) + shared);
  };
  c.boundary = BoundaryKind::dirichlet;
  validate_case(c);
  return c;
}

ManufacturedCase case_test2(double lambda) {
  if (!(lambda > 0.0))
    throw std::runtime_error("case_test2: lambda must be positive");
  ManufacturedCase c;
  c.name = "test2";
  c.mu = 0.5;
  c.lambda = lambda;
  c.lambda_for_f = lambda;
  const double il = 1.0 / lambda;
  c.u = [il](Point2 p) {
    return Eigen::Vector2d(std::sin(p.x) * std::sin(p.y) + il * p.x,
                           std::cos(p.x) * std::cos(p.y) + il * p.y);
  };
  c.grad_u = [il](Point2 p) {
    const double sx = std::sin(p.x), cx = std::cos(p.x);
    const double sy = std::sin(p.y), cy = std::cos(p.y);
    Eigen::Matrix2d J;
    J(0, 0) = cx * sy + il;
    J(0, 1) = sx * cy;
    J(1, 0) = -sx * cy;
    J(1, 1) = -cx * sy + il;
    return J;
  };
  c.div_u = [il](Point2) { return 2.0 * il; };
  c.f = [mu = 0.5](Point2 p) {
    return Eigen::Vector2d(2 * mu * std::sin(p.x) * std::sin(p.y),
                           2 * mu * std::cos(p.x) * std::cos(p.y));
  };
  c.boundary = BoundaryKind::mixed_bottom_neumann;
  validate_case(c);
  return c;
}

ManufacturedCase case_test3(double lambda) {
  if (!(lambda > 0.0))
    throw std::runtime_error("case_test3: lambda must be positive");
  ManufacturedCase c;
  c.name = "test3";
  c.mu = 1.0;
  c.lambda = lambda;
  c.lambda_for_f = 0.0;  // div u = 0: the lambda term vanishes identically
  // u = (-sin^3(pi x) T(y), T(x) sin^3(pi y)) with T(t) = sin(2 pi t) sin(pi t)
  // = 2 A(t), A(t) = sin^2(pi t) cos(pi t).
  const auto A = [](double t) {
    const double s = std::sin(kPi * t);
    return s * s * std::cos(kPi * t);
  };
  const auto S3 = [](double t) {
    const double s = std::sin(kPi * t);
    return s * s * s;
  };
  const auto T = [A](double t) { return 2.0 * A(t); };
  const auto Tp = [](double t) {
    return 2 * kPi * std::cos(2 * kPi * t) * std::sin(kPi * t) +
           kPi * std::sin(2 * kPi * t) * std::cos(kPi * t);
  };
  const auto S3pp = [](double t) {
    const double s = std::sin(kPi * t), co = std::cos(kPi * t);
    return 3 * kPi * kPi * s * (2 * co * co - s * s);
  };
  const auto Tpp = [](double t) {
    return -5 * kPi * kPi * std::sin(2 * kPi * t) * std::sin(kPi * t) +
           4 * kPi * kPi * std::cos(2 * kPi * t) * std::cos(kPi * t);
  };
  c.u = [S3, T](Point2 p) {
    return Eigen::Vector2d(-S3(p.x) * T(p.y), T(p.x) * S3(p.y));
  };
  c.grad_u = [A, S3, T, Tp](Point2 p) {
    // The diagonal uses one shared product so the trace is exactly zero.
    const double d = 6.0 * kPi * A(p.x) * A(p.y);
    Eigen::Matrix2d J;
    J(0, 0) = -d;
    J(0, 1) = -S3(p.x) * Tp(p.y);
    J(1, 0) = Tp(p.x) * S3(p.y);
    J(1, 1) = d;
    return J;
  };
  c.div_u = [](Point2) { return 0.0; };
  c.f = [S3, T, S3pp, Tpp, mu = 1.0](Point2 p) {
    return Eigen::Vector2d(mu * (S3pp(p.x) * T(p.y) + S3(p.x) * Tpp(p.y)),
                           -mu * (Tpp(p.x) * S3(p.y) + T(p.x) * S3pp(p.y)));
  };
  c.boundary = BoundaryKind::dirichlet;
  validate_case(c);
  return c;
}

ErrorReport compute_errors(const mesh::PolygonalMesh& split,
                           const Eigen::VectorXd& u_h,
                           const ManufacturedCase& c, int degree) {
  const int nv = static_cast<int>(split.vertices.size());
  if (u_h.size() < 2 * nv)
    throw std::runtime_error("compute_errors: DOF vector too short");
  ErrorReport rep;
  rep.dofs = 2 * nv;
  rep.cell_errH1_sq.reserve(split.cells.size());
  rep.cell_errL2_sq.reserve(split.cells.size());
  double sumH1 = 0.0, sumL2 = 0.0;
  for (std::size_t ci = 0; ci < split.cells.size(); ++ci) {
    const Polygon poly = split.cell_polygon(static_cast<int>(ci));
    const auto geom = vem_local::make_cell_geometry(poly);
    rep.h = std::max(rep.h, geom.diameter);
    const auto proj = vem_local::build_projectors(geom);
    const auto& cell = split.cells[ci];
    const int k = static_cast<int>(cell.size());
    Eigen::VectorXd chi(2 * k);
    for (int i = 0; i < k; ++i) {
      chi(i) = u_h(cell[i]);
      chi(k + i) = u_h(nv + cell[i]);
    }
    const Eigen::VectorXd s = proj.pi1_coeffs * chi;
    const auto& basis = proj.basis;
    Eigen::Matrix2d grad_pi1;
    grad_pi1 << s(1), s(2), s(4), s(5);
    grad_pi1 /= basis.h;

    const auto l2_integrand = [&](Point2 p) {
      const Eigen::Vector2d v(s(0) + s(1) * basis.m(1, p) + s(2) * basis.m(2, p),
                              s(3) + s(4) * basis.m(1, p) + s(5) * basis.m(2, p));
      return (c.u(p) - v).squaredNorm();
    };
    const auto h1_integrand = [&](Point2 p) {
      return (c.grad_u(p) - grad_pi1).squaredNorm();
    };
    const Point2 apex = quadrature::fan_apex(poly);
    const double l2 = quadrature::integrate_cell(l2_integrand, poly, degree, apex);
    const double h1 = quadrature::integrate_cell(h1_integrand, poly, degree, apex);
    rep.cell_errL2_sq.push_back(l2);
    rep.cell_errH1_sq.push_back(h1);
    sumL2 += l2;
    sumH1 += h1;
  }
  rep.errL2 = std::sqrt(std::max(0.0, sumL2));
  rep.errH1 = std::sqrt(std::max(0.0, sumH1));
  return rep;
}

double fit_rate(const std::vector<std::pair<double, double>>& h_err) {
  if (h_err.size() < 2)
    throw std::runtime_error("fit_rate: need at least 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, e] : h_err) {
    if (!(h > 0.0) || !(e > 0.0))
      throw std::runtime_error("fit_rate: nonpositive input");
    const double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(h_err.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::runtime_error("fit_rate: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

double div_l2_norm(const mesh::PolygonalMesh& split, const Eigen::VectorXd& u_h) {
  const int nv = static_cast<int>(split.vertices.size());
  double acc = 0.0;
  for (std::size_t ci = 0; ci < split.cells.size(); ++ci) {
    const auto geom = vem_local::make_cell_geometry(split.cell_polygon(static_cast<int>(ci)));
    const auto proj = vem_local::build_projectors(geom);
    const auto& cell = split.cells[ci];
    const int k = static_cast<int>(cell.size());
    Eigen::VectorXd chi(2 * k);
    for (int i = 0; i < k; ++i) {
      chi(i) = u_h(cell[i]);
      chi(k + i) = u_h(nv + cell[i]);
    }
    const double d = proj.pi0_div.dot(chi);
    acc += geom.area * d * d;
  }
  return std::sqrt(acc);
}

assembly_solve::BoundarySpec boundary_spec(const ManufacturedCase& c) {
  assembly_solve::BoundarySpec spec;
  const auto traction = [&c](Point2 p, Eigen::Vector2d n) {
    return Eigen::Vector2d(c.stress(p) * n);
  };
  switch (c.boundary) {
    case BoundaryKind::dirichlet:
      spec.dirichlet_markers = {1, 2, 3, 4};
      spec.g1 = c.u;
      break;
    case BoundaryKind::mixed_bottom_neumann:
      spec.dirichlet_markers = {2, 3, 4};
      spec.g1 = c.u;
      spec.neumann_markers = {1};
      spec.g2 = traction;
      break;
    case BoundaryKind::pure_traction:
      spec.pure_traction = true;
      spec.neumann_markers = {1, 2, 3, 4};
      spec.g2 = traction;
      break;
  }
  return spec;
}

RunResult run_single(const ManufacturedCase& c,
                     const mesh::PolygonalMesh& original, double alpha,
                     bool no_split, int quad_degree) {
  mesh::PolygonalMesh split;
  if (no_split) {
    split = original;
  } else {
    split = mesh::split_edges(original, alpha).mesh;
  }
  auto spec = boundary_spec(c);
  auto sys = assembly_solve::assemble(split, c.mu, c.lambda, c.f, spec);
  RunResult out;
  if (spec.pure_traction) {
    assembly_solve::build_traction_system(sys, split);
    Eigen::VectorXd x = assembly_solve::solve(sys, &out.solve);
    out.beta = x.tail(3);
    out.u_h = x.head(x.size() - 3);
  } else {
    assembly_solve::apply_dirichlet(sys, split, spec);
    out.u_h = assembly_solve::solve(sys, &out.solve);
  }
  out.errors = compute_errors(split, out.u_h, c, quad_degree);
  out.div_norm = div_l2_norm(split, out.u_h);
  return out;
}

ManufacturedCase make_case(const std::string& case_name, double lambda, double mu) {
  if (case_name == "patch") return case_patch(mu, lambda);
  if (case_name == "test1") return case_test1(lambda, mu);
  if (case_name == "test2") return case_test2(lambda);
  if (case_name == "test3") return case_test3(lambda);
  throw std::runtime_error("unknown case '" + case_name + "'");
}

mesh::PolygonalMesh make_level_mesh(const StudyConfig& cfg, int level) {
  if (cfg.family == "tri")
    return mesh::generate_triangle_mesh(4 << level, cfg.jitter, cfg.seed);
  if (cfg.family == "dquad") return mesh::generate_distorted_quad_mesh(4 << level);
  if (cfg.family == "voronoi") {
    const int n_seeds =
        static_cast<int>(std::lround(16.0 * std::pow(2.0, 1.75 * level)));
    return mesh::generate_voronoi_mesh(n_seeds, cfg.lloyd,
                                       cfg.seed + static_cast<std::uint64_t>(level));
  }
  throw std::runtime_error("unknown mesh family '" + cfg.family + "'");
}

std::vector<ConvergenceTable> run_study(const StudyConfig& cfg) {
  if (cfg.levels < 1) throw std::runtime_error("run_study: levels must be >= 1");
  std::vector<mesh::PolygonalMesh> meshes;
  meshes.reserve(cfg.levels);
  for (int l = 0; l < cfg.levels; ++l) meshes.push_back(make_level_mesh(cfg, l));

  std::vector<ConvergenceTable> tables;
  tables.reserve(cfg.lambdas.size());
  for (double lambda : cfg.lambdas) {
    const ManufacturedCase c = make_case(cfg.case_name, lambda, cfg.mu);
    ConvergenceTable t;
    t.lambda = lambda;
    std::vector<std::pair<double, double>> h1pts, l2pts;
    for (const auto& m : meshes) {
      const RunResult r = run_single(c, m, cfg.alpha, cfg.no_split);
      t.rows.push_back({r.errors.h, r.errors.dofs, r.errors.errH1, r.errors.errL2});
      h1pts.emplace_back(r.errors.h, r.errors.errH1);
      l2pts.emplace_back(r.errors.h, r.errors.errL2);
    }
    t.rateH1 = fit_rate(h1pts);
    t.rateL2 = fit_rate(l2pts);
    tables.push_back(std::move(t));
  }
  return tables;
}

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string table_csv(const ConvergenceTable& t) {
  std::ostringstream os;
  os << "h,dofs,errH1,errL2\n";
  for (const auto& r : t.rows)
    os << fmt(r.h, "%.12g") << ',' << r.dofs << ',' << fmt(r.errH1, "%.12g")
       << ',' << fmt(r.errL2, "%.12g") << '\n';
  return os.str();
}

std::string tables_markdown(const std::vector<ConvergenceTable>& tables,
                            const StudyConfig& cfg) {
  std::ostringstream os;
  os << "# Convergence study: case " << cfg.case_name << ", family "
     << cfg.family << ", alpha " << fmt(cfg.alpha) << "\n";
  for (const auto& t : tables) {
    os << "\n## lambda = " << fmt(t.lambda) << "\n\n";
    os << "| h | dofs | ErrH1 | rate | ErrL2 | rate |\n";
    os << "|---|------|-------|------|-------|------|\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto& r = t.rows[i];
      std::string rh1 = "-", rl2 = "-";
      if (i > 0) {
        const auto& p = t.rows[i - 1];
        const double dh = std::log(p.h / r.h);
        rh1 = fmt(std::log(p.errH1 / r.errH1) / dh, "%.2f");
        rl2 = fmt(std::log(p.errL2 / r.errL2) / dh, "%.2f");
      }
      os << "| " << fmt(r.h, "%.4g") << " | " << r.dofs << " | "
         << fmt(r.errH1, "%.4g") << " | " << rh1 << " | " << fmt(r.errL2, "%.4g")
         << " | " << rl2 << " |\n";
    }
    os << "\nfitted rates: H1 " << fmt(t.rateH1, "%.3f") << ", L2 "
       << fmt(t.rateL2, "%.3f") << "\n";
  }
  return os.str();
}

namespace {

struct PlotScale {
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return 70 + (x - xmin) / (xmax - xmin) * 460; }
  double py(double y) const { return 20 + (ymax - y) / (ymax - ymin) * 380; }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts,
                     const PlotScale& sc, const std::string& color) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) os << fmt(sc.px(x), "%.2f") << ',' << fmt(sc.py(y), "%.2f") << ' ';
  os << "\"/>\n";
  for (const auto& [x, y] : pts)
    os << "<circle cx=\"" << fmt(sc.px(x), "%.2f") << "\" cy=\""
       << fmt(sc.py(y), "%.2f") << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  return os.str();
}

}  // namespace

std::string table_svg(const ConvergenceTable& t, const std::string& title) {
  std::vector<std::pair<double, double>> h1, l2;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : t.rows) {
    const double x = std::log10(r.h);
    const double y1 = std::log10(r.errH1);
    const double y2 = std::log10(r.errL2);
    h1.emplace_back(x, y1);
    l2.emplace_back(x, y2);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min({ymin, y1, y2});
    ymax = std::max({ymax, y1, y2});
  }
  const double xpad = 0.08 * (xmax - xmin + 1e-12);
  const double ypad = 0.08 * (ymax - ymin + 1e-12);
  PlotScale sc{xmin - xpad, xmax + xpad, ymin - ypad - 0.4, ymax + ypad};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"460\" "
        "viewBox=\"0 0 560 460\">\n";
  os << "<rect width=\"560\" height=\"460\" fill=\"white\"/>\n";
  os << "<text x=\"280\" y=\"14\" text-anchor=\"middle\" font-size=\"13\">" << title
     << "</text>\n";
  // axes
  os << "<line x1=\"70\" y1=\"400\" x2=\"530\" y2=\"400\" stroke=\"black\"/>\n";
  os << "<line x1=\"70\" y1=\"20\" x2=\"70\" y2=\"400\" stroke=\"black\"/>\n";
  os << "<text x=\"300\" y=\"445\" text-anchor=\"middle\" font-size=\"12\">log10 h"
        "</text>\n";
  os << "<text x=\"18\" y=\"210\" font-size=\"12\" transform=\"rotate(-90 18 210)\" "
        "text-anchor=\"middle\">log10 err</text>\n";
  // decade ticks
  for (int d = static_cast<int>(std::floor(sc.ymin)); d <= std::ceil(sc.ymax); ++d) {
    if (d < sc.ymin || d > sc.ymax) continue;
    os << "<line x1=\"70\" y1=\"" << fmt(sc.py(d), "%.1f") << "\" x2=\"530\" y2=\""
       << fmt(sc.py(d), "%.1f") << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"62\" y=\"" << fmt(sc.py(d) + 4, "%.1f")
       << "\" text-anchor=\"end\" font-size=\"10\">" << d << "</text>\n";
  }
  os << polyline(h1, sc, "#c02020");
  os << polyline(l2, sc, "#2040c0");

  // reference slopes anchored near the finest level
  const auto ref_line = [&](double slope, double x0, double y0, const char* color) {
    const double x1 = x0 + 0.35 * (sc.xmax - sc.xmin);
    std::ostringstream r;
    r << "<line stroke-dasharray=\"5 4\" stroke=\"" << color << "\" x1=\""
      << fmt(sc.px(x0), "%.1f") << "\" y1=\"" << fmt(sc.py(y0), "%.1f")
      << "\" x2=\"" << fmt(sc.px(x1), "%.1f") << "\" y2=\""
      << fmt(sc.py(y0 + slope * (x1 - x0)), "%.1f") << "\"/>\n";
    r << "<text font-size=\"10\" fill=\"" << color << "\" x=\""
      << fmt(sc.px(x1) + 3, "%.1f") << "\" y=\""
      << fmt(sc.py(y0 + slope * (x1 - x0)), "%.1f") << "\">slope "
      << fmt(slope, "%.0f") << "</text>\n";
    return r.str();
  };
  os << ref_line(1.0, h1.back().first, h1.back().second - 0.25, "#c02020");
  os << ref_line(2.0, l2.back().first, l2.back().second - 0.25, "#2040c0");

  // legend
  os << "<rect x=\"90\" y=\"30\" width=\"120\" height=\"40\" fill=\"white\" "
        "stroke=\"#999\"/>\n";
  os << "<line x1=\"98\" y1=\"43\" x2=\"122\" y2=\"43\" stroke=\"#c02020\" "
        "stroke-width=\"1.5\"/>\n";
  os << "<text x=\"128\" y=\"47\" font-size=\"11\">ErrH1</text>\n";
  os << "<line x1=\"98\" y1=\"59\" x2=\"122\" y2=\"59\" stroke=\"#2040c0\" "
        "stroke-width=\"1.5\"/>\n";
  os << "<text x=\"128\" y=\"63\" font-size=\"11\">ErrL2</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace polyvem::verification
