#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "polyvem/assembly_solve.hpp"
#include "polyvem/mesh.hpp"
#include "polyvem/quadrature.hpp"
#include "polyvem/vem_local.hpp"
#include "polyvem/verification.hpp"

namespace {

namespace pv = polyvem;
namespace vf = polyvem::verification;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kExitSolver = 4;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw ConfigError("failed writing " + path.string());
}

struct MeshOptions {
  std::string family = "voronoi";
  int n = 16;
  double jitter = 0.2;
  int lloyd = 5;
  std::uint64_t seed = 20240915;
};

void add_mesh_options(CLI::App* cmd, MeshOptions& mo) {
  cmd->add_option("--family", mo.family, "mesh family: tri|dquad|voronoi")
      ->check(CLI::IsMember({"tri", "dquad", "voronoi"}));
  cmd->add_option("--n", mo.n, "subdivisions (tri/dquad) or seed count (voronoi)");
  cmd->add_option("--jitter", mo.jitter, "tri interior jitter in [0,0.3)");
  cmd->add_option("--lloyd", mo.lloyd, "Lloyd iterations (voronoi)");
  cmd->add_option("--seed", mo.seed, "RNG seed (voronoi/tri)");
}

pv::mesh::PolygonalMesh build_mesh(const MeshOptions& mo) {
  if (mo.family == "tri")
    return pv::mesh::generate_triangle_mesh(mo.n, mo.jitter, mo.seed);
  if (mo.family == "dquad") return pv::mesh::generate_distorted_quad_mesh(mo.n);
  return pv::mesh::generate_voronoi_mesh(mo.n, mo.lloyd, mo.seed);
}

void print_quality(const pv::mesh::PolygonalMesh& m) {
  const auto q = pv::mesh::check_quality(m);
  std::cout << "cells " << m.cells.size() << "\n"
            << "vertices " << m.vertices.size() << "\n"
            << "h " << q.h << "\n"
            << "gamma1 " << q.gamma1 << "\n"
            << "gamma2 " << q.gamma2 << "\n";
}

// Per-vertex solution table: DOF values plus the elliptic projection averaged
// over incident cells.
std::string solution_csv(const pv::mesh::PolygonalMesh& split,
                         const Eigen::VectorXd& u_h) {
  const int nv = static_cast<int>(split.vertices.size());
  std::vector<Eigen::Vector2d> pi1(nv, Eigen::Vector2d::Zero());
  std::vector<int> hits(nv, 0);
  for (std::size_t ci = 0; ci < split.cells.size(); ++ci) {
    const auto geom =
        pv::vem_local::make_cell_geometry(split.cell_polygon(static_cast<int>(ci)));
    const auto proj = pv::vem_local::build_projectors(geom);
    const auto& cell = split.cells[ci];
    const int k = static_cast<int>(cell.size());
    Eigen::VectorXd chi(2 * k);
    for (int i = 0; i < k; ++i) {
      chi(i) = u_h(cell[i]);
      chi(k + i) = u_h(nv + cell[i]);
    }
    const Eigen::VectorXd s = proj.pi1_coeffs * chi;
    for (int i = 0; i < k; ++i) {
      const pv::Point2 p = split.vertices[cell[i]];
      const Eigen::Vector2d v(
          s(0) + s(1) * proj.basis.m(1, p) + s(2) * proj.basis.m(2, p),
          s(3) + s(4) * proj.basis.m(1, p) + s(5) * proj.basis.m(2, p));
      pi1[cell[i]] += v;
      ++hits[cell[i]];
    }
  }
  std::ostringstream os;
  os << "x,y,uh1,uh2,pi1_1,pi1_2\n";
  char buf[256];
  for (int v = 0; v < nv; ++v) {
    const Eigen::Vector2d p = pi1[v] / std::max(1, hits[v]);
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  split.vertices[v].x, split.vertices[v].y, u_h(v), u_h(nv + v),
                  p(0), p(1));
    os << buf;
  }
  return os.str();
}

struct SolveOptions {
  MeshOptions mesh;
  std::string case_name = "test1";
  double alpha = 0.5;
  double mu = 1.0;
  double lambda = 1.0;
  std::string out_dir = ".";
  bool no_split = false;
};

void check_common(double alpha, int levels) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("alpha must be in (0,1)");
  if (levels < 1) throw ConfigError("levels must be >= 1");
}

int run_solve(const SolveOptions& so) {
  check_common(so.alpha, 1);
  const auto c = vf::make_case(so.case_name, so.lambda, so.mu);
  const auto original = build_mesh(so.mesh);
  const auto r = vf::run_single(c, original, so.alpha, so.no_split);
  std::cout << "h " << r.errors.h << "\n"
            << "dofs " << r.errors.dofs << "\n"
            << "errH1 " << r.errors.errH1 << "\n"
            << "errL2 " << r.errors.errL2 << "\n"
            << "div_norm " << r.div_norm << "\n"
            << "solve: " << r.solve.to_string() << "\n";
  pv::mesh::PolygonalMesh split =
      so.no_split ? original : pv::mesh::split_edges(original, so.alpha).mesh;
  std::filesystem::create_directories(so.out_dir);
  write_file(std::filesystem::path(so.out_dir) /
                 ("solution_" + so.case_name + "_" + so.mesh.family + ".csv"),
             solution_csv(split, r.u_h));
  return 0;
}

struct StudyOptions {
  vf::StudyConfig cfg;
  std::string out_dir = ".";
  int jobs = 1;
  bool svg = false;
  bool deterministic = false;
};

int run_study_cmd(const StudyOptions& so) {
  check_common(so.cfg.alpha, so.cfg.levels);
  for (double l : so.cfg.lambdas)
    if (!(l > 0.0)) throw ConfigError("lambda values must be positive");

  const int jobs = so.deterministic ? 1 : std::max(1, so.jobs);
  std::vector<vf::ConvergenceTable> tables(so.cfg.lambdas.size());
  std::vector<std::string> errors(so.cfg.lambdas.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= so.cfg.lambdas.size()) return;
      vf::StudyConfig one = so.cfg;
      one.lambdas = {so.cfg.lambdas[i]};
      try {
        tables[i] = vf::run_study(one).front();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw pv::assembly_solve::SolveError("lambda " +
                                           std::to_string(so.cfg.lambdas[i]) +
                                           ": " + errors[i]);

  std::filesystem::create_directories(so.out_dir);
  const std::string stem = "study_" + so.cfg.case_name + "_" + so.cfg.family;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const std::string suffix = "_lambda" + std::to_string(i);
    write_file(std::filesystem::path(so.out_dir) / (stem + suffix + ".csv"),
               vf::table_csv(tables[i]));
    if (so.svg) {
      char title[128];
      std::snprintf(title, sizeof title, "%s %s, lambda %.3g",
                    so.cfg.case_name.c_str(), so.cfg.family.c_str(),
                    tables[i].lambda);
      write_file(std::filesystem::path(so.out_dir) / (stem + suffix + ".svg"),
                 vf::table_svg(tables[i], title));
    }
    std::cout << "lambda " << tables[i].lambda << ": rate H1 "
              << tables[i].rateH1 << ", rate L2 " << tables[i].rateL2 << "\n";
  }
  write_file(std::filesystem::path(so.out_dir) / (stem + ".md"),
             vf::tables_markdown(tables, so.cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyvem: locking-free virtual elements for planar elasticity"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config bundle; put options under a [study] (or "
                 "other subcommand) section");

  // gen-mesh
  auto* gen = app.add_subcommand("gen-mesh", "generate a mesh file");
  MeshOptions gen_mo;
  std::string gen_out = "mesh.txt";
  add_mesh_options(gen, gen_mo);
  gen->add_option("--out", gen_out, "output mesh path");

  // check-mesh
  auto* chk = app.add_subcommand("check-mesh", "validate a mesh file and report quality");
  std::string chk_path;
  chk->add_option("--mesh", chk_path, "mesh file")->required();

  // solve
  auto* slv = app.add_subcommand("solve", "solve one manufactured case");
  SolveOptions so;
  add_mesh_options(slv, so.mesh);
  slv->add_option("--case", so.case_name, "patch|test1|test2|test3")
      ->check(CLI::IsMember({"patch", "test1", "test2", "test3"}));
  slv->add_option("--alpha", so.alpha, "edge-split fraction in (0,1)");
  slv->add_option("--mu", so.mu, "shear modulus (patch/test1)");
  slv->add_option("--lambda", so.lambda, "first Lame constant");
  slv->add_option("--out-dir", so.out_dir, "output directory");
  slv->add_flag("--no-split", so.no_split,
                "run on the unsplit mesh (locking baseline, observational)");

  // study
  auto* stu = app.add_subcommand("study", "convergence study over mesh levels");
  StudyOptions sto;
  stu->add_option("--case", sto.cfg.case_name, "patch|test1|test2|test3")
      ->check(CLI::IsMember({"patch", "test1", "test2", "test3"}));
  stu->add_option("--family", sto.cfg.family, "tri|dquad|voronoi")
      ->check(CLI::IsMember({"tri", "dquad", "voronoi"}));
  stu->add_option("--levels", sto.cfg.levels, "refinement levels");
  stu->add_option("--alpha", sto.cfg.alpha, "edge-split fraction in (0,1)");
  stu->add_option("--mu", sto.cfg.mu, "shear modulus (patch/test1)");
  stu->add_option("--lambdas", sto.cfg.lambdas, "lambda sweep values")
      ->delimiter(',');
  stu->add_option("--seed", sto.cfg.seed, "RNG seed");
  stu->add_option("--lloyd", sto.cfg.lloyd, "Lloyd iterations (voronoi)");
  stu->add_option("--jitter", sto.cfg.jitter, "tri interior jitter");
  stu->add_option("--out-dir", sto.out_dir, "output directory");
  stu->add_option("--jobs", sto.jobs, "parallel lambda runs");
  stu->add_flag("--svg", sto.svg, "write log-log SVG plots");
  stu->add_flag("--no-split", sto.cfg.no_split,
                "run on unsplit meshes (locking baseline, observational)");
  stu->add_flag("--deterministic", sto.deterministic,
                "serialize runs for byte-identical outputs");

  // Let --config appear after the subcommand name and let config-file
  // sections select a subcommand on their own.
  for (auto* sub : {gen, chk, slv, stu}) {
    sub->fallthrough();
    sub->configurable();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  // Environment override for reproducible pipelines.
  if (const char* env = std::getenv("POLYVEM_SEED")) {
    try {
      const std::uint64_t s = std::stoull(env);
      gen_mo.seed = s;
      so.mesh.seed = s;
      sto.cfg.seed = s;
    } catch (const std::exception&) {
      std::cerr << "invalid POLYVEM_SEED value '" << env << "'\n";
      return kExitConfig;
    }
  }

  try {
    if (gen->parsed()) {
      const auto m = build_mesh(gen_mo);
      pv::mesh::write_mesh(m, gen_out);
      print_quality(m);
      return 0;
    }
    if (chk->parsed()) {
      const auto m = pv::mesh::read_mesh(chk_path);
      print_quality(m);
      return 0;
    }
    if (slv->parsed()) return run_solve(so);
    if (stu->parsed()) return run_study_cmd(sto);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pv::assembly_solve::SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneration;
  }
  return 0;
}
