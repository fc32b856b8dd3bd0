#include "polyvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace polyvem::mesh {

Polygon PolygonalMesh::cell_polygon(int c) const {
  Polygon p;
  p.reserve(cells[c].size());
  for (int v : cells[c]) p.push_back(vertices[v]);
  return p;
}

double PolygonalMesh::domain_diameter() const {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const Point2& v : vertices) {
    if (first) {
      xmin = xmax = v.x;
      ymin = ymax = v.y;
      first = false;
    } else {
      xmin = std::min(xmin, v.x);
      xmax = std::max(xmax, v.x);
      ymin = std::min(ymin, v.y);
      ymax = std::max(ymax, v.y);
    }
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

namespace {

std::uint64_t undirected_key(int a, int b) {
  const std::uint64_t lo = static_cast<std::uint64_t>(std::min(a, b));
  const std::uint64_t hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32) | lo;
}

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

// Spatial hash for near-duplicate vertex lookup.
class PointGrid {
 public:
  explicit PointGrid(double spacing) : spacing_(spacing) {}

  int find_within(const std::vector<Point2>& pts, Point2 q, double tol) const {
    const long ix = cell_of(q.x);
    const long iy = cell_of(q.y);
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = buckets_.find(key(ix + dx, iy + dy));
        if (it == buckets_.end()) continue;
        for (int i : it->second)
          if (dist(pts[i], q) <= tol) return i;
      }
    return -1;
  }

  void insert(Point2 q, int index) {
    buckets_[key(cell_of(q.x), cell_of(q.y))].push_back(index);
  }

 private:
  long cell_of(double x) const { return static_cast<long>(std::floor(x / spacing_)); }
  static std::uint64_t key(long ix, long iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy));
  }
  double spacing_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

// Boundary edges = undirected edges incident to exactly one cell, oriented as
// that cell traverses them.
std::vector<std::pair<int, int>> free_edges(const PolygonalMesh& m) {
  std::unordered_map<std::uint64_t, int> count;
  for (const auto& cell : m.cells) {
    const std::size_t k = cell.size();
    for (std::size_t i = 0; i < k; ++i)
      ++count[undirected_key(cell[i], cell[(i + 1) % k])];
  }
  std::vector<std::pair<int, int>> out;
  for (const auto& cell : m.cells) {
    const std::size_t k = cell.size();
    for (std::size_t i = 0; i < k; ++i) {
      const int a = cell[i];
      const int b = cell[(i + 1) % k];
      if (count[undirected_key(a, b)] == 1) out.emplace_back(a, b);
    }
  }
  return out;
}

// Side markers on the unit square: 1 bottom, 2 right, 3 top, 4 left.
int unit_square_marker(Point2 mid) {
  const double tol = 1e-9;
  if (std::abs(mid.y) < tol) return 1;
  if (std::abs(mid.x - 1.0) < tol) return 2;
  if (std::abs(mid.y - 1.0) < tol) return 3;
  if (std::abs(mid.x) < tol) return 4;
  throw MeshError("boundary edge not on the unit-square boundary");
}

void assign_unit_square_boundary(PolygonalMesh& m) {
  m.boundary_edges.clear();
  for (auto [a, b] : free_edges(m)) {
    const Point2 mid = 0.5 * (m.vertices[a] + m.vertices[b]);
    m.boundary_edges.push_back({a, b, unit_square_marker(mid)});
  }
}

}  // namespace

void validate(const PolygonalMesh& m) {
  const int nv = static_cast<int>(m.vertices.size());
  if (nv < 3) throw MeshError("mesh has fewer than 3 vertices");
  if (m.cells.empty()) throw MeshError("mesh has no cells");
  for (int v = 0; v < nv; ++v)
    if (!std::isfinite(m.vertices[v].x) || !std::isfinite(m.vertices[v].y))
      throw MeshError("vertex " + std::to_string(v) + ": non-finite coordinate");

  const double diam = m.domain_diameter();
  if (diam <= 0.0) throw MeshError("mesh has zero extent");

  // Near-duplicate vertices.
  const double dup_tol = 1e-12 * diam;
  PointGrid grid(std::max(dup_tol * 4.0, diam / (4.0 * std::sqrt(double(nv)))));
  for (int v = 0; v < nv; ++v) {
    const int hit = grid.find_within(m.vertices, m.vertices[v], dup_tol);
    if (hit >= 0)
      throw MeshError("vertices " + std::to_string(hit) + " and " +
                      std::to_string(v) + " coincide within tolerance");
    grid.insert(m.vertices[v], v);
  }

  // Cell cycles.
  std::unordered_map<std::uint64_t, int> edge_count;
  std::unordered_set<std::uint64_t> directed;
  std::vector<char> used(nv, 0);
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    const auto& cell = m.cells[c];
    const std::string tag = "cell " + std::to_string(c);
    if (cell.size() < 3) throw MeshError(tag + ": fewer than 3 vertices");
    std::unordered_set<int> seen;
    for (int v : cell) {
      if (v < 0 || v >= nv) throw MeshError(tag + ": vertex index out of range");
      if (!seen.insert(v).second)
        throw MeshError(tag + ": repeated vertex " + std::to_string(v));
      used[v] = 1;
    }
    const Polygon poly = m.cell_polygon(static_cast<int>(c));
    if (!polygon_is_simple(poly)) throw MeshError(tag + ": not simple");
    if (polygon_signed_area(poly) <= 0.0)
      throw MeshError(tag + ": not counter-clockwise");
    const std::size_t k = cell.size();
    for (std::size_t i = 0; i < k; ++i) {
      const int a = cell[i];
      const int b = cell[(i + 1) % k];
      if (!directed.insert(directed_key(a, b)).second)
        throw MeshError(tag + ": directed edge " + std::to_string(a) + "-" +
                        std::to_string(b) + " appears twice (orientation clash)");
      const int n = ++edge_count[undirected_key(a, b)];
      if (n > 2)
        throw MeshError(tag + ": edge " + std::to_string(a) + "-" +
                        std::to_string(b) + " shared by more than 2 cells");
    }
  }
  for (int v = 0; v < nv; ++v)
    if (!used[v]) throw MeshError("vertex " + std::to_string(v) + " unused");

  // Boundary edge list must equal the set of single-incidence edges.
  std::unordered_set<std::uint64_t> listed;
  for (const BoundaryEdge& e : m.boundary_edges) {
    if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv)
      throw MeshError("boundary edge with vertex index out of range");
    const std::uint64_t k = undirected_key(e.a, e.b);
    auto it = edge_count.find(k);
    if (it == edge_count.end() || it->second != 1)
      throw MeshError("boundary edge " + std::to_string(e.a) + "-" +
                      std::to_string(e.b) + " is not a free mesh edge");
    if (!listed.insert(k).second)
      throw MeshError("boundary edge " + std::to_string(e.a) + "-" +
                      std::to_string(e.b) + " listed twice");
  }
  for (const auto& [k, n] : edge_count)
    if (n == 1 && !listed.count(k))
      throw MeshError("free mesh edge missing from the boundary list");
}

PolygonalMesh generate_triangle_mesh(int n, double jitter, std::uint64_t seed) {
  if (n < 1) throw MeshError("generate_triangle_mesh: n must be >= 1");
  if (jitter < 0.0 || jitter >= 0.3)
    throw MeshError("generate_triangle_mesh: jitter must be in [0, 0.3)");

  const auto grid_index = [n](int i, int j) { return j * (n + 1) + i; };
  const double min_area = 1e-9 / (double(n) * double(n));

  for (int attempt = 0; attempt < 50; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    PolygonalMesh m;
    m.vertices.resize(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        Point2 p{double(i) / n, double(j) / n};
        if (i > 0 && i < n && j > 0 && j < n) {
          p.x += jitter / n * (2.0 * rng.uniform() - 1.0);
          p.y += jitter / n * (2.0 * rng.uniform() - 1.0);
        }
        m.vertices[grid_index(i, j)] = p;
      }

    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      for (int i = 0; i < n && ok; ++i) {
        const int a = grid_index(i, j);
        const int b = grid_index(i + 1, j);
        const int c = grid_index(i + 1, j + 1);
        const int d = grid_index(i, j + 1);
        const auto area = [&](int u, int v, int w) {
          return 0.5 * cross(m.vertices[v] - m.vertices[u],
                             m.vertices[w] - m.vertices[u]);
        };
        const bool ac_valid = area(a, b, c) > min_area && area(a, c, d) > min_area;
        const bool bd_valid = area(a, b, d) > min_area && area(b, c, d) > min_area;
        const double ac_len = dist(m.vertices[a], m.vertices[c]);
        const double bd_len = dist(m.vertices[b], m.vertices[d]);
        const bool prefer_ac = ac_len <= bd_len;
        if (prefer_ac && ac_valid) {
          m.cells.push_back({a, b, c});
          m.cells.push_back({a, c, d});
        } else if (bd_valid) {
          m.cells.push_back({a, b, d});
          m.cells.push_back({b, c, d});
        } else if (ac_valid) {
          m.cells.push_back({a, b, c});
          m.cells.push_back({a, c, d});
        } else {
          ok = false;  // degenerate after jitter; resample
        }
      }
    if (!ok) continue;
    assign_unit_square_boundary(m);
    validate(m);
    return m;
  }
  throw MeshError("generate_triangle_mesh: degenerate triangles persist after resampling");
}

PolygonalMesh generate_distorted_quad_mesh(int n) {
  if (n < 2) throw MeshError("generate_distorted_quad_mesh: n must be >= 2");
  const double pi = 3.14159265358979323846;
  const auto grid_index = [n](int i, int j) { return j * (n + 1) + i; };
  PolygonalMesh m;
  m.vertices.resize(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double xi = double(i) / n;
      const double eta = double(j) / n;
      const double g = 0.1 * std::sin(2.0 * pi * xi) * std::sin(2.0 * pi * eta);
      m.vertices[grid_index(i, j)] = {xi + g, eta + g};
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      m.cells.push_back({grid_index(i, j), grid_index(i + 1, j),
                         grid_index(i + 1, j + 1), grid_index(i, j + 1)});
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    const Polygon poly = m.cell_polygon(static_cast<int>(c));
    if (!polygon_is_simple(poly) || polygon_signed_area(poly) <= 0.0)
      throw MeshError("generate_distorted_quad_mesh: cell " + std::to_string(c) +
                      " degenerate under the distortion map");
  }
  assign_unit_square_boundary(m);
  validate(m);
  return m;
}

namespace {

// Clip a convex CCW polygon by the half-plane g(x) <= 0 (Sutherland-Hodgman).
Polygon clip_half_plane(const Polygon& poly, Point2 dir, double offset) {
  Polygon out;
  const std::size_t k = poly.size();
  out.reserve(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    const Point2 P = poly[i];
    const Point2 Q = poly[(i + 1) % k];
    const double gp = dot(dir, P) - offset;
    const double gq = dot(dir, Q) - offset;
    if (gp <= 0.0) out.push_back(P);
    if ((gp < 0.0 && gq > 0.0) || (gp > 0.0 && gq <= 0.0)) {
      const double t = gp / (gp - gq);
      out.push_back(P + t * (Q - P));
    }
  }
  return out;
}

Polygon voronoi_cell(const std::vector<Point2>& seeds, int i,
                     const std::vector<int>& order_buffer) {
  Polygon poly{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Point2 s = seeds[i];
  double r2 = 0.0;
  for (const Point2& v : poly) r2 = std::max(r2, dot(v - s, v - s));
  for (int j : order_buffer) {
    const Point2 d = seeds[j] - s;
    const double d2 = dot(d, d);
    if (d2 > 4.0 * r2) break;  // bisector cannot reach the current cell
    const Point2 mid = 0.5 * (s + seeds[j]);
    poly = clip_half_plane(poly, d, dot(d, mid));
    if (poly.size() < 3)
      throw MeshError("voronoi: empty cell after clipping");
    r2 = 0.0;
    for (const Point2& v : poly) r2 = std::max(r2, dot(v - s, v - s));
  }
  return poly;
}

std::vector<Polygon> voronoi_cells(const std::vector<Point2>& seeds) {
  const int n = static_cast<int>(seeds.size());
  std::vector<Polygon> cells(n);
  std::vector<std::pair<double, int>> order;
  std::vector<int> idx;
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      order.emplace_back(dot(seeds[j] - seeds[i], seeds[j] - seeds[i]), j);
    }
    std::sort(order.begin(), order.end());
    idx.clear();
    for (const auto& [d2, j] : order) idx.push_back(j);
    cells[i] = voronoi_cell(seeds, i, idx);
  }
  return cells;
}

// Remove vertices that are (within tol) interior points of a straight segment
// in every incident cell; such vertices carry no geometric information.
void remove_collinear_vertices(std::vector<Point2>& verts,
                               std::vector<std::vector<int>>& cells,
                               double tol) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<std::pair<int, int>>> incid(verts.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (std::size_t i = 0; i < cells[c].size(); ++i)
        incid[cells[c][i]].emplace_back(static_cast<int>(c), static_cast<int>(i));
    std::vector<char> remove(verts.size(), 0);
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (incid[v].empty()) continue;
      bool all_collinear = true;
      for (const auto& [c, i] : incid[v]) {
        if (cells[c].size() <= 3) {
          all_collinear = false;
          break;
        }
        const std::size_t k = cells[c].size();
        const Point2 prev = verts[cells[c][(i + k - 1) % k]];
        const Point2 next = verts[cells[c][(i + 1) % k]];
        const double len = dist(prev, next);
        const double off = len > 0 ? std::abs(cross(next - prev, verts[v] - prev)) / len
                                   : 1.0;
        if (off > tol || dot(verts[v] - prev, next - verts[v]) <= 0.0) {
          all_collinear = false;
          break;
        }
      }
      if (all_collinear && !incid[v].empty()) {
        remove[v] = 1;
        changed = true;
      }
    }
    if (!changed) break;
    for (auto& cell : cells)
      cell.erase(std::remove_if(cell.begin(), cell.end(),
                                [&](int v) { return remove[v] == 1; }),
                 cell.end());
  }
}

}  // namespace

PolygonalMesh generate_voronoi_mesh_from_seeds(std::vector<Point2> seeds,
                                               int n_lloyd) {
  if (seeds.size() < 4) throw MeshError("voronoi: need at least 4 seeds");
  if (n_lloyd < 0) throw MeshError("voronoi: n_lloyd must be >= 0");

  // Deterministically separate duplicate seeds.
  for (int pass = 0, changed = 1; changed && pass < 64; ++pass) {
    changed = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (dist(seeds[i], seeds[j]) < 1e-12) {
          seeds[i].x = std::clamp(seeds[i].x + (pass + 1) * 1e-9, 1e-9, 1.0 - 1e-9);
          seeds[i].y = std::clamp(seeds[i].y + (pass + 1) * 1.3e-9, 1e-9, 1.0 - 1e-9);
          changed = 1;
        }
  }

  for (int it = 0; it < n_lloyd; ++it) {
    const std::vector<Polygon> cells = voronoi_cells(seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i)
      seeds[i] = polygon_centroid(cells[i]);
  }
  const std::vector<Polygon> cells = voronoi_cells(seeds);

  // Weld coincident vertices across cells.
  const double weld_tol = 1e-12 * std::sqrt(2.0);
  PolygonalMesh m;
  PointGrid grid(1e-7);
  std::vector<std::vector<int>> cycles(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const Point2& p : cells[c]) {
      int v = grid.find_within(m.vertices, p, weld_tol);
      if (v < 0) {
        v = static_cast<int>(m.vertices.size());
        m.vertices.push_back(p);
        grid.insert(p, v);
      }
      cycles[c].push_back(v);
    }
    // Welding can map consecutive near-coincident corners to one vertex.
    std::vector<int>& cy = cycles[c];
    cy.erase(std::unique(cy.begin(), cy.end()), cy.end());
    while (cy.size() > 1 && cy.front() == cy.back()) cy.pop_back();
    if (cy.size() < 3) throw MeshError("voronoi: cell degenerated during weld");
  }
  m.cells = std::move(cycles);

  remove_collinear_vertices(m.vertices, m.cells, 1e-10);

  // Renumber after removals.
  std::vector<int> remap(m.vertices.size(), -1);
  std::vector<Point2> verts;
  for (auto& cell : m.cells)
    for (int& v : cell) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(verts.size());
        verts.push_back(m.vertices[v]);
      }
      v = remap[v];
    }
  m.vertices = std::move(verts);

  assign_unit_square_boundary(m);
  validate(m);
  return m;
}

PolygonalMesh generate_voronoi_mesh(int n_seeds, int n_lloyd,
                                    std::uint64_t rng_seed) {
  if (n_seeds < 4) throw MeshError("voronoi: need at least 4 seeds");
  Rng rng(rng_seed);
  std::vector<Point2> seeds(n_seeds);
  for (Point2& s : seeds) {
    s.x = 1e-6 + (1.0 - 2e-6) * rng.uniform();
    s.y = 1e-6 + (1.0 - 2e-6) * rng.uniform();
  }
  return generate_voronoi_mesh_from_seeds(std::move(seeds), n_lloyd);
}

SplitResult split_edges(const PolygonalMesh& m, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw MeshError("split_edges: alpha must be in (0,1)");

  std::map<std::pair<int, int>, int> edge_index;  // canonical (a<b) -> index
  std::vector<SplitMap::EdgePoint> edges;
  for (const auto& cell : m.cells) {
    const std::size_t k = cell.size();
    for (std::size_t i = 0; i < k; ++i) {
      const int a = std::min(cell[i], cell[(i + 1) % k]);
      const int b = std::max(cell[i], cell[(i + 1) % k]);
      if (edge_index.emplace(std::make_pair(a, b), static_cast<int>(edges.size()))
              .second)
        edges.push_back({a, b});
    }
  }

  const int nv = static_cast<int>(m.vertices.size());
  SplitResult out;
  out.map.alpha = alpha;
  out.map.n_original_vertices = nv;
  out.map.edge_points = edges;
  out.mesh.vertices = m.vertices;
  out.mesh.vertices.reserve(nv + edges.size());
  for (const auto& e : edges)
    out.mesh.vertices.push_back(m.vertices[e.a] +
                                alpha * (m.vertices[e.b] - m.vertices[e.a]));

  const auto midpoint_of = [&](int a, int b) {
    return nv + edge_index.at({std::min(a, b), std::max(a, b)});
  };

  out.mesh.cells.reserve(m.cells.size());
  for (const auto& cell : m.cells) {
    std::vector<int> cy;
    const std::size_t k = cell.size();
    cy.reserve(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      cy.push_back(cell[i]);
      cy.push_back(midpoint_of(cell[i], cell[(i + 1) % k]));
    }
    out.mesh.cells.push_back(std::move(cy));
  }

  out.mesh.boundary_edges.reserve(2 * m.boundary_edges.size());
  for (const BoundaryEdge& e : m.boundary_edges) {
    const int mid = midpoint_of(e.a, e.b);
    out.mesh.boundary_edges.push_back({e.a, mid, e.marker});
    out.mesh.boundary_edges.push_back({mid, e.b, e.marker});
  }

  validate(out.mesh);
  return out;
}

MeshQualityReport check_quality(const PolygonalMesh& m) {
  MeshQualityReport rep;
  rep.cells.reserve(m.cells.size());
  rep.gamma1 = std::numeric_limits<double>::infinity();
  rep.gamma2 = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    const Polygon poly = m.cell_polygon(static_cast<int>(c));
    CellQuality q;
    q.h = polygon_diameter(poly);
    q.area = polygon_signed_area(poly);
    q.rho = kernel_chebyshev_disc(poly).radius;
    q.min_vertex_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = i + 1; j < poly.size(); ++j)
        q.min_vertex_dist = std::min(q.min_vertex_dist, dist(poly[i], poly[j]));
    rep.gamma1 = std::min(rep.gamma1, q.rho / q.h);
    rep.gamma2 = std::min(rep.gamma2, q.min_vertex_dist / q.h);
    rep.h = std::max(rep.h, q.h);
    rep.cells.push_back(q);
  }
  return rep;
}

namespace {

std::string format_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string mesh_to_string(const PolygonalMesh& m) {
  std::ostringstream os;
  os << "polymesh 1\n";
  os << m.vertices.size() << ' ' << m.cells.size() << ' '
     << m.boundary_edges.size() << '\n';
  for (const Point2& v : m.vertices)
    os << format_coord(v.x) << ' ' << format_coord(v.y) << '\n';
  for (const auto& cell : m.cells) {
    os << cell.size();
    for (int v : cell) os << ' ' << v;
    os << '\n';
  }
  for (const BoundaryEdge& e : m.boundary_edges)
    os << e.a << ' ' << e.b << ' ' << e.marker << '\n';
  return os.str();
}

void write_mesh(const PolygonalMesh& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw MeshError("cannot open " + path + " for writing");
  f << mesh_to_string(m);
  if (!f) throw MeshError("failed writing " + path);
}

PolygonalMesh read_mesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MeshError("cannot open " + path);
  int line_no = 0;
  std::string line;
  const auto next_line = [&]() {
    if (!std::getline(f, line))
      throw MeshError(path + ": line " + std::to_string(line_no + 1) +
                      ": unexpected end of file");
    ++line_no;
    return std::istringstream(line);
  };
  const auto fail = [&](const std::string& msg) -> void {
    throw MeshError(path + ": line " + std::to_string(line_no) + ": " + msg);
  };

  {
    std::istringstream is = next_line();
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "polymesh" || version != 1)
      fail("expected header 'polymesh 1'");
  }
  long nv = 0, nc = 0, nb = 0;
  {
    std::istringstream is = next_line();
    if (!(is >> nv >> nc >> nb) || nv < 3 || nc < 1 || nb < 0)
      fail("expected counts '<nv> <nc> <nb>'");
  }

  PolygonalMesh m;
  m.vertices.resize(nv);
  for (long v = 0; v < nv; ++v) {
    std::istringstream is = next_line();
    if (!(is >> m.vertices[v].x >> m.vertices[v].y)) fail("expected 'x y'");
  }
  m.cells.resize(nc);
  for (long c = 0; c < nc; ++c) {
    std::istringstream is = next_line();
    long k = 0;
    if (!(is >> k) || k < 3) fail("expected cell size >= 3");
    m.cells[c].resize(k);
    for (long i = 0; i < k; ++i) {
      if (!(is >> m.cells[c][i])) fail("truncated cell vertex list");
      if (m.cells[c][i] < 0 || m.cells[c][i] >= nv)
        fail("cell " + std::to_string(c) + ": vertex index out of range");
    }
  }
  m.boundary_edges.resize(nb);
  for (long e = 0; e < nb; ++e) {
    std::istringstream is = next_line();
    BoundaryEdge& be = m.boundary_edges[e];
    if (!(is >> be.a >> be.b >> be.marker)) fail("expected 'i j marker'");
    if (be.a < 0 || be.a >= nv || be.b < 0 || be.b >= nv)
      fail("boundary edge vertex index out of range");
  }
  validate(m);
  return m;
}

}  // namespace polyvem::mesh
