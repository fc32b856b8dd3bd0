#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyvem/geometry.hpp"

namespace polyvem::mesh {

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  int marker = 0;
};

// Polygonal mesh with CCW cells. Boundary edges carry side markers: for the
// unit-square generators 1 = bottom, 2 = right, 3 = top, 4 = left.
struct PolygonalMesh {
  std::vector<Point2> vertices;
  std::vector<std::vector<int>> cells;
  std::vector<BoundaryEdge> boundary_edges;

  Polygon cell_polygon(int c) const;
  double domain_diameter() const;
};

// Origin of each refined vertex: the first n_original_vertices refined
// vertices are the original ones; refined vertex n_original_vertices + e is
// the point inserted on original edge e, at arclength fraction alpha from the
// canonical first endpoint (the lower global vertex index).
struct SplitMap {
  double alpha = 0.5;
  int n_original_vertices = 0;
  struct EdgePoint {
    int a = 0;  // canonical endpoints, a < b
    int b = 0;
  };
  std::vector<EdgePoint> edge_points;

  bool is_edge_point(int v) const { return v >= n_original_vertices; }
  const EdgePoint& edge_point(int v) const {
    return edge_points[v - n_original_vertices];
  }
};

struct SplitResult {
  PolygonalMesh mesh;
  SplitMap map;
};

struct CellQuality {
  double h = 0.0;                // diameter
  double area = 0.0;
  double rho = 0.0;              // kernel inscribed-disc radius; 0 if empty
  double min_vertex_dist = 0.0;  // min pairwise distance of cell vertices
};

struct MeshQualityReport {
  std::vector<CellQuality> cells;
  double gamma1 = 0.0;  // min_K rho_K / h_K
  double gamma2 = 0.0;  // min_K min_vertex_dist_K / h_K
  double h = 0.0;       // max_K h_K
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws MeshError on any invariant violation (orientation, simplicity,
// duplicate vertices, edge incidence, boundary consistency).
void validate(const PolygonalMesh& m);

// Jittered structured triangulation of the unit square; boundary vertices are
// never perturbed. Deterministic for a fixed seed.
PolygonalMesh generate_triangle_mesh(int n, double jitter,
                                     std::uint64_t seed = 20240915);

// n x n quad grid mapped by (xi,eta) -> (xi,eta) + (1/10) sin(2 pi xi)
// sin(2 pi eta) (1,1); the map is the identity on the boundary.
PolygonalMesh generate_distorted_quad_mesh(int n);

// Clipped Voronoi diagram of the given seeds in the unit square after n_lloyd
// Lloyd relaxation steps. Exposed for tests; generate_voronoi_mesh draws the
// seeds from the deterministic Rng.
PolygonalMesh generate_voronoi_mesh_from_seeds(std::vector<Point2> seeds,
                                               int n_lloyd);
PolygonalMesh generate_voronoi_mesh(int n_seeds, int n_lloyd,
                                    std::uint64_t rng_seed);

// Inserts one point per geometric edge at arclength fraction alpha from the
// canonical first endpoint (lower global vertex index), into both incident
// cells. Geometry of every cell is unchanged.
SplitResult split_edges(const PolygonalMesh& m, double alpha);

MeshQualityReport check_quality(const PolygonalMesh& m);

PolygonalMesh read_mesh(const std::string& path);
void write_mesh(const PolygonalMesh& m, const std::string& path);
std::string mesh_to_string(const PolygonalMesh& m);

}  // namespace polyvem::mesh
