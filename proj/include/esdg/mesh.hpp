#ifndef ESDG_MESH_HPP
#define ESDG_MESH_HPP

#include <Eigen/Core>

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "esdg/element.hpp"
#include "esdg/reference_operators.hpp"
#include "esdg/sbp.hpp"

namespace esdg {

enum class MeshKind { Triangle, Quadrilateral, Hybrid };

MeshKind parse_mesh_kind(std::string_view name);
std::string_view to_string(MeshKind kind);

struct Domain {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

/// Neighbor across one element face. Faces are parametrized counter-clockwise,
/// so a matched pair always traverses its shared edge in opposite directions.
struct FaceNeighbor {
  int element = -1;
  int face = -1;
  bool reversed = true;
};

/// Periodic structured mesh. Quads on cells with i < nx/2 in hybrid meshes;
/// every other cell of a triangle or hybrid mesh is split along its (+,+)
/// diagonal into a lower-right and an upper-left triangle.
struct MeshTopology {
  Domain domain;
  int nx = 0, ny = 0;
  std::vector<ElementKind> kind;
  std::vector<std::array<int, 4>> vertex_ids;          // periodic vertex numbering
  std::vector<std::array<Eigen::Vector2d, 4>> corners;  // unwrapped corner coordinates
  std::vector<std::array<FaceNeighbor, 4>> neighbors;

  int num_elements() const { return static_cast<int>(kind.size()); }
  int num_vertices() const { return nx * ny; }
  bool has(ElementKind k) const;
};

/// Throws std::invalid_argument for nx, ny < 1 or a degenerate domain.
MeshTopology build_uniform_mesh(MeshKind kind, int nx, int ny, const Domain& domain);

/// Degree-Ngeo polynomial map from the reference element, stored as modal
/// coefficients (columns x, y) in the orthonormal basis of that degree.
struct ElementMapping {
  ElementKind kind = ElementKind::Triangle;
  int Ngeo = 1;
  Eigen::MatrixXd coeffs;
};

/// Straight-sided map of element k.
Eigen::Vector2d affine_map(const MeshTopology& mesh, int k, double r, double s);

/// Interpolates the domain warp
///   x~ = x + alpha cos(pi x / 2) sin(pi y),  y~ = y + alpha sin(pi x) cos(pi y / 2)
/// (in coordinates rescaled to [-1,1]^2) at the degree-Ngeo mapping nodes of
/// every element. The warp fixes the domain boundary pointwise, so periodic
/// faces stay matched.
std::vector<ElementMapping> warp_mesh(const MeshTopology& mesh, double alpha, int Ngeo);

/// Geometric terms of one element plus physical coordinates at volume then
/// surface points.
struct GeometricFactors : ElementGeometry {
  int Ngeo = 1;
  Eigen::VectorXd x, y;  // length Nq + Nfq
};

/// Throws std::runtime_error("inverted element ...") if J <= 0 at a volume point.
GeometricFactors geometric_factors(const ElementMapping& map, const ReferenceOperators& ops);

/// Per-element factors using the operators of each element's kind; basis
/// evaluations are shared between elements of one kind.
std::vector<GeometricFactors> geometric_factors(const MeshTopology& mesh,
                                                const std::vector<ElementMapping>& maps,
                                                const ReferenceOperators* tri_ops,
                                                const ReferenceOperators* quad_ops);

struct WatertightReport {
  double position_mismatch = 0;  // max |x(self) - x(neighbor)| at matched points
  double normal_mismatch = 0;    // max |nJ(self) + nJ(neighbor)|
};

/// Compares matched surface points across every interior face. Periodic
/// faces are compared after removing the domain period.
WatertightReport check_watertight(const MeshTopology& mesh, const std::vector<GeometricFactors>& geo,
                                  const ReferenceOperators* tri_ops, const ReferenceOperators* quad_ops);

/// Minimum element diameter (largest vertex-to-vertex distance).
double min_diameter(const MeshTopology& mesh);

/// Plain-text listing of vertices, elements and face adjacency.
void write_mesh_dump(std::ostream& os, const MeshTopology& mesh);

}  // namespace esdg

#endif  // ESDG_MESH_HPP
