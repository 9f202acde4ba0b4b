#include "esdg/mesh.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "esdg/basis.hpp"

namespace esdg {

MeshKind parse_mesh_kind(std::string_view name) {
  if (name == "tri" || name == "triangle") return MeshKind::Triangle;
  if (name == "quad" || name == "quadrilateral") return MeshKind::Quadrilateral;
  if (name == "hybrid") return MeshKind::Hybrid;
  throw std::invalid_argument("unknown element kind '" + std::string(name) +
                              "' (expected tri, quad or hybrid)");
}

std::string_view to_string(MeshKind kind) {
  switch (kind) {
    case MeshKind::Triangle: return "tri";
    case MeshKind::Quadrilateral: return "quad";
    case MeshKind::Hybrid: return "hybrid";
  }
  return "?";
}

bool MeshTopology::has(ElementKind k) const {
  for (auto e : kind) {
    if (e == k) return true;
  }
  return false;
}

namespace {

enum Side { Bottom = 0, Right = 1, Top = 2, Left = 3 };

struct CellSide {
  int element;
  int face;
};

}  // namespace

MeshTopology build_uniform_mesh(MeshKind mkind, int nx, int ny, const Domain& domain) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_uniform_mesh: nx and ny must be >= 1");
  if (!(domain.width() > 0) || !(domain.height() > 0)) {
    throw std::invalid_argument("build_uniform_mesh: degenerate domain");
  }
  MeshTopology mesh;
  mesh.domain = domain;
  mesh.nx = nx;
  mesh.ny = ny;

  const double hx = domain.width() / nx;
  const double hy = domain.height() / ny;
  const auto vid = [&](int i, int j) { return ((j + ny) % ny) * nx + (i + nx) % nx; };
  const auto cell_is_quad = [&](int i) {
    return mkind == MeshKind::Quadrilateral || (mkind == MeshKind::Hybrid && i < nx / 2);
  };

  // First element of every cell, and the element/face owning each cell side.
  std::vector<int> first(nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      first[j * nx + i] = mesh.num_elements();
      const double x0 = domain.x0 + i * hx, x1 = domain.x0 + (i + 1) * hx;
      const double y0 = domain.y0 + j * hy, y1 = domain.y0 + (j + 1) * hy;
      const Eigen::Vector2d p00(x0, y0), p10(x1, y0), p11(x1, y1), p01(x0, y1);
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      if (cell_is_quad(i)) {
        mesh.kind.push_back(ElementKind::Quadrilateral);
        mesh.corners.push_back({p00, p10, p11, p01});
        mesh.vertex_ids.push_back({v00, v10, v11, v01});
      } else {
        mesh.kind.push_back(ElementKind::Triangle);
        mesh.corners.push_back({p00, p10, p11, Eigen::Vector2d::Zero()});
        mesh.vertex_ids.push_back({v00, v10, v11, -1});
        mesh.kind.push_back(ElementKind::Triangle);
        mesh.corners.push_back({p11, p01, p00, Eigen::Vector2d::Zero()});
        mesh.vertex_ids.push_back({v11, v01, v00, -1});
      }
    }
  }
  mesh.neighbors.resize(mesh.num_elements());

  const auto side = [&](int i, int j, Side s) -> CellSide {
    i = (i + nx) % nx;
    j = (j + ny) % ny;
    const int e = first[j * nx + i];
    if (cell_is_quad(i)) return {e, s};
    switch (s) {
      case Bottom: return {e, 0};
      case Right: return {e, 1};
      case Top: return {e + 1, 0};
      case Left: return {e + 1, 1};
    }
    return {e, 0};
  };
  const auto link = [&](CellSide a, CellSide b) {
    mesh.neighbors[a.element][a.face] = {b.element, b.face, true};
    mesh.neighbors[b.element][b.face] = {a.element, a.face, true};
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      link(side(i, j, Right), side(i + 1, j, Left));
      link(side(i, j, Top), side(i, j + 1, Bottom));
      if (!cell_is_quad(i)) {
        const int e = first[j * nx + i];
        link({e, 2}, {e + 1, 2});
      }
    }
  }
  return mesh;
}

Eigen::Vector2d affine_map(const MeshTopology& mesh, int k, double r, double s) {
  const auto& c = mesh.corners[k];
  if (mesh.kind[k] == ElementKind::Triangle) {
    return -0.5 * (r + s) * c[0] + 0.5 * (1 + r) * c[1] + 0.5 * (1 + s) * c[2];
  }
  return 0.25 * ((1 - r) * (1 - s) * c[0] + (1 + r) * (1 - s) * c[1] + (1 + r) * (1 + s) * c[2] +
                 (1 - r) * (1 + s) * c[3]);
}

std::vector<ElementMapping> warp_mesh(const MeshTopology& mesh, double alpha, int Ngeo) {
  if (Ngeo < 1) throw std::invalid_argument("warp_mesh: Ngeo must be >= 1");
  const Domain& d = mesh.domain;
  const double pi = std::numbers::pi;

  struct NodalBasis {
    Eigen::MatrixXd nodes;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  };
  std::array<NodalBasis, 2> nodal;
  for (auto kind : {ElementKind::Triangle, ElementKind::Quadrilateral}) {
    auto& nb = nodal[static_cast<int>(kind)];
    nb.nodes = interpolation_nodes(kind, Ngeo);
    nb.lu.compute(basis_eval(Basis{kind, Ngeo}, nb.nodes));
  }

  std::vector<ElementMapping> maps(mesh.num_elements());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const auto& nb = nodal[static_cast<int>(mesh.kind[k])];
    Eigen::MatrixXd xy(nb.nodes.rows(), 2);
    for (Eigen::Index n = 0; n < nb.nodes.rows(); ++n) {
      const Eigen::Vector2d p = affine_map(mesh, k, nb.nodes(n, 0), nb.nodes(n, 1));
      const double X = 2 * (p.x() - d.x0) / d.width() - 1;
      const double Y = 2 * (p.y() - d.y0) / d.height() - 1;
      const double Xw = X + alpha * std::cos(pi * X / 2) * std::sin(pi * Y);
      const double Yw = Y + alpha * std::sin(pi * X) * std::cos(pi * Y / 2);
      xy(n, 0) = alpha == 0 ? p.x() : d.x0 + 0.5 * (Xw + 1) * d.width();
      xy(n, 1) = alpha == 0 ? p.y() : d.y0 + 0.5 * (Yw + 1) * d.height();
    }
    maps[k] = {mesh.kind[k], Ngeo, nb.lu.solve(xy)};
  }
  return maps;
}

namespace {

struct GeometryBasis {
  Eigen::MatrixXd V, Vr, Vs;
};

GeometryBasis geometry_basis(ElementKind kind, int Ngeo, const ReferenceOperators& ops) {
  Eigen::MatrixXd pts(ops.Ntot(), 2);
  pts << ops.volume.points, ops.face_points;
  const Basis b{kind, Ngeo};
  GeometryBasis gb;
  gb.V = basis_eval(b, pts);
  std::tie(gb.Vr, gb.Vs) = basis_grad(b, pts);
  return gb;
}

GeometricFactors factors_from(const GeometryBasis& gb, const ElementMapping& map,
                              const ReferenceOperators& ops, int element) {
  const int nq = ops.Nq();
  const int nf = ops.Nfq();
  GeometricFactors geo;
  geo.Ngeo = map.Ngeo;
  const Eigen::VectorXd x = gb.V * map.coeffs.col(0);
  const Eigen::VectorXd y = gb.V * map.coeffs.col(1);
  const Eigen::VectorXd xr = gb.Vr * map.coeffs.col(0);
  const Eigen::VectorXd xs = gb.Vs * map.coeffs.col(0);
  const Eigen::VectorXd yr = gb.Vr * map.coeffs.col(1);
  const Eigen::VectorXd ys = gb.Vs * map.coeffs.col(1);
  geo.x = x;
  geo.y = y;
  geo.G[0][0] = ys;
  geo.G[0][1] = -yr;
  geo.G[1][0] = -xs;
  geo.G[1][1] = xr;
  geo.J = (xr.cwiseProduct(ys) - xs.cwiseProduct(yr)).head(nq);
  if (!(geo.J.minCoeff() > 0)) {
    throw std::runtime_error("inverted element " + std::to_string(element) +
                             ": J = " + std::to_string(geo.J.minCoeff()));
  }
  for (int i = 0; i < 2; ++i) {
    geo.nJ[i] = geo.G[i][0].tail(nf).cwiseProduct(ops.face_normals.col(0)) +
                geo.G[i][1].tail(nf).cwiseProduct(ops.face_normals.col(1));
  }
  return geo;
}

}  // namespace

GeometricFactors geometric_factors(const ElementMapping& map, const ReferenceOperators& ops) {
  if (map.kind != ops.kind) throw std::invalid_argument("geometric_factors: element kind mismatch");
  return factors_from(geometry_basis(map.kind, map.Ngeo, ops), map, ops, -1);
}

std::vector<GeometricFactors> geometric_factors(const MeshTopology& mesh,
                                                const std::vector<ElementMapping>& maps,
                                                const ReferenceOperators* tri_ops,
                                                const ReferenceOperators* quad_ops) {
  std::array<const ReferenceOperators*, 2> ops{tri_ops, quad_ops};
  std::array<GeometryBasis, 2> gb;
  for (int t = 0; t < 2; ++t) {
    const auto kind = static_cast<ElementKind>(t);
    if (!mesh.has(kind)) continue;
    if (ops[t] == nullptr) throw std::invalid_argument("geometric_factors: missing operators");
    gb[t] = geometry_basis(kind, maps.front().Ngeo, *ops[t]);
  }
  std::vector<GeometricFactors> out(mesh.num_elements());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const int t = static_cast<int>(mesh.kind[k]);
    out[k] = factors_from(gb[t], maps[k], *ops[t], k);
  }
  return out;
}

WatertightReport check_watertight(const MeshTopology& mesh, const std::vector<GeometricFactors>& geo,
                                  const ReferenceOperators* tri_ops, const ReferenceOperators* quad_ops) {
  const auto ops_of = [&](int k) {
    return mesh.kind[k] == ElementKind::Triangle ? tri_ops : quad_ops;
  };
  const auto wrap = [](double d, double period) { return d - period * std::round(d / period); };
  WatertightReport rep;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const auto* ok = ops_of(k);
    for (int f = 0; f < num_faces(mesh.kind[k]); ++f) {
      const auto nb = mesh.neighbors[k][f];
      const auto* on = ops_of(nb.element);
      if (ok->face_size != on->face_size) {
        throw std::runtime_error("check_watertight: mismatched face rules");
      }
      const int nfp = ok->face_size;
      for (int i = 0; i < nfp; ++i) {
        const int a = ok->Nq() + f * nfp + i;
        const int j = nb.reversed ? nfp - 1 - i : i;
        const int b = on->Nq() + nb.face * nfp + j;
        const auto& gk = geo[k];
        const auto& gn = geo[nb.element];
        const double dx = wrap(gk.x[a] - gn.x[b], mesh.domain.width());
        const double dy = wrap(gk.y[a] - gn.y[b], mesh.domain.height());
        rep.position_mismatch = std::max(rep.position_mismatch, std::hypot(dx, dy));
        for (int c = 0; c < 2; ++c) {
          const double s = gk.nJ[c][f * nfp + i] + gn.nJ[c][nb.face * nfp + j];
          rep.normal_mismatch = std::max(rep.normal_mismatch, std::abs(s));
        }
      }
    }
  }
  return rep;
}

double min_diameter(const MeshTopology& mesh) {
  double h = std::numeric_limits<double>::infinity();
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const int nv = num_vertices(mesh.kind[k]);
    double diam = 0;
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b)
        diam = std::max(diam, (mesh.corners[k][a] - mesh.corners[k][b]).norm());
    h = std::min(h, diam);
  }
  return h;
}

void write_mesh_dump(std::ostream& os, const MeshTopology& mesh) {
  const Domain& d = mesh.domain;
  os << "# periodic mesh " << mesh.nx << " x " << mesh.ny << " on [" << d.x0 << ", " << d.x1
     << "] x [" << d.y0 << ", " << d.y1 << "]\n";
  os << "vertices " << mesh.num_vertices() << "\n";
  const double hx = d.width() / mesh.nx;
  const double hy = d.height() / mesh.ny;
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i)
      os << j * mesh.nx + i << " " << d.x0 + i * hx << " " << d.y0 + j * hy << "\n";
  os << "elements " << mesh.num_elements() << "\n";
  for (int k = 0; k < mesh.num_elements(); ++k) {
    os << k << " " << to_string(mesh.kind[k]);
    for (int v = 0; v < num_vertices(mesh.kind[k]); ++v) os << " " << mesh.vertex_ids[k][v];
    os << "\n";
  }
  os << "faces\n";
  for (int k = 0; k < mesh.num_elements(); ++k) {
    for (int f = 0; f < num_faces(mesh.kind[k]); ++f) {
      const auto& nb = mesh.neighbors[k][f];
      os << k << " " << f << " " << nb.element << " " << nb.face << " "
         << (nb.reversed ? "reversed" : "aligned") << "\n";
    }
  }
}

}  // namespace esdg
