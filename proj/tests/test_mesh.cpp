#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "esdg/mesh.hpp"
#include "esdg/sbp.hpp"

using namespace esdg;

namespace {

int count_face_pairs(const MeshTopology& mesh) {
  int n = 0;
  for (int k = 0; k < mesh.num_elements(); ++k) n += num_faces(mesh.kind[k]);
  return n;
}

void check_adjacency(const MeshTopology& mesh) {
  for (int k = 0; k < mesh.num_elements(); ++k) {
    for (int f = 0; f < num_faces(mesh.kind[k]); ++f) {
      const auto nb = mesh.neighbors[k][f];
      REQUIRE(nb.element >= 0);
      const auto back = mesh.neighbors[nb.element][nb.face];
      CHECK(back.element == k);
      CHECK(back.face == f);
      CHECK(nb.reversed);
    }
  }
}

}  // namespace

TEST_CASE("uniform mesh counts and adjacency") {
  const auto quad = build_uniform_mesh(MeshKind::Quadrilateral, 2, 2, {0, 1, 0, 1});
  CHECK(quad.num_elements() == 4);
  CHECK(count_face_pairs(quad) == 16);
  check_adjacency(quad);

  const auto hyb = build_uniform_mesh(MeshKind::Hybrid, 2, 2, {0, 1, 0, 1});
  int nq = 0, nt = 0;
  for (auto k : hyb.kind) (k == ElementKind::Quadrilateral ? nq : nt)++;
  CHECK(nq == 2);
  CHECK(nt == 4);
  check_adjacency(hyb);

  const auto tri = build_uniform_mesh(MeshKind::Triangle, 1, 1, {0, 1, 0, 1});
  CHECK(tri.num_elements() == 2);
  CHECK(tri.neighbors[0][2].element == 1);
  CHECK(tri.neighbors[0][2].face == 2);
  // Bottom of the lower triangle wraps to the top of the upper one.
  CHECK(tri.neighbors[0][0].element == 1);
  CHECK(tri.neighbors[0][0].face == 0);
  check_adjacency(tri);

  CHECK_THROWS_AS(build_uniform_mesh(MeshKind::Quadrilateral, 2, 2, {0, 0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh(MeshKind::Quadrilateral, 0, 2, {0, 1, 0, 1}), std::invalid_argument);
}

TEST_CASE("identity and affine maps") {
  const auto mesh = build_uniform_mesh(MeshKind::Quadrilateral, 4, 4, {0, 1, 0, 1});
  const auto ops = build_reference_operators(ElementKind::Quadrilateral, 3, 1);
  const auto maps = warp_mesh(mesh, 0.0, 1);
  const auto geo = geometric_factors(mesh, maps, nullptr, &ops);
  const double h = 0.25;
  for (const auto& g : geo) {
    CHECK((g.J.array() - h * h / 4).abs().maxCoeff() < 1e-14);
    CHECK((g.G[0][0].array() - h / 2).abs().maxCoeff() < 1e-14);
    CHECK(g.G[0][1].cwiseAbs().maxCoeff() < 1e-14);
  }

  // A triangle mapped onto the reference triangle has J = 1 and G = I.
  MeshTopology ref;
  ref.domain = {-1, 1, -1, 1};
  ref.nx = ref.ny = 1;
  ref.kind = {ElementKind::Triangle};
  ref.corners = {{Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, -1), Eigen::Vector2d(-1, 1), Eigen::Vector2d::Zero()}};
  ref.vertex_ids = {{0, 0, 0, -1}};
  ref.neighbors.resize(1);
  const auto tops = build_reference_operators(ElementKind::Triangle, 3, 2);
  const auto g = geometric_factors(warp_mesh(ref, 0.0, 2)[0], tops);
  CHECK((g.J.array() - 1).abs().maxCoeff() < 1e-13);
  CHECK((g.G[0][0].array() - 1).abs().maxCoeff() < 1e-13);
  CHECK((g.G[1][1].array() - 1).abs().maxCoeff() < 1e-13);
  CHECK(g.G[0][1].cwiseAbs().maxCoeff() < 1e-13);
  CHECK(g.G[1][0].cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("warped meshes are valid, watertight and satisfy the discrete GCL") {
  const Domain dom{0, 15, -0.5, 0.5};
  for (auto mk : {MeshKind::Triangle, MeshKind::Quadrilateral, MeshKind::Hybrid}) {
    const int n = 4;
    const auto mesh = build_uniform_mesh(mk, 15, 2, dom);
    for (int option = 1; option <= 3; ++option) {
      const auto tri = build_reference_operators(ElementKind::Triangle, n, option);
      const auto quad = build_reference_operators(ElementKind::Quadrilateral, n, option);
      for (int ngeo = 1; ngeo <= n; ++ngeo) {
        const auto maps = warp_mesh(mesh, 0.125, ngeo);
        const auto geo = geometric_factors(mesh, maps, &tri, &quad);
        const auto wt = check_watertight(mesh, geo, &tri, &quad);
        CHECK(wt.position_mismatch < 1e-12);
        CHECK(wt.normal_mismatch < 1e-11);

        double area = 0;
        double gcl = 0;
        for (int k = 0; k < mesh.num_elements(); ++k) {
          const auto& ops = mesh.kind[k] == ElementKind::Triangle ? tri : quad;
          area += ops.volume.weights.dot(geo[k].J);
          for (int i = 0; i < 2; ++i) {
            CHECK((geo[k].nJ[i] - (geo[k].G[i][0].tail(ops.Nfq()).cwiseProduct(ops.face_normals.col(0)) +
                                   geo[k].G[i][1].tail(ops.Nfq()).cwiseProduct(ops.face_normals.col(1))))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
          }
          const auto cur = assemble_curved(ops, geo[k]);
          for (int i = 0; i < 2; ++i) {
            gcl = std::max(gcl, (cur.Qk[i] * Eigen::VectorXd::Ones(ops.Ntot())).cwiseAbs().maxCoeff());
          }
        }
        if (ngeo >= 2) CHECK(std::abs(area - 15.0) < 1e-10);
        CHECK(gcl < 1e-11);
      }
    }
  }
}

TEST_CASE("thin warped channel stays valid up to Ngeo = 6") {
  const auto mesh = build_uniform_mesh(MeshKind::Triangle, 15, 2, {0, 15, -0.5, 0.5});
  const auto tri = build_reference_operators(ElementKind::Triangle, 6, 3);
  for (int ngeo = 1; ngeo <= 6; ++ngeo) {
    const auto geo = geometric_factors(mesh, warp_mesh(mesh, 0.125, ngeo), &tri, nullptr);
    for (const auto& g : geo) CHECK(g.J.minCoeff() > 0);
  }
}

TEST_CASE("inverted elements are rejected") {
  const auto mesh = build_uniform_mesh(MeshKind::Quadrilateral, 4, 4, {0, 1, 0, 1});
  const auto quad = build_reference_operators(ElementKind::Quadrilateral, 3, 1);
  CHECK_THROWS_WITH_AS(geometric_factors(mesh, warp_mesh(mesh, 2.0, 3), nullptr, &quad),
                       doctest::Contains("inverted element"), std::runtime_error);
}

TEST_CASE("mesh dump") {
  const auto mesh = build_uniform_mesh(MeshKind::Hybrid, 2, 1, {0, 2, 0, 1});
  std::ostringstream os;
  write_mesh_dump(os, mesh);
  const std::string s = os.str();
  CHECK(s.find("elements 3") != std::string::npos);
  CHECK(s.find("0 quad 0 1 1 0") != std::string::npos);
  CHECK(min_diameter(mesh) == doctest::Approx(std::sqrt(2.0)));
}
