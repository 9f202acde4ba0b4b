#ifndef ESDG_ELEMENT_HPP
#define ESDG_ELEMENT_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace esdg {

// Reference triangle: vertices (-1,-1), (1,-1), (-1,1).
// Reference quadrilateral: [-1,1]^2.
// Faces are numbered counter-clockwise and parametrized from their first to
// their second vertex.
enum class ElementKind { Triangle, Quadrilateral };

inline int num_faces(ElementKind kind) { return kind == ElementKind::Triangle ? 3 : 4; }

inline int num_vertices(ElementKind kind) { return num_faces(kind); }

inline double reference_measure(ElementKind kind) {
  return kind == ElementKind::Triangle ? 2.0 : 4.0;
}

/// Number of polynomials in V^N (P^N on triangles, Q^N on quadrilaterals).
inline int basis_size(ElementKind kind, int degree) {
  return kind == ElementKind::Triangle ? (degree + 1) * (degree + 2) / 2
                                       : (degree + 1) * (degree + 1);
}

inline std::array<double, 2> reference_vertex(ElementKind kind, int v) {
  if (kind == ElementKind::Triangle) {
    constexpr std::array<std::array<double, 2>, 3> verts{{{-1, -1}, {1, -1}, {-1, 1}}};
    return verts.at(v);
  }
  constexpr std::array<std::array<double, 2>, 4> verts{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
  return verts.at(v);
}

/// Local vertex indices (start, end) of a face.
inline std::array<int, 2> face_vertices(ElementKind kind, int face) {
  const int nf = num_faces(kind);
  if (face < 0 || face >= nf) throw std::out_of_range("face index out of range");
  return {face, (face + 1) % nf};
}

inline std::string_view to_string(ElementKind kind) {
  return kind == ElementKind::Triangle ? "tri" : "quad";
}

}  // namespace esdg

#endif  // ESDG_ELEMENT_HPP
