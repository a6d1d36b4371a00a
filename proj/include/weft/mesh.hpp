// Copyright 2026 The Weft Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEFT_MESH_HPP_
#define WEFT_MESH_HPP_

#include "weft/common.hpp"

#include <Eigen/SVD>
#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace weft {

using Face = std::array<int, 3>;

/// Minimum triangle area (m^2) below which a face is rejected as degenerate.
inline constexpr double kDegenerateFaceArea = 1e-12;

/// Rest-state triangle mesh with the connectivity and per-face quantities the
/// rest of the pipeline relies on. Immutable after build_mesh; safe to share
/// across threads.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  // Cached at build time.
  std::vector<double> area;                    ///< per-face area s_i (m^2)
  std::vector<Vec3> normal;                    ///< per-face unit normal n_i
  std::vector<Mat3> rest_frame_inv;            ///< per-face Q_i^{-rest}
  std::vector<std::vector<int>> face_adjacency;    ///< dual graph (shared edge)
  std::vector<std::vector<int>> vertex_neighbors;  ///< 1-ring, sorted
  std::vector<int> vertex_component;           ///< vertex connected component id
  int component_count = 0;

  int vertex_count() const { return int(vertices.size()); }
  int face_count() const { return int(faces.size()); }

  Vec3 centroid(int f) const {
    const Face& t = faces[f];
    return (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]) / 3.0;
  }

  /// Content hash over raw vertex and face data; keys geodesic cache files.
  std::uint64_t content_hash() const {
    std::uint64_t h = fnv1a64_values(vertices);
    return fnv1a64_values(faces, h);
  }
};

/// Average face centroid z at the given positions (the paper's global anchor).
inline Vec3 mean_centroid(const TriMesh& mesh, const std::vector<Vec3>& positions) {
  Vec3 z = Vec3::Zero();
  for (const Face& t : mesh.faces) {
    z += positions[t[0]] + positions[t[1]] + positions[t[2]];
  }
  return z / (3.0 * double(mesh.faces.size()));
}

/// Local frame Q = [v_k - v_j, v_l - v_j, n] of face f at the given positions.
inline Mat3 local_frame(const TriMesh& mesh, int face_index,
                        const std::vector<Vec3>& positions) {
  const Face& t = mesh.faces[face_index];
  const Vec3 e1 = positions[t[1]] - positions[t[0]];
  const Vec3 e2 = positions[t[2]] - positions[t[0]];
  const Vec3 cross = e1.cross(e2);
  const double area = 0.5 * cross.norm();
  if (!(area > kDegenerateFaceArea)) {
    fail(ErrorCategory::numeric, "degenerate face ", face_index,
         " (area ", area, " m^2)");
  }
  Mat3 q;
  q.col(0) = e1;
  q.col(1) = e2;
  q.col(2) = cross / cross.norm();
  return q;
}

/// Per-face absolute deformation gradients and their singular values.
struct DeformationState {
  std::vector<Mat3> phi;
  std::vector<Vec3> sigma;  ///< singular values, descending
};

/// Singular values of a 3x3 matrix, descending.
inline Vec3 singular_values(const Mat3& m) {
  return Eigen::JacobiSVD<Mat3>(m).singularValues();
}

/// Phi_i = Q_i(positions) * Q_i^{-rest} for every face.
inline std::vector<Mat3> deformation_gradients(const TriMesh& rest,
                                               const std::vector<Vec3>& positions) {
  if (int(positions.size()) != rest.vertex_count()) {
    fail(ErrorCategory::data, "position count ", positions.size(),
         " does not match mesh vertex count ", rest.vertex_count());
  }
  std::vector<Mat3> phi(rest.face_count());
  for (int f = 0; f < rest.face_count(); ++f) {
    phi[f] = local_frame(rest, f, positions) * rest.rest_frame_inv[f];
  }
  return phi;
}

inline DeformationState deformation_state(const TriMesh& rest,
                                          const std::vector<Vec3>& positions) {
  DeformationState state;
  state.phi = deformation_gradients(rest, positions);
  state.sigma.resize(state.phi.size());
  for (std::size_t f = 0; f < state.phi.size(); ++f) {
    state.sigma[f] = singular_values(state.phi[f]);
  }
  return state;
}

/// Psi_i = Phi_i^t * (Phi_i^{t-1})^{-1} per face.
inline std::vector<Mat3> relative_gradients(const std::vector<Mat3>& phi_t,
                                            const std::vector<Mat3>& phi_prev) {
  if (phi_t.size() != phi_prev.size()) {
    fail(ErrorCategory::data, "gradient field sizes differ: ", phi_t.size(),
         " vs ", phi_prev.size());
  }
  std::vector<Mat3> psi(phi_t.size());
  for (std::size_t f = 0; f < phi_t.size(); ++f) {
    const double det = phi_prev[f].determinant();
    if (std::abs(det) < 1e-10) {
      fail(ErrorCategory::numeric, "singular previous gradient at face ", f,
           " (|det| = ", std::abs(det), ")");
    }
    psi[f] = phi_t[f] * phi_prev[f].inverse();
  }
  return psi;
}

/// Uniform graph Laplacian: row i = V_i - mean of 1-ring neighbors.
inline Eigen::SparseMatrix<double> uniform_laplacian(const TriMesh& mesh) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const auto& ring = mesh.vertex_neighbors[v];
    if (ring.empty()) {
      fail(ErrorCategory::data, "isolated vertex ", v, " has no Laplacian row");
    }
    triplets.emplace_back(v, v, 1.0);
    const double w = -1.0 / double(ring.size());
    for (int u : ring) triplets.emplace_back(v, u, w);
  }
  Eigen::SparseMatrix<double> lap(mesh.vertex_count(), mesh.vertex_count());
  lap.setFromTriplets(triplets.begin(), triplets.end());
  return lap;
}

/// Builds the mesh and validates it: degenerate faces, invalid indices,
/// inconsistent winding and non-manifold edges are all rejected here so later
/// stages can assume a sane 2-manifold patch.
inline TriMesh build_mesh(std::vector<Vec3> vertices, std::vector<Face> faces) {
  TriMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.faces = std::move(faces);
  const int nv = mesh.vertex_count();
  const int nf = mesh.face_count();
  if (nv < 3 || nf < 1) {
    fail(ErrorCategory::data, "mesh needs at least one triangle, got ", nv,
         " vertices / ", nf, " faces");
  }

  mesh.area.resize(nf);
  mesh.normal.resize(nf);
  mesh.rest_frame_inv.resize(nf);
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.faces[f][k];
      if (v < 0 || v >= nv) {
        fail(ErrorCategory::data, "face ", f, " references invalid vertex ", v);
      }
    }
    const Face& t = mesh.faces[f];
    const Vec3 cross = (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                           .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    mesh.area[f] = 0.5 * cross.norm();
    if (!(mesh.area[f] > kDegenerateFaceArea)) {
      fail(ErrorCategory::data, "degenerate face ", f, " (area ", mesh.area[f],
           " m^2)");
    }
    mesh.normal[f] = cross.normalized();
    Mat3 q;
    q.col(0) = mesh.vertices[t[1]] - mesh.vertices[t[0]];
    q.col(1) = mesh.vertices[t[2]] - mesh.vertices[t[0]];
    q.col(2) = mesh.normal[f];
    mesh.rest_frame_inv[f] = q.inverse();
  }

  // Edge map: undirected edge -> incident faces with orientation flags.
  struct EdgeUse {
    int face;
    bool forward;  // edge traversed as (a,b) with a < b
  };
  std::map<std::pair<int, int>, std::vector<EdgeUse>> edges;
  for (int f = 0; f < nf; ++f) {
    const Face& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      if (a == b) fail(ErrorCategory::data, "face ", f, " repeats vertex ", a);
      const auto key = std::minmax(a, b);
      edges[{key.first, key.second}].push_back({f, a < b});
    }
  }

  mesh.face_adjacency.assign(nf, {});
  for (const auto& [edge, uses] : edges) {
    if (uses.size() > 2) {
      fail(ErrorCategory::data, "non-manifold edge (", edge.first, ", ",
           edge.second, ") shared by ", uses.size(), " faces");
    }
    if (uses.size() == 2) {
      if (uses[0].forward == uses[1].forward) {
        fail(ErrorCategory::data, "inconsistent winding across edge (",
             edge.first, ", ", edge.second, ") between faces ", uses[0].face,
             " and ", uses[1].face);
      }
      mesh.face_adjacency[uses[0].face].push_back(uses[1].face);
      mesh.face_adjacency[uses[1].face].push_back(uses[0].face);
    }
  }
  for (auto& adj : mesh.face_adjacency) std::sort(adj.begin(), adj.end());

  mesh.vertex_neighbors.assign(nv, {});
  for (const auto& [edge, uses] : edges) {
    mesh.vertex_neighbors[edge.first].push_back(edge.second);
    mesh.vertex_neighbors[edge.second].push_back(edge.first);
  }
  for (auto& ring : mesh.vertex_neighbors) std::sort(ring.begin(), ring.end());

  // Vertex connected components (the Poisson solve pins one translation per
  // component).
  mesh.vertex_component.assign(nv, -1);
  std::vector<int> stack;
  for (int seed = 0; seed < nv; ++seed) {
    if (mesh.vertex_component[seed] >= 0) continue;
    const int id = mesh.component_count++;
    stack.push_back(seed);
    mesh.vertex_component[seed] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : mesh.vertex_neighbors[v]) {
        if (mesh.vertex_component[u] < 0) {
          mesh.vertex_component[u] = id;
          stack.push_back(u);
        }
      }
    }
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// OBJ import/export (positions + faces only)

inline TriMesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::io, "cannot open OBJ file ", path);
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x() >> p.y() >> p.z())) {
        fail(ErrorCategory::data, path, ":", line_no, ": malformed vertex line");
      }
      vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string token;
      while (ls >> token) {
        // Accept "i", "i/j", "i/j/k", "i//k"; only the position index is used.
        const std::size_t slash = token.find('/');
        const std::string head = token.substr(0, slash);
        int i = 0;
        try {
          i = std::stoi(head);
        } catch (const std::exception&) {
          fail(ErrorCategory::data, path, ":", line_no, ": bad face index '",
               token, "'");
        }
        if (i < 0) i = int(vertices.size()) + i + 1;  // relative indexing
        idx.push_back(i - 1);
      }
      if (idx.size() != 3) {
        fail(ErrorCategory::data, path, ":", line_no,
             ": only triangle faces are supported (got ", idx.size(),
             " vertices)");
      }
      faces.push_back({idx[0], idx[1], idx[2]});
    }
    // Ignore UVs, normals, groups, materials.
  }
  return build_mesh(std::move(vertices), std::move(faces));
}

inline void write_obj(const std::string& path, const TriMesh& mesh,
                      const std::vector<Vec3>* positions = nullptr,
                      bool with_normals = false) {
  const std::vector<Vec3>& pos = positions ? *positions : mesh.vertices;
  if (int(pos.size()) != mesh.vertex_count()) {
    fail(ErrorCategory::data, "position count mismatch writing ", path);
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write OBJ file ", path);
  char buf[160];
  for (const Vec3& p : pos) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", p.x(), p.y(), p.z());
    out << buf;
  }
  if (with_normals) {
    for (int f = 0; f < mesh.face_count(); ++f) {
      const Face& t = mesh.faces[f];
      const Vec3 n = (pos[t[1]] - pos[t[0]]).cross(pos[t[2]] - pos[t[0]]).normalized();
      std::snprintf(buf, sizeof(buf), "vn %.9g %.9g %.9g\n", n.x(), n.y(), n.z());
      out << buf;
    }
    for (int f = 0; f < mesh.face_count(); ++f) {
      const Face& t = mesh.faces[f];
      out << "f " << t[0] + 1 << "//" << f + 1 << ' ' << t[1] + 1 << "//"
          << f + 1 << ' ' << t[2] + 1 << "//" << f + 1 << '\n';
    }
  } else {
    for (const Face& t : mesh.faces) {
      out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
  }
  if (!out) fail(ErrorCategory::io, "write failed for ", path);
}

}  // namespace weft

#endif  // WEFT_MESH_HPP_
