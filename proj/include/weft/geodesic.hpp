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

#ifndef WEFT_GEODESIC_HPP_
#define WEFT_GEODESIC_HPP_

#include "weft/mesh.hpp"

#include <fstream>
#include <limits>
#include <queue>
#include <vector>

namespace weft {

/// All-pairs geodesic distances between face centroids on the dual graph.
/// Disconnected pairs hold +infinity, which maps to exactly zero attention
/// weight after the softmax. Stored dense in 32-bit floats.
struct GeodesicField {
  Eigen::MatrixXf D;   ///< symmetric, zero diagonal, meters
  double scale = 1.0;  ///< divisor applied before the p_geo power
};

/// Single-source Dijkstra over the dual graph. Nodes are faces; the edge
/// weight across each shared mesh edge is the Euclidean centroid distance.
inline std::vector<double> dual_graph_distances(const TriMesh& mesh, int source,
                                                const std::vector<Vec3>& positions) {
  const int nf = mesh.face_count();
  std::vector<double> dist(nf, std::numeric_limits<double>::infinity());
  std::vector<Vec3> centroid(nf);
  for (int f = 0; f < nf; ++f) {
    const Face& t = mesh.faces[f];
    centroid[f] = (positions[t[0]] + positions[t[1]] + positions[t[2]]) / 3.0;
  }
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, f] = queue.top();
    queue.pop();
    if (d > dist[f]) continue;
    for (int g : mesh.face_adjacency[f]) {
      const double nd = d + (centroid[g] - centroid[f]).norm();
      if (nd < dist[g]) {
        dist[g] = nd;
        queue.push({nd, g});
      }
    }
  }
  return dist;
}

/// All-pairs dual-graph geodesics on the rest mesh. Parallel over source
/// faces; each row is written independently so the result is deterministic
/// for any thread count.
inline GeodesicField geodesic_field(const TriMesh& rest, double scale = 1.0,
                                    int threads = 0) {
  const int nf = rest.face_count();
  GeodesicField field;
  field.scale = scale;
  field.D.resize(nf, nf);
  parallel_for(
      0, nf,
      [&](int source) {
        const std::vector<double> dist = dual_graph_distances(rest, source, rest.vertices);
        for (int j = 0; j < nf; ++j) field.D(source, j) = float(dist[j]);
      },
      threads);
  // Dijkstra is exact on the dual graph, but float rounding can leave a
  // one-ulp asymmetry; symmetrize so downstream checks can rely on it.
  for (int i = 0; i < nf; ++i) {
    for (int j = i + 1; j < nf; ++j) {
      const float d = std::min(field.D(i, j), field.D(j, i));
      field.D(i, j) = d;
      field.D(j, i) = d;
    }
    field.D(i, i) = 0.0f;
  }
  return field;
}

// ---------------------------------------------------------------------------
// Binary cache, keyed by the mesh content hash.

namespace detail {
inline constexpr std::uint32_t kGeodesicCacheMagic = 0x57474544;  // "WGED"
}

inline void save_geodesic_cache(const std::string& path, const GeodesicField& field,
                                std::uint64_t mesh_hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCategory::io, "cannot write geodesic cache ", path);
  const std::uint32_t magic = detail::kGeodesicCacheMagic;
  const std::uint32_t version = 1;
  const std::uint32_t n = std::uint32_t(field.D.rows());
  out.write(reinterpret_cast<const char*>(&magic), sizeof(magic));
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  out.write(reinterpret_cast<const char*>(&mesh_hash), sizeof(mesh_hash));
  out.write(reinterpret_cast<const char*>(&field.scale), sizeof(field.scale));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(field.D.data()),
            std::streamsize(sizeof(float)) * n * n);
  if (!out) fail(ErrorCategory::io, "write failed for geodesic cache ", path);
}

/// Loads a cached field if the file exists and its key matches `mesh_hash`.
/// Returns false on miss (absent or stale cache).
inline bool load_geodesic_cache(const std::string& path, std::uint64_t mesh_hash,
                                GeodesicField& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::uint32_t magic = 0, version = 0, n = 0;
  std::uint64_t hash = 0;
  double scale = 1.0;
  in.read(reinterpret_cast<char*>(&magic), sizeof(magic));
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&hash), sizeof(hash));
  in.read(reinterpret_cast<char*>(&scale), sizeof(scale));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!in || magic != detail::kGeodesicCacheMagic || version != 1 || hash != mesh_hash) {
    return false;
  }
  field.scale = scale;
  field.D.resize(n, n);
  in.read(reinterpret_cast<char*>(field.D.data()),
          std::streamsize(sizeof(float)) * n * n);
  return bool(in);
}

/// Computes the field, consulting/refreshing the cache file when given.
inline GeodesicField geodesic_field_cached(const TriMesh& rest, const std::string& cache_path,
                                           double scale = 1.0, int threads = 0) {
  const std::uint64_t hash = rest.content_hash();
  GeodesicField field;
  if (!cache_path.empty() && load_geodesic_cache(cache_path, hash, field)) {
    field.scale = scale;
    return field;
  }
  field = geodesic_field(rest, scale, threads);
  if (!cache_path.empty()) save_geodesic_cache(cache_path, field, hash);
  return field;
}

}  // namespace weft

#endif  // WEFT_GEODESIC_HPP_
