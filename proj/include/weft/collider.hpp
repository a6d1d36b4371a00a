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

#ifndef WEFT_COLLIDER_HPP_
#define WEFT_COLLIDER_HPP_

#include "weft/mesh.hpp"
#include "weft/spatial.hpp"

#include <memory>
#include <vector>

namespace weft {

/// Signed distance query result. d < 0 inside the body; `direction` points
/// from the query point toward the nearest body point (zero on the surface).
struct SdfQuery {
  double signed_distance = 0.0;
  Vec3 direction = Vec3::Zero();
  int nearest_face = -1;
  Vec3 nearest_point = Vec3::Zero();
};

/// One time step of the collider: body topology + positions, a BVH for
/// nearest-face queries, and per-vertex outward normals. Immutable after
/// construction; queries are read-only and freely concurrent.
class ColliderFrame {
 public:
  ColliderFrame(const TriMesh& body_topology, std::vector<Vec3> positions)
      : topology_(&body_topology), positions_(std::move(positions)) {
    if (int(positions_.size()) != body_topology.vertex_count()) {
      fail(ErrorCategory::data, "collider frame has ", positions_.size(),
           " positions for ", body_topology.vertex_count(), " body vertices");
    }
    bvh_ = std::make_shared<TriangleBvh>(positions_, body_topology.faces);
    compute_vertex_normals();
  }

  /// Convenience constructor for the body at its reference positions.
  explicit ColliderFrame(const TriMesh& body)
      : ColliderFrame(body, body.vertices) {}

  const TriMesh& topology() const { return *topology_; }
  const std::vector<Vec3>& positions() const { return positions_; }
  const std::vector<Vec3>& vertex_normals() const { return vertex_normals_; }

  Vec3 face_centroid(int f) const {
    const Face& t = topology_->faces[f];
    return (positions_[t[0]] + positions_[t[1]] + positions_[t[2]]) / 3.0;
  }

  Mat3 face_frame(int f) const { return local_frame(*topology_, f, positions_); }

  /// Generalized winding number at p: ~1 inside, ~0 outside a watertight body.
  double winding_number(const Vec3& p) const {
    // Solid-angle sum (van Oosterom & Strackee), exact per triangle.
    double total = 0.0;
    for (const Face& t : topology_->faces) {
      const Vec3 a = positions_[t[0]] - p;
      const Vec3 b = positions_[t[1]] - p;
      const Vec3 c = positions_[t[2]] - p;
      const double la = a.norm(), lb = b.norm(), lc = c.norm();
      const double numerator = a.dot(b.cross(c));
      const double denominator =
          la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
      total += 2.0 * std::atan2(numerator, denominator);
    }
    return total / (4.0 * M_PI);
  }

  const TriangleBvh& bvh() const { return *bvh_; }

 private:
  void compute_vertex_normals() {
    vertex_normals_.assign(positions_.size(), Vec3::Zero());
    for (const Face& t : topology_->faces) {
      // Area-weighted accumulation (cross product carries the area factor).
      const Vec3 an =
          (positions_[t[1]] - positions_[t[0]]).cross(positions_[t[2]] - positions_[t[0]]);
      for (int k = 0; k < 3; ++k) vertex_normals_[t[k]] += an;
    }
    for (Vec3& n : vertex_normals_) {
      const double len = n.norm();
      if (len > 0.0) n /= len;
    }
  }

  const TriMesh* topology_;
  std::vector<Vec3> positions_;
  std::vector<Vec3> vertex_normals_;
  std::shared_ptr<TriangleBvh> bvh_;
};

/// Nearest body face to `point` under Euclidean point-triangle distance.
/// Ties resolve to the lowest face index.
inline TriangleBvh::Hit nearest_body_face(const ColliderFrame& collider, const Vec3& point) {
  return collider.bvh().nearest(point);
}

/// Signed distance with winding-number sign: negative iff the generalized
/// winding number at the point is >= 0.5.
inline SdfQuery signed_distance(const ColliderFrame& collider, const Vec3& point) {
  const TriangleBvh::Hit hit = collider.bvh().nearest(point);
  SdfQuery query;
  query.nearest_face = hit.face;
  query.nearest_point = hit.point;
  const double sign = collider.winding_number(point) >= 0.5 ? -1.0 : 1.0;
  query.signed_distance = sign * hit.distance;
  if (hit.distance > 0.0) {
    query.direction = (hit.point - point) / hit.distance;
  }
  return query;
}

/// Collider deformation feature of one body face between consecutive frames:
/// the relative deformation gradient (9) followed by the centroid velocity (3).
inline Eigen::Matrix<double, 12, 1> collider_motion_feature(const ColliderFrame& collider_t,
                                                            const ColliderFrame& collider_t1,
                                                            int face_index) {
  if (&collider_t.topology() != &collider_t1.topology() &&
      collider_t.topology().face_count() != collider_t1.topology().face_count()) {
    fail(ErrorCategory::data, "collider frames do not share a triangulation");
  }
  const Mat3 frame_t = collider_t.face_frame(face_index);
  const Mat3 frame_t1 = collider_t1.face_frame(face_index);
  const Mat3 rel = frame_t1 * frame_t.inverse();
  Eigen::Matrix<double, 12, 1> feature;
  // Row-major flattening of the 3x3 gradient.
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) feature[3 * r + c] = rel(r, c);
  }
  feature.tail<3>() = collider_t1.face_centroid(face_index) - collider_t.face_centroid(face_index);
  return feature;
}

}  // namespace weft

#endif  // WEFT_COLLIDER_HPP_
