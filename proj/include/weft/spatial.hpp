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

#ifndef WEFT_SPATIAL_HPP_
#define WEFT_SPATIAL_HPP_

#include "weft/mesh.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace weft {

/// Closest point on triangle (a, b, c) to p. Ericson's region test.
inline Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                      const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return a + v * ab;
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return a + w * ac;
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + w * (c - b);
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return a + ab * v + ac * w;
}

/// Barycentric coordinates of point q (assumed on the triangle's plane).
inline Vec3 barycentric(const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 v0 = b - a, v1 = c - a, v2 = q - a;
  const double d00 = v0.dot(v0);
  const double d01 = v0.dot(v1);
  const double d11 = v1.dot(v1);
  const double d20 = v2.dot(v0);
  const double d21 = v2.dot(v1);
  const double denom = d00 * d11 - d01 * d01;
  Vec3 bary;
  bary.y() = (d11 * d20 - d01 * d21) / denom;
  bary.z() = (d00 * d21 - d01 * d20) / denom;
  bary.x() = 1.0 - bary.y() - bary.z();
  return bary;
}

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void expand(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void expand(const Aabb& other) {
    lo = lo.cwiseMin(other.lo);
    hi = hi.cwiseMax(other.hi);
  }
  double sq_distance(const Vec3& p) const {
    const Vec3 d = (lo - p).cwiseMax(p - hi).cwiseMax(0.0);
    return d.squaredNorm();
  }
};

/// Binary AABB tree over mesh faces for nearest point-triangle queries.
class TriangleBvh {
 public:
  struct Hit {
    int face = -1;
    Vec3 point = Vec3::Zero();
    double distance = std::numeric_limits<double>::infinity();
  };

  TriangleBvh() = default;

  // Owns copies of the geometry so queries stay valid if the caller's
  // buffers move.
  TriangleBvh(std::vector<Vec3> positions, std::vector<Face> faces)
      : positions_(std::move(positions)), faces_(std::move(faces)) {
    const int nf = int(faces_.size());
    order_.resize(nf);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<Aabb> face_boxes(nf);
    std::vector<Vec3> face_centers(nf);
    for (int f = 0; f < nf; ++f) {
      for (int k = 0; k < 3; ++k) face_boxes[f].expand(positions_[faces_[f][k]]);
      face_centers[f] = 0.5 * (face_boxes[f].lo + face_boxes[f].hi);
    }
    nodes_.reserve(2 * nf);
    build(0, nf, face_boxes, face_centers);
  }

  /// Globally nearest face; exact ties prefer the lowest face index.
  Hit nearest(const Vec3& p) const {
    Hit best;
    if (nodes_.empty()) return best;
    visit(0, p, best);
    return best;
  }

 private:
  struct Node {
    Aabb box;
    int left = -1;    // child index, or -1 at leaves
    int right = -1;
    int begin = 0;    // leaf face range in order_
    int end = 0;
  };

  static constexpr int kLeafSize = 4;

  int build(int begin, int end, const std::vector<Aabb>& face_boxes,
            const std::vector<Vec3>& face_centers) {
    const int node_index = int(nodes_.size());
    nodes_.emplace_back();
    Aabb box;
    for (int i = begin; i < end; ++i) box.expand(face_boxes[order_[i]]);
    nodes_[node_index].box = box;
    if (end - begin <= kLeafSize) {
      // Sorting leaf faces keeps the lowest-index tie rule cheap to honor.
      std::sort(order_.begin() + begin, order_.begin() + end);
      nodes_[node_index].begin = begin;
      nodes_[node_index].end = end;
      return node_index;
    }
    const Vec3 extent = box.hi - box.lo;
    int axis = 0;
    if (extent.y() > extent.x()) axis = 1;
    if (extent.z() > extent[axis]) axis = 2;
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) {
                       if (face_centers[a][axis] != face_centers[b][axis]) {
                         return face_centers[a][axis] < face_centers[b][axis];
                       }
                       return a < b;
                     });
    const int left = build(begin, mid, face_boxes, face_centers);
    const int right = build(mid, end, face_boxes, face_centers);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
  }

  void visit(int node_index, const Vec3& p, Hit& best) const {
    const Node& node = nodes_[node_index];
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int f = order_[i];
        const Face& t = faces_[f];
        const Vec3 q = closest_point_on_triangle(p, positions_[t[0]],
                                                 positions_[t[1]], positions_[t[2]]);
        const double d = (q - p).norm();
        if (d < best.distance || (d == best.distance && f < best.face)) {
          best.distance = d;
          best.face = f;
          best.point = q;
        }
      }
      return;
    }
    const double dl = nodes_[node.left].box.sq_distance(p);
    const double dr = nodes_[node.right].box.sq_distance(p);
    const int first = dl <= dr ? node.left : node.right;
    const int second = dl <= dr ? node.right : node.left;
    const double dfirst = std::min(dl, dr);
    const double dsecond = std::max(dl, dr);
    if (dfirst <= best.distance * best.distance) visit(first, p, best);
    if (dsecond <= best.distance * best.distance) visit(second, p, best);
  }

  std::vector<Vec3> positions_;
  std::vector<Face> faces_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

/// Median-split KD-tree over a point set (Chamfer distance sampling).
class PointKdTree {
 public:
  PointKdTree() = default;

  explicit PointKdTree(std::vector<Vec3> points) : points_(std::move(points)) {
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0);
    if (!points_.empty()) root_ = build(0, int(points_.size()));
  }

  /// Index of the nearest stored point and its squared distance.
  std::pair<int, double> nearest(const Vec3& p) const {
    int best = -1;
    double best_sq = std::numeric_limits<double>::infinity();
    if (root_ >= 0) visit(root_, p, best, best_sq);
    return {best, best_sq};
  }

  const std::vector<Vec3>& points() const { return points_; }

 private:
  struct Node {
    int point = -1;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build(int begin, int end) {
    if (begin >= end) return -1;
    Aabb box;
    for (int i = begin; i < end; ++i) box.expand(points_[order_[i]]);
    const Vec3 extent = box.hi - box.lo;
    int axis = 0;
    if (extent.y() > extent.x()) axis = 1;
    if (extent.z() > extent[axis]) axis = 2;
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return points_[a][axis] < points_[b][axis]; });
    const int node_index = int(nodes_.size());
    nodes_.push_back({order_[mid], axis, -1, -1});
    const int left = build(begin, mid);
    const int right = build(mid + 1, end);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
  }

  void visit(int node_index, const Vec3& p, int& best, double& best_sq) const {
    const Node& node = nodes_[node_index];
    const Vec3& q = points_[node.point];
    const double d_sq = (q - p).squaredNorm();
    if (d_sq < best_sq) {
      best_sq = d_sq;
      best = node.point;
    }
    const double delta = p[node.axis] - q[node.axis];
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    if (near >= 0) visit(near, p, best, best_sq);
    if (far >= 0 && delta * delta < best_sq) visit(far, p, best, best_sq);
  }

  std::vector<Vec3> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace weft

#endif  // WEFT_SPATIAL_HPP_
