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

#include "weft/shapes.hpp"
#include "weft/spatial.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace weft;

TEST_CASE("closest point on triangle covers vertex, edge, and interior regions") {
  const Vec3 a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
  CHECK((closest_point_on_triangle({-1, -1, 0}, a, b, c) - a).norm() < 1e-15);
  CHECK((closest_point_on_triangle({2, 0.5, 0}, a, b, c) - b).norm() < 1e-12);
  CHECK((closest_point_on_triangle({0.5, -1, 3}, a, b, c) - Vec3(0.5, 0, 0)).norm() < 1e-15);
  CHECK((closest_point_on_triangle({0.2, 0.2, -2}, a, b, c) - Vec3(0.2, 0.2, 0)).norm() < 1e-15);
  // Diagonal edge region.
  const Vec3 q = closest_point_on_triangle({1, 1, 0}, a, b, c);
  CHECK((q - Vec3(0.5, 0.5, 0)).norm() < 1e-12);
}

TEST_CASE("BVH nearest matches brute force on random queries") {
  const TriMesh mesh = make_icosphere(2, 0.7, Vec3(0.2, -0.1, 0.4));
  const TriangleBvh bvh(mesh.vertices, mesh.faces);
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec3 p(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    const TriangleBvh::Hit hit = bvh.nearest(p);

    int best_face = -1;
    double best = 1e30;
    for (int f = 0; f < mesh.face_count(); ++f) {
      const Face& t = mesh.faces[f];
      const Vec3 q = closest_point_on_triangle(p, mesh.vertices[t[0]], mesh.vertices[t[1]],
                                               mesh.vertices[t[2]]);
      const double d = (q - p).norm();
      if (d < best) {
        best = d;
        best_face = f;
      }
    }
    CHECK(hit.distance == Catch::Approx(best).margin(1e-12));
    // Either the same face, or an exact tie.
    if (hit.face != best_face) {
      const Face& t = mesh.faces[hit.face];
      const Vec3 q = closest_point_on_triangle(p, mesh.vertices[t[0]], mesh.vertices[t[1]],
                                               mesh.vertices[t[2]]);
      CHECK((q - p).norm() == Catch::Approx(best).margin(1e-12));
    }
  }
}

TEST_CASE("BVH tie-break prefers the lowest face index") {
  // Two parallel triangles equidistant from the midpoint between them.
  const std::vector<Vec3> vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0},
                                      {0, 0, 2}, {1, 0, 2}, {0, 1, 2}};
  const std::vector<Face> faces = {{0, 1, 2}, {3, 4, 5}};
  const TriangleBvh bvh(vertices, faces);
  const auto hit = bvh.nearest(Vec3(0.25, 0.25, 1.0));
  CHECK(hit.face == 0);
  CHECK(hit.distance == Catch::Approx(1.0));
}

TEST_CASE("point above a single triangle returns that triangle") {
  const std::vector<Vec3> vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const std::vector<Face> faces = {{0, 1, 2}};
  const TriangleBvh bvh(vertices, faces);
  const auto hit = bvh.nearest(Vec3(1.0 / 3, 1.0 / 3, 0.5));
  CHECK(hit.face == 0);
  CHECK(hit.distance == Catch::Approx(0.5));
}

TEST_CASE("KD-tree nearest matches brute force") {
  Rng rng(5);
  std::vector<Vec3> points;
  for (int i = 0; i < 400; ++i) {
    points.emplace_back(rng.normal(), rng.normal(), rng.normal());
  }
  const PointKdTree tree(points);
  for (int trial = 0; trial < 300; ++trial) {
    const Vec3 p(rng.normal(), rng.normal(), rng.normal());
    const auto [index, d_sq] = tree.nearest(p);
    double best = 1e30;
    for (const Vec3& q : points) best = std::min(best, (q - p).squaredNorm());
    CHECK(d_sq == Catch::Approx(best).margin(1e-12));
  }
}
