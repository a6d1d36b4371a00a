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

#include "weft/collider.hpp"
#include "weft/shapes.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace weft;

namespace {

std::vector<Vec3> translated(const std::vector<Vec3>& positions, const Vec3& offset) {
  std::vector<Vec3> out = positions;
  for (Vec3& p : out) p += offset;
  return out;
}

}  // namespace

TEST_CASE("signed distance at the center of an icosphere is about -radius") {
  const TriMesh body = make_icosphere(3, 1.0);
  const ColliderFrame collider(body);
  const SdfQuery q = signed_distance(collider, Vec3::Zero());
  CHECK(collider.winding_number(Vec3::Zero()) == Catch::Approx(1.0).margin(1e-6));
  // Chord error: the mesh is inscribed, so |d| is slightly below the radius.
  CHECK(q.signed_distance < 0.0);
  CHECK(q.signed_distance == Catch::Approx(-1.0).margin(0.01));
}

TEST_CASE("signed distance outside the sphere is about +1 at distance 2") {
  const TriMesh body = make_icosphere(3, 1.0);
  const ColliderFrame collider(body);
  const Vec3 p(0, 2.0, 0);
  const SdfQuery q = signed_distance(collider, p);

  double brute = 1e30;
  for (int f = 0; f < body.face_count(); ++f) {
    const Face& t = body.faces[f];
    brute = std::min(brute, (closest_point_on_triangle(p, body.vertices[t[0]],
                                                       body.vertices[t[1]], body.vertices[t[2]]) -
                             p)
                                .norm());
  }
  CHECK(q.signed_distance == Catch::Approx(brute).margin(1e-12));
  CHECK(q.signed_distance == Catch::Approx(1.0).margin(0.01));
  CHECK(q.direction.norm() == Catch::Approx(1.0));
  CHECK(q.direction.dot(Vec3(0, -1, 0)) > 0.99);
}

TEST_CASE("point on a body vertex has zero distance and an incident nearest face") {
  const TriMesh body = make_icosphere(1, 0.5);
  const ColliderFrame collider(body);
  const SdfQuery q = signed_distance(collider, body.vertices[7]);
  CHECK(q.signed_distance == Catch::Approx(0.0).margin(1e-14));
  const Face& t = body.faces[q.nearest_face];
  CHECK((t[0] == 7 || t[1] == 7 || t[2] == 7));
}

TEST_CASE("winding sign agrees with the analytic inside test on random points") {
  const TriMesh body = make_icosphere(3, 0.8, Vec3(0.1, 0.2, -0.3));
  const ColliderFrame collider(body);
  Rng rng(41);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 p = Vec3(0.1, 0.2, -0.3) +
                   1.6 * Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double r = (p - Vec3(0.1, 0.2, -0.3)).norm();
    const SdfQuery q = signed_distance(collider, p);
    // Skip the shell where the faceted mesh and the analytic sphere disagree.
    if (std::abs(r - 0.8) < 0.02) continue;
    CHECK((q.signed_distance < 0) == (r < 0.8));
    ++checked;
  }
  CHECK(checked > 800);
}

TEST_CASE("nearest_body_face matches brute force on 500 random points") {
  const TriMesh body = make_capsule(0.3, 0.4, 12, 3);
  const ColliderFrame collider(body);
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const Vec3 p(rng.uniform(-1, 1), rng.uniform(-1.2, 1.2), rng.uniform(-1, 1));
    const auto hit = nearest_body_face(collider, p);
    double best = 1e30;
    for (int f = 0; f < body.face_count(); ++f) {
      const Face& t = body.faces[f];
      best = std::min(best, (closest_point_on_triangle(p, body.vertices[t[0]],
                                                       body.vertices[t[1]],
                                                       body.vertices[t[2]]) -
                             p)
                                .norm());
    }
    CHECK(hit.distance == Catch::Approx(best).margin(1e-12));
  }
}

TEST_CASE("collider motion feature for a static body is identity and zero velocity") {
  const TriMesh body = make_icosphere(1, 0.5);
  const ColliderFrame frame_t(body);
  const ColliderFrame frame_t1(body, body.vertices);
  const auto feature = collider_motion_feature(frame_t, frame_t1, 5);
  Mat3 gradient;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) gradient(r, c) = feature[3 * r + c];
  }
  CHECK((gradient - Mat3::Identity()).norm() < 1e-12);
  CHECK(feature.tail<3>().norm() < 1e-15);
}

TEST_CASE("collider motion feature of a translating body keeps an identity gradient") {
  const TriMesh body = make_icosphere(1, 0.5);
  const ColliderFrame frame_t(body);
  const ColliderFrame frame_t1(body, translated(body.vertices, Vec3(0.1, 0, 0)));
  const auto feature = collider_motion_feature(frame_t, frame_t1, 2);
  Mat3 gradient;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) gradient(r, c) = feature[3 * r + c];
  }
  CHECK((gradient - Mat3::Identity()).norm() < 1e-12);
  CHECK((feature.tail<3>() - Vec3(0.1, 0, 0)).norm() < 1e-12);
}

TEST_CASE("collider motion feature of a rotating body carries R and the centroid sweep") {
  const TriMesh body = make_icosphere(1, 0.5);
  const Mat3 rot = Eigen::AngleAxisd(0.4, Vec3(1, 2, 0.5).normalized()).toRotationMatrix();
  std::vector<Vec3> rotated = body.vertices;
  for (Vec3& p : rotated) p = rot * p;
  const ColliderFrame frame_t(body);
  const ColliderFrame frame_t1(body, rotated);
  const int face = 9;
  const auto feature = collider_motion_feature(frame_t, frame_t1, face);
  Mat3 gradient;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) gradient(r, c) = feature[3 * r + c];
  }
  CHECK((gradient - rot).norm() < 1e-10);
  const Vec3 c = frame_t.face_centroid(face);
  CHECK((feature.tail<3>() - (rot * c - c)).norm() < 1e-12);
}
