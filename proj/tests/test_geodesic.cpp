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

#include "weft/geodesic.hpp"
#include "weft/shapes.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

using namespace weft;

TEST_CASE("two adjacent triangles: D equals the centroid distance") {
  const TriMesh mesh = build_mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}},
                                  {{0, 1, 2}, {0, 2, 3}});
  const GeodesicField field = geodesic_field(mesh);
  const Vec3 c0 = mesh.centroid(0);
  const Vec3 c1 = mesh.centroid(1);
  CHECK(field.D(0, 1) == Catch::Approx((c1 - c0).norm()).epsilon(1e-6));
  CHECK(field.D(0, 0) == 0.0f);
  CHECK(field.D(1, 0) == field.D(0, 1));
}

TEST_CASE("geodesic field is symmetric with zero diagonal and obeys the triangle inequality") {
  const TriMesh mesh = make_tube(12, 6, 0.3, 0.35, 0.6);
  const GeodesicField field = geodesic_field(mesh);
  const int nf = mesh.face_count();
  for (int i = 0; i < nf; ++i) {
    CHECK(field.D(i, i) == 0.0f);
    for (int j = i + 1; j < nf; ++j) CHECK(field.D(i, j) == field.D(j, i));
  }
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int a = int(rng.uniform_index(nf));
    const int b = int(rng.uniform_index(nf));
    const int c = int(rng.uniform_index(nf));
    CHECK(double(field.D(a, c)) <= double(field.D(a, b)) + double(field.D(b, c)) + 1e-5);
  }
}

TEST_CASE("strip geodesics stay within a bounded overestimate of the planar distance") {
  // A flat 4-row strip: the exact geodesic between two face centroids is the
  // straight planar segment; the dual-graph path may overestimate it.
  const TriMesh mesh = make_grid(17, 5, 1.6, 0.4);
  const GeodesicField field = geodesic_field(mesh);
  const int nf = mesh.face_count();
  int samples = 0;
  for (int i = 0; i < nf; i += 7) {
    for (int j = 0; j < nf; j += 5) {
      if (i == j) continue;
      const double exact = (mesh.centroid(j) - mesh.centroid(i)).norm();
      const double dual = double(field.D(i, j));
      CHECK(dual >= exact - 1e-6);
      CHECK(dual <= 1.3 * exact + 1e-6);
      ++samples;
    }
  }
  CHECK(samples > 100);
}

TEST_CASE("disconnected components yield +infinity distances") {
  const TriMesh mesh = make_disjoint_panels(4, 4, 0.5, 0.5, 0.01);
  const GeodesicField field = geodesic_field(mesh);
  const int half = mesh.face_count() / 2;
  CHECK(std::isinf(field.D(0, half)));
  CHECK(std::isinf(field.D(half, 0)));
  CHECK(!std::isinf(field.D(0, half - 1)));
}

TEST_CASE("all-pairs result is identical across thread counts") {
  const TriMesh mesh = make_tube(10, 5, 0.3, 0.3, 0.5);
  const GeodesicField a = geodesic_field(mesh, 1.0, 1);
  const GeodesicField b = geodesic_field(mesh, 1.0, 4);
  CHECK(a.D == b.D);
}

TEST_CASE("geodesic cache round trips and detects stale keys") {
  const TriMesh mesh = make_grid(5, 4, 0.8, 0.6);
  const GeodesicField field = geodesic_field(mesh, 2.0);
  const std::string path = "test_geodesic.cache";
  save_geodesic_cache(path, field, mesh.content_hash());

  GeodesicField loaded;
  REQUIRE(load_geodesic_cache(path, mesh.content_hash(), loaded));
  CHECK(loaded.D == field.D);
  CHECK(loaded.scale == field.scale);

  GeodesicField miss;
  CHECK(!load_geodesic_cache(path, mesh.content_hash() + 1, miss));
  std::remove(path.c_str());
}

TEST_CASE("remeshed garment geodesics agree within 2x mean edge length") {
  const TriMesh coarse = make_tube(12, 6, 0.3, 0.35, 0.6);
  const TriMesh fine = make_tube(24, 12, 0.3, 0.35, 0.6);
  const GeodesicField field_c = geodesic_field(coarse);
  const GeodesicField field_f = geodesic_field(fine);

  double edge_sum = 0.0;
  int edge_count = 0;
  for (int f = 0; f < coarse.face_count(); ++f) {
    const Face& t = coarse.faces[f];
    for (int k = 0; k < 3; ++k) {
      edge_sum += (coarse.vertices[t[k]] - coarse.vertices[t[(k + 1) % 3]]).norm();
      ++edge_count;
    }
  }
  const double mean_edge = edge_sum / edge_count;

  // Match coarse faces to the nearest fine face by centroid.
  auto nearest_fine = [&](int cf) {
    const Vec3 c = coarse.centroid(cf);
    int best = 0;
    double best_d = 1e30;
    for (int f = 0; f < fine.face_count(); ++f) {
      const double d = (fine.centroid(f) - c).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = f;
      }
    }
    return best;
  };
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int a = int(rng.uniform_index(coarse.face_count()));
    const int b = int(rng.uniform_index(coarse.face_count()));
    const double dc = double(field_c.D(a, b));
    const double df = double(field_f.D(nearest_fine(a), nearest_fine(b)));
    CHECK(std::abs(dc - df) <= 2.0 * mean_edge);
  }
}
