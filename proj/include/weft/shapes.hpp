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

#ifndef WEFT_SHAPES_HPP_
#define WEFT_SHAPES_HPP_

#include "weft/mesh.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace weft {

/// Regular grid in the XZ plane at y = 0, centered at the origin, normals +y.
/// nx, nz count vertices per side (so faces = 2 (nx-1)(nz-1)).
inline TriMesh make_grid(int nx, int nz, double size_x, double size_z) {
  if (nx < 2 || nz < 2) fail(ErrorCategory::usage, "grid needs nx, nz >= 2");
  std::vector<Vec3> vertices;
  vertices.reserve(std::size_t(nx) * nz);
  for (int iz = 0; iz < nz; ++iz) {
    for (int ix = 0; ix < nx; ++ix) {
      const double x = size_x * (double(ix) / (nx - 1) - 0.5);
      const double z = size_z * (double(iz) / (nz - 1) - 0.5);
      vertices.emplace_back(x, 0.0, z);
    }
  }
  auto at = [nx](int ix, int iz) { return iz * nx + ix; };
  std::vector<Face> faces;
  for (int iz = 0; iz + 1 < nz; ++iz) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      // CCW seen from +y (note -z is "up" in the XZ plane seen from +y).
      faces.push_back({at(ix, iz), at(ix, iz + 1), at(ix + 1, iz)});
      faces.push_back({at(ix + 1, iz), at(ix, iz + 1), at(ix + 1, iz + 1)});
    }
  }
  return build_mesh(std::move(vertices), std::move(faces));
}

/// Open tube (skirt) around the Y axis from y = 0 down to y = -height, with
/// linearly interpolated radius. When `cut_seam` is set, the closing seam is
/// split: the seam vertex column is duplicated so faces on either side are
/// spatially coincident but geodesically far apart.
inline TriMesh make_tube(int n_around, int n_rings, double radius_top,
                         double radius_bottom, double height, bool cut_seam = false) {
  if (n_around < 3 || n_rings < 2) {
    fail(ErrorCategory::usage, "tube needs n_around >= 3, n_rings >= 2");
  }
  const int columns = cut_seam ? n_around + 1 : n_around;
  std::vector<Vec3> vertices;
  vertices.reserve(std::size_t(columns) * n_rings);
  for (int r = 0; r < n_rings; ++r) {
    const double v = double(r) / (n_rings - 1);
    const double radius = radius_top + v * (radius_bottom - radius_top);
    const double y = -height * v;
    for (int c = 0; c < columns; ++c) {
      const double angle = 2.0 * M_PI * double(c % n_around) / n_around;
      vertices.emplace_back(radius * std::cos(angle), y, radius * std::sin(angle));
    }
  }
  auto at = [columns](int c, int r) { return r * columns + c; };
  std::vector<Face> faces;
  for (int r = 0; r + 1 < n_rings; ++r) {
    for (int c = 0; c < n_around; ++c) {
      const int c1 = cut_seam ? c + 1 : (c + 1) % n_around;
      // Outward-facing winding.
      faces.push_back({at(c, r), at(c1, r), at(c, r + 1)});
      faces.push_back({at(c1, r), at(c1, r + 1), at(c, r + 1)});
    }
  }
  return build_mesh(std::move(vertices), std::move(faces));
}

/// Two separate rectangular panels in one mesh (front at z = +gap/2, back at
/// z = -gap/2). The components are disconnected; geodesic distances across
/// them are +infinity.
inline TriMesh make_disjoint_panels(int nx, int ny, double width, double height,
                                    double gap) {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  for (int panel = 0; panel < 2; ++panel) {
    const double z = (panel == 0 ? 0.5 : -0.5) * gap;
    const int base = int(vertices.size());
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const double x = width * (double(ix) / (nx - 1) - 0.5);
        const double y = -height * double(iy) / (ny - 1);
        vertices.emplace_back(x, y, z);
      }
    }
    auto at = [&](int ix, int iy) { return base + iy * nx + ix; };
    for (int iy = 0; iy + 1 < ny; ++iy) {
      for (int ix = 0; ix + 1 < nx; ++ix) {
        if (panel == 0) {
          faces.push_back({at(ix, iy), at(ix, iy + 1), at(ix + 1, iy)});
          faces.push_back({at(ix + 1, iy), at(ix, iy + 1), at(ix + 1, iy + 1)});
        } else {
          // Mirrored winding keeps normals outward (-z side).
          faces.push_back({at(ix, iy), at(ix + 1, iy), at(ix, iy + 1)});
          faces.push_back({at(ix + 1, iy), at(ix + 1, iy + 1), at(ix, iy + 1)});
        }
      }
    }
  }
  return build_mesh(std::move(vertices), std::move(faces));
}

/// Icosphere: subdivided icosahedron projected onto the sphere. Watertight,
/// outward winding. Faces = 20 * 4^subdivisions.
inline TriMesh make_icosphere(int subdivisions, double radius, const Vec3& center = Vec3::Zero()) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> vertices = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& v : vertices) v.normalize();
  std::vector<Face> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int pass = 0; pass < subdivisions; ++pass) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int index = int(vertices.size());
      vertices.push_back((vertices[a] + vertices[b]).normalized());
      midpoint[key] = index;
      return index;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const Face& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  for (Vec3& v : vertices) v = center + radius * v;
  return build_mesh(std::move(vertices), std::move(faces));
}

/// Watertight capsule around the Y axis: cylinder of given half-length capped
/// by hemispheres, radius r. Centered at the origin.
inline TriMesh make_capsule(double radius, double half_length, int segments = 16,
                            int rings = 4) {
  if (segments < 3 || rings < 1) fail(ErrorCategory::usage, "bad capsule resolution");
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  // Latitude rows from the north pole (+y) to the south pole (-y); the
  // cylinder body sits between the two equatorial rows.
  std::vector<std::vector<int>> rows;
  vertices.emplace_back(0.0, half_length + radius, 0.0);  // north pole
  const int north_pole = 0;
  for (int half = 0; half < 2; ++half) {
    const double y_base = half == 0 ? half_length : -half_length;
    // Upper hemisphere rows end at its equator (y = +half_length); the lower
    // ones start at theirs (y = -half_length), leaving the cylinder wall as a
    // single exact quad strip between them.
    for (int r = half == 0 ? 1 : 0; r <= rings - (half == 0 ? 0 : 1); ++r) {
      const double lat =
          half == 0 ? (M_PI / 2) * (1.0 - double(r) / rings) : -(M_PI / 2) * (double(r) / rings);
      std::vector<int> row;
      for (int s = 0; s < segments; ++s) {
        const double lon = 2.0 * M_PI * s / segments;
        vertices.emplace_back(radius * std::cos(lat) * std::cos(lon),
                              y_base + radius * std::sin(lat),
                              radius * std::cos(lat) * std::sin(lon));
        row.push_back(int(vertices.size()) - 1);
      }
      rows.push_back(row);
    }
  }
  vertices.emplace_back(0.0, -half_length - radius, 0.0);  // south pole
  const int south_pole = int(vertices.size()) - 1;

  auto quad = [&](int a, int b, int c, int d) {
    faces.push_back({a, b, c});
    faces.push_back({a, c, d});
  };
  for (int s = 0; s < segments; ++s) {
    const int s1 = (s + 1) % segments;
    faces.push_back({north_pole, rows.front()[s1], rows.front()[s]});
  }
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
    for (int s = 0; s < segments; ++s) {
      const int s1 = (s + 1) % segments;
      quad(rows[r][s], rows[r][s1], rows[r + 1][s1], rows[r + 1][s]);
    }
  }
  for (int s = 0; s < segments; ++s) {
    const int s1 = (s + 1) % segments;
    faces.push_back({south_pole, rows.back()[s], rows.back()[s1]});
  }
  return build_mesh(std::move(vertices), std::move(faces));
}

}  // namespace weft

#endif  // WEFT_SHAPES_HPP_
