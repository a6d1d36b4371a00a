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

#ifndef WEFT_POISSON_HPP_
#define WEFT_POISSON_HPP_

#include "weft/mesh.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <memory>
#include <vector>

namespace weft {

/// Least-squares reconstruction of vertex positions from a target
/// deformation-gradient field.
///
/// Fourth-vertex formulation: each face gains an auxiliary unknown
/// v4 = v_j + n so that Phi_i(V) = Q_i(V) Q_i^{-rest} is linear in the
/// unknowns. The three coordinates decouple, so one scalar system is
/// factorized once per garment and solved with three right-hand sides per
/// frame. The translation nullspace (one per connected component) is removed
/// by a mean-position pin row per component; since the gradient rows are
/// translation invariant, the pin never trades off against them and the
/// minimizer of the area-weighted Frobenius objective is recovered exactly.
class PoissonSystem {
 public:
  explicit PoissonSystem(const TriMesh& rest) : rest_(&rest) {
    const int nv = rest.vertex_count();
    const int nf = rest.face_count();
    const int unknowns = nv + nf;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(std::size_t(nf) * 12 + std::size_t(nv));
    row_weight_.resize(3 * nf);
    for (int f = 0; f < nf; ++f) {
      const Face& t = rest.faces[f];
      const Mat3& basis = rest.rest_frame_inv[f];
      const double w = std::sqrt(rest.area[f]);
      for (int c = 0; c < 3; ++c) {
        const int row = 3 * f + c;
        row_weight_[row] = w;
        triplets.emplace_back(row, t[1], w * basis(0, c));
        triplets.emplace_back(row, t[2], w * basis(1, c));
        triplets.emplace_back(row, nv + f, w * basis(2, c));
        triplets.emplace_back(row, t[0], -w * (basis(0, c) + basis(1, c) + basis(2, c)));
      }
    }

    // One pin row per vertex component to make the normal matrix definite.
    component_vertex_count_.assign(rest.component_count, 0);
    for (int v = 0; v < nv; ++v) component_vertex_count_[rest.vertex_component[v]]++;
    pin_target_.assign(rest.component_count, Vec3::Zero());
    for (int v = 0; v < nv; ++v) {
      const int comp = rest.vertex_component[v];
      const double w = 1.0 / double(component_vertex_count_[comp]);
      triplets.emplace_back(3 * nf + comp, v, w);
      pin_target_[comp] += w * rest.vertices[v];
    }

    matrix_.resize(3 * nf + rest.component_count, unknowns);
    matrix_.setFromTriplets(triplets.begin(), triplets.end());
    matrix_.makeCompressed();

    const Eigen::SparseMatrix<double> normal = matrix_.transpose() * matrix_;
    factor_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
    factor_->compute(normal);
    if (factor_->info() != Eigen::Success) {
      int offending = 0;
      for (int comp = 0; comp < rest.component_count; ++comp) {
        if (component_vertex_count_[comp] < 3) offending = comp;
      }
      fail(ErrorCategory::numeric,
           "Poisson factorization failed (rank deficiency near component ",
           offending, ")");
    }
  }

  int unknown_count() const { return rest_->vertex_count() + rest_->face_count(); }

  /// Minimizes sum_i s_i ||Phi_i(V) - target_phi_i||_F^2 over vertex and
  /// auxiliary positions, then translates so the mean face centroid equals
  /// `anchor`. Auxiliary unknowns are dropped from the result.
  std::vector<Vec3> solve(const std::vector<Mat3>& target_phi, const Vec3& anchor) const {
    const TriMesh& rest = *rest_;
    const int nv = rest.vertex_count();
    const Eigen::MatrixXd solution = factor_->solve(matrix_.transpose() * assemble_rhs(target_phi));
    std::vector<Vec3> positions(nv);
    for (int v = 0; v < nv; ++v) positions[v] = solution.row(v).transpose();
    const Vec3 shift = anchor - mean_centroid(rest, positions);
    for (Vec3& p : positions) p += shift;
    return positions;
  }

  /// Area-weighted Frobenius objective at given positions, with Phi computed
  /// from the actual local frames.
  double objective(const std::vector<Vec3>& positions,
                   const std::vector<Mat3>& target_phi) const {
    const TriMesh& rest = *rest_;
    double total = 0.0;
    for (int f = 0; f < rest.face_count(); ++f) {
      const Mat3 phi = local_frame(rest, f, positions) * rest.rest_frame_inv[f];
      total += rest.area[f] * (phi - target_phi[f]).squaredNorm();
    }
    return total;
  }

  /// Full solution vector (vertices then auxiliaries, one column per
  /// coordinate) before the anchor translation. Exposed for optimality tests.
  Eigen::MatrixXd solve_full(const std::vector<Mat3>& target_phi) const {
    Eigen::MatrixXd rhs = assemble_rhs(target_phi);
    return factor_->solve(matrix_.transpose() * rhs);
  }

  /// Linear least-squares objective ||A u - b||^2 over the full unknowns.
  double linear_objective(const Eigen::MatrixXd& unknowns,
                          const std::vector<Mat3>& target_phi) const {
    return (matrix_ * unknowns - assemble_rhs(target_phi)).squaredNorm();
  }

 private:
  Eigen::MatrixXd assemble_rhs(const std::vector<Mat3>& target_phi) const {
    const TriMesh& rest = *rest_;
    const int nf = rest.face_count();
    if (int(target_phi.size()) != nf) {
      fail(ErrorCategory::data, "target field has ", target_phi.size(),
           " gradients for ", nf, " faces");
    }
    Eigen::MatrixXd rhs(matrix_.rows(), 3);
    for (int f = 0; f < nf; ++f) {
      const Mat3& phi = target_phi[f];
      if (!phi.allFinite()) {
        fail(ErrorCategory::numeric, "non-finite target gradient at face ", f);
      }
      for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < 3; ++r) rhs(3 * f + c, r) = row_weight_[3 * f + c] * phi(r, c);
      }
    }
    for (int comp = 0; comp < rest.component_count; ++comp) {
      rhs.row(3 * nf + comp) = pin_target_[comp].transpose();
    }
    return rhs;
  }

  const TriMesh* rest_;
  Eigen::SparseMatrix<double> matrix_;
  std::vector<double> row_weight_;
  std::vector<int> component_vertex_count_;
  std::vector<Vec3> pin_target_;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> factor_;
};

inline PoissonSystem build_system(const TriMesh& rest) { return PoissonSystem(rest); }

}  // namespace weft

#endif  // WEFT_POISSON_HPP_
