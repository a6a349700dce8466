/*
  Copyright (c) the slfact contributors.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

// Top-level factoring driver: radius selection, dilation splitting
// F = F_r * G^-1, dispatch to the Euclidean and near-identity routes, and
// verification of factor words.

#ifndef SLFACT_PIPELINE_HPP
#define SLFACT_PIPELINE_HPP

#include <cstddef>
#include <optional>
#include <utility>

#include "slfact/elementary.hpp"
#include "slfact/matrix.hpp"
#include "slfact/series.hpp"

namespace slfact {

enum class FactorMode {
    automatic,
    near_identity,
    euclid,
    dilation,
};

struct FactorRequest {
    AlgMatrix matrix;
    FactorMode mode = FactorMode::automatic;
    double tol = 1e-8;
    std::optional<double> radius;  // in (0,1) when present
};

struct VerificationReport {
    double residual = 0.0;
    double tol = 0.0;
    bool passed = false;
    std::size_t factor_count = 0;
    std::size_t normal_form_blocks = 0;
};

/// Smallest radius on the grid {1 - 2^-m, m = 1..60} whose summed dilation
/// gap bound is at most eta. The entry tails alone must leave room
/// (eta > 2 * tail sum), otherwise Unreachable.
double choose_radius(const AlgMatrix& F, double eta);

/// Computes F_r (entrywise dilation) and G = I + F^-1 (F_r - F) with a
/// certified inverse, so F * G = F_r within the enclosure and F = F_r * G^-1.
/// Throws InverseUnavailable when no certified inverse of F exists.
std::pair<AlgMatrix, AlgMatrix> split_dilation(const AlgMatrix& F, double r,
                                               double tol);

/// Dispatches on mode (see FactorMode); automatic picks the Euclidean route
/// for tail-free univariate input, the near-identity route within distance
/// 1/2 of I, the dilation route for univariate input with tails, and refuses
/// the rest as Unsupported. The residual bound is certified by multiplying
/// the factors back out.
Factorization factor(const FactorRequest& req);

/// Residual of the factor word against F, pass/fail at tol, and the block
/// count of the merged normal form.
VerificationReport verify(const AlgMatrix& F, const Factorization& fac, double tol);

/// [[1 + z1 z2, z1^2], [-z2^2, 1 - z1 z2]]: determinant 1, yet outside the
/// reach of every constructive route here (factor() refuses it).
AlgMatrix cohn_matrix(const AlgebraConfig& config);

}  // namespace slfact

#endif  // SLFACT_PIPELINE_HPP
