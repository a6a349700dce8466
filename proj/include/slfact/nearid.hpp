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

// Factorization of matrices close to the identity: Gaussian elimination with
// certified pivot reciprocals, then Whitehead decomposition of the leftover
// diagonal.

#ifndef SLFACT_NEARID_HPP
#define SLFACT_NEARID_HPP

#include <cstddef>
#include <vector>

#include "slfact/elementary.hpp"
#include "slfact/matrix.hpp"
#include "slfact/series.hpp"

namespace slfact {

/// Factors F with mat_norm(F - I) < 1 into elementary factors. Each stage
/// pivot p must satisfy norm(p - 1) < 1 (NearIdentityDiverged otherwise);
/// reciprocal failures propagate as NotInvertible. The reported
/// residual_bound is certified by multiplying the factors back out.
Factorization factor_near_identity(const AlgMatrix& F, double tol);

/// Six factors in rows/columns (k, k+1), 1 <= k < n, whose product is
/// diag(1,...,u,u^-1,...,1):
///   E(u) E'(-u^-1) E(u) * E(-1) E'(1) E(-1)
/// with E = E_{k,k+1} and E' = E_{k+1,k}. The reciprocal is certified, so a
/// non-invertible u throws NotInvertible.
std::vector<ElementaryFactor> whitehead(const TruncatedSeries& u, std::size_t k,
                                        std::size_t n, double tol);

struct DiagonalFactors {
    std::vector<ElementaryFactor> factors;
    /// Product of all diagonal entries; encloses 1 exactly when det D = 1.
    TruncatedSeries leftover;
};

/// Telescoping Whitehead reduction of a diagonal matrix: emits
/// whitehead(v_k, k, n) with v_k = u_1 ... u_k, so the factor product is
/// diag(u_1, ..., u_{n-1}, v_{n-1}^-1). The caller folds
/// norm(leftover - 1) into its residual accounting. Off-diagonal entries of
/// D must be exactly zero.
DiagonalFactors diagonal_to_factors(const AlgMatrix& D, double tol);

}  // namespace slfact

#endif  // SLFACT_NEARID_HPP
