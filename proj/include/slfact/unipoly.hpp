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

// Euclidean-elimination factorization for univariate polynomial matrices in
// SL_n(C[z]).

#ifndef SLFACT_UNIPOLY_HPP
#define SLFACT_UNIPOLY_HPP

#include <utility>

#include "slfact/elementary.hpp"
#include "slfact/matrix.hpp"
#include "slfact/series.hpp"

namespace slfact {

/// Polynomial division a = b*q + rem with deg(rem) < deg(b). Degrees are
/// decided after treating coefficients below drop_tol * (largest input
/// coefficient magnitude) as zero; an effectively zero divisor throws
/// DivisionByZero. Operates on the polynomial parts; d must be 1.
std::pair<TruncatedSeries, TruncatedSeries> poly_divmod(const TruncatedSeries& a,
                                                        const TruncatedSeries& b,
                                                        double drop_tol);

/// Factors F in SL_n(C[z]) (d = 1, zero tails, det within 1e-9 of 1
/// coefficientwise) by column-by-column gcd elimination with signed-swap
/// triples, then back-substitution and Whitehead reduction of the diagonal.
/// When the direct elimination's certified residual misses tol, retries the
/// transpose and (for n <= 3) adjugate reformulations, whose factor words map
/// back exactly, and polishes near misses with a near-identity correction.
/// Returns the first word meeting tol, else the best word found; every
/// residual is certified by multiplying the factors back out against F.
Factorization factor_univariate(const AlgMatrix& F, double tol);

/// The elimination core without the determinant precheck: any determinant
/// drift flows into the final diagonal unit and the certified residual.
/// Requires d = 1 and zero entry tails.
Factorization euclid_factor_core(const AlgMatrix& F, double tol);

}  // namespace slfact

#endif  // SLFACT_UNIPOLY_HPP
