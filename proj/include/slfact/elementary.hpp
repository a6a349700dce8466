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

#ifndef SLFACT_ELEMENTARY_HPP
#define SLFACT_ELEMENTARY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "slfact/matrix.hpp"
#include "slfact/series.hpp"

namespace slfact {

// One elementary transvection E_ij(alpha) = I + alpha * e_ij. Indices are
// 1-based and i != j always holds.
struct ElementaryFactor {
    std::size_t i = 1;
    std::size_t j = 2;
    TruncatedSeries alpha;

    ElementaryFactor(std::size_t row, std::size_t col, TruncatedSeries a);
};

enum class Method {
    euclid,
    near_identity,
    dilation_pipeline,
    manual,
};

std::string method_tag(Method m);
Method method_from_tag(const std::string& tag);

// Result of a factoring run: the product of `factors` in list order encloses
// the input matrix up to `residual_bound` in the summed entry norm.
struct Factorization {
    std::size_t n = 0;
    std::vector<ElementaryFactor> factors;
    double residual_bound = 0.0;
    Method method = Method::manual;
};

// A unipotent triangular matrix I + N with N strictly lower or strictly
// upper. `g` stores the strict-triangle entries of N row by row, so it has
// n*(n-1)/2 entries for size n.
struct UnipotentBlock {
    enum class Side { lower, upper };
    Side side = Side::lower;
    std::vector<TruncatedSeries> g;
};

// Materializes E_ij(alpha) as an n x n matrix.
AlgMatrix elem_to_matrix(const ElementaryFactor& e, std::size_t n);

// Encloses the product of the factors in list order (the pairing inside is
// an implementation detail). The empty product is the identity.
AlgMatrix product_of_factors(const std::vector<ElementaryFactor>& factors,
                             std::size_t n, const AlgebraConfig& config);

// Reverses the list and negates every alpha; the result is the inverse word.
std::vector<ElementaryFactor> invert_factors(const std::vector<ElementaryFactor>& factors);

// Merges maximal runs of same-side factors into unipotent blocks and pads so
// the blocks alternate starting with a lower one (the leading pad is a zero
// lower block when the first run is upper). The block product equals the
// factor product exactly.
std::vector<UnipotentBlock> group_ik_normal_form(const std::vector<ElementaryFactor>& factors,
                                                 std::size_t n);

// Materializes a unipotent block as an n x n matrix.
AlgMatrix block_to_matrix(const UnipotentBlock& block, std::size_t n,
                          const AlgebraConfig& config);

}  // namespace slfact

#endif  // SLFACT_ELEMENTARY_HPP
