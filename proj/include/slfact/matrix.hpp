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

// Square matrices over TruncatedSeries with the summed entry norm
// ||F|| = sum_{i,j} ||F_ij||, which is submultiplicative.

#ifndef SLFACT_MATRIX_HPP
#define SLFACT_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "slfact/series.hpp"

namespace slfact {

class AlgMatrix {
public:
    AlgMatrix(std::uint32_t n, const AlgebraConfig& config);

    static AlgMatrix identity(std::uint32_t n, const AlgebraConfig& config);
    static AlgMatrix zero(std::uint32_t n, const AlgebraConfig& config);
    /// Row-major entries, all sharing one config.
    static AlgMatrix from_entries(std::uint32_t n, std::vector<TruncatedSeries> entries);

    std::uint32_t size() const noexcept { return n_; }
    const AlgebraConfig& config() const noexcept { return config_; }

    const TruncatedSeries& at(std::uint32_t row, std::uint32_t col) const;
    AlgMatrix with_entry(std::uint32_t row, std::uint32_t col, TruncatedSeries value) const;

    const std::vector<TruncatedSeries>& entries() const noexcept { return entries_; }

private:
    std::uint32_t n_;
    AlgebraConfig config_;
    std::vector<TruncatedSeries> entries_; // row-major, n*n
};

/// Sum of entry norms; submultiplicative up to float_slack.
double mat_norm(const AlgMatrix& F);

/// Sum of entry tail radii.
double mat_tail_sum(const AlgMatrix& F);

AlgMatrix mat_add(const AlgMatrix& F, const AlgMatrix& G);
AlgMatrix mat_sub(const AlgMatrix& F, const AlgMatrix& G);
AlgMatrix mat_mul(const AlgMatrix& F, const AlgMatrix& G);

/// ||F - I||, the distance that gates near-identity inversion.
double identity_distance(const AlgMatrix& F);

/// Determinant by cofactor expansion (no division in the series ring).
/// Guarded at n <= 8.
TruncatedSeries det(const AlgMatrix& F);

/// Neumann inverse of F = I - E with q = ||F - I|| < 1. The partial sum runs
/// until the geometric remainder is small against tol; the remainder bound is
/// folded into every entry tail. Certificate: ||F * out - I|| <= tol + tails.
AlgMatrix mat_inverse_near_identity(const AlgMatrix& F, double tol);

inline AlgMatrix operator+(const AlgMatrix& F, const AlgMatrix& G) { return mat_add(F, G); }
inline AlgMatrix operator-(const AlgMatrix& F, const AlgMatrix& G) { return mat_sub(F, G); }
inline AlgMatrix operator*(const AlgMatrix& F, const AlgMatrix& G) { return mat_mul(F, G); }

} // namespace slfact

#endif // SLFACT_MATRIX_HPP
