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

#include "slfact/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace slfact {

namespace {

void check_compatible(const AlgMatrix& F, const AlgMatrix& G) {
    if (F.size() != G.size()) {
        throw Error(ErrorKind::dimension_mismatch, "matrix dimensions differ");
    }
    if (!(F.config() == G.config())) {
        throw Error(ErrorKind::config_mismatch, "matrix configs differ");
    }
}

} // namespace

AlgMatrix::AlgMatrix(std::uint32_t n, const AlgebraConfig& config)
    : n_(n), config_(config) {
    if (n_ == 0) {
        throw Error(ErrorKind::domain_error, "matrix dimension must be positive");
    }
    config_.validate();
    entries_.assign(static_cast<std::size_t>(n_) * n_, TruncatedSeries::zero(config_));
}

AlgMatrix AlgMatrix::identity(std::uint32_t n, const AlgebraConfig& config) {
    AlgMatrix out(n, config);
    for (std::uint32_t i = 0; i < n; ++i) {
        out.entries_[static_cast<std::size_t>(i) * n + i] = TruncatedSeries::one(config);
    }
    return out;
}

AlgMatrix AlgMatrix::zero(std::uint32_t n, const AlgebraConfig& config) {
    return AlgMatrix(n, config);
}

AlgMatrix AlgMatrix::from_entries(std::uint32_t n, std::vector<TruncatedSeries> entries) {
    if (entries.size() != static_cast<std::size_t>(n) * n) {
        throw Error(ErrorKind::dimension_mismatch, "entry count is not n*n");
    }
    AlgMatrix out(n, entries.front().config());
    for (const auto& e : entries) {
        if (!(e.config() == out.config_)) {
            throw Error(ErrorKind::config_mismatch, "entries carry different configs");
        }
    }
    out.entries_ = std::move(entries);
    return out;
}

const TruncatedSeries& AlgMatrix::at(std::uint32_t row, std::uint32_t col) const {
    if (row >= n_ || col >= n_) {
        throw Error(ErrorKind::index_out_of_range, "matrix index out of range");
    }
    return entries_[static_cast<std::size_t>(row) * n_ + col];
}

AlgMatrix AlgMatrix::with_entry(std::uint32_t row, std::uint32_t col, TruncatedSeries value) const {
    if (row >= n_ || col >= n_) {
        throw Error(ErrorKind::index_out_of_range, "matrix index out of range");
    }
    if (!(value.config() == config_)) {
        throw Error(ErrorKind::config_mismatch, "entry config differs from matrix config");
    }
    AlgMatrix out = *this;
    out.entries_[static_cast<std::size_t>(row) * n_ + col] = std::move(value);
    return out;
}

double mat_norm(const AlgMatrix& F) {
    double s = 0.0;
    for (const auto& e : F.entries()) s += norm(e);
    return s;
}

double mat_tail_sum(const AlgMatrix& F) {
    double s = 0.0;
    for (const auto& e : F.entries()) s += e.tail();
    return s;
}

AlgMatrix mat_add(const AlgMatrix& F, const AlgMatrix& G) {
    check_compatible(F, G);
    std::vector<TruncatedSeries> out;
    out.reserve(F.entries().size());
    for (std::size_t i = 0; i < F.entries().size(); ++i) {
        out.push_back(add(F.entries()[i], G.entries()[i]));
    }
    return AlgMatrix::from_entries(F.size(), std::move(out));
}

AlgMatrix mat_sub(const AlgMatrix& F, const AlgMatrix& G) {
    check_compatible(F, G);
    std::vector<TruncatedSeries> out;
    out.reserve(F.entries().size());
    for (std::size_t i = 0; i < F.entries().size(); ++i) {
        out.push_back(sub(F.entries()[i], G.entries()[i]));
    }
    return AlgMatrix::from_entries(F.size(), std::move(out));
}

AlgMatrix mat_mul(const AlgMatrix& F, const AlgMatrix& G) {
    check_compatible(F, G);
    const std::uint32_t n = F.size();
    std::vector<TruncatedSeries> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            TruncatedSeries s = mul(F.at(i, 0), G.at(0, j));
            for (std::uint32_t k = 1; k < n; ++k) {
                s = add(s, mul(F.at(i, k), G.at(k, j)));
            }
            out.push_back(std::move(s));
        }
    }
    return AlgMatrix::from_entries(n, std::move(out));
}

double identity_distance(const AlgMatrix& F) {
    return mat_norm(mat_sub(F, AlgMatrix::identity(F.size(), F.config())));
}

namespace {

TruncatedSeries det_recursive(const AlgMatrix& F, std::vector<std::uint32_t>& cols,
                              std::uint32_t row) {
    const AlgebraConfig& cfg = F.config();
    if (cols.size() == 1) return F.at(row, cols[0]);
    TruncatedSeries acc = TruncatedSeries::zero(cfg);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::uint32_t cj = cols[j];
        std::vector<std::uint32_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t t = 0; t < cols.size(); ++t) {
            if (t != j) rest.push_back(cols[t]);
        }
        TruncatedSeries minor = det_recursive(F, rest, row + 1);
        TruncatedSeries contrib = mul(F.at(row, cj), minor);
        if (j % 2 == 1) contrib = scale(contrib, Complex(-1.0, 0.0));
        acc = add(acc, contrib);
    }
    return acc;
}

} // namespace

TruncatedSeries det(const AlgMatrix& F) {
    if (F.size() > 8) {
        throw Error(ErrorKind::dimension_too_large,
                    "cofactor determinant is guarded at n <= 8");
    }
    std::vector<std::uint32_t> cols(F.size());
    for (std::uint32_t j = 0; j < F.size(); ++j) cols[j] = j;
    return det_recursive(F, cols, 0);
}

AlgMatrix mat_inverse_near_identity(const AlgMatrix& F, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "tol must be positive");
    }
    const std::uint32_t n = F.size();
    const AlgebraConfig& cfg = F.config();
    AlgMatrix id = AlgMatrix::identity(n, cfg);
    AlgMatrix E = mat_sub(id, F);
    double q = mat_norm(E);
    if (!(q < 1.0)) {
        throw Error(ErrorKind::not_near_identity,
                    "||F - I|| >= 1: Neumann inversion not certified");
    }
    // Spread the remainder over all n^2 entry tails without spending the
    // whole budget: target tol / (2 n^2 max(1, ||F||)).
    double target = tol / (2.0 * n * n * std::max(1.0, mat_norm(F)));
    AlgMatrix sum = id;
    if (q > 0.0) {
        AlgMatrix term = id;
        double remainder = q / (1.0 - q);
        std::size_t m = 0;
        while (remainder >= target) {
            if (++m > 4096) {
                throw Error(ErrorKind::not_near_identity,
                            "Neumann series converges too slowly (||F - I|| near 1)");
            }
            term = mat_mul(term, E);
            sum = mat_add(sum, term);
            remainder *= q;
        }
        // Each entry of the discarded remainder matrix has l1 norm at most
        // the summed matrix norm bound.
        std::vector<TruncatedSeries> padded;
        padded.reserve(sum.entries().size());
        for (const auto& e : sum.entries()) padded.push_back(e.with_tail_added(remainder));
        sum = AlgMatrix::from_entries(n, std::move(padded));
    }
    return sum;
}

} // namespace slfact
