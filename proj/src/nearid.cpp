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

#include "slfact/nearid.hpp"

#include <algorithm>
#include <utility>

#include "slfact/errors.hpp"

namespace slfact {

std::vector<ElementaryFactor> whitehead(const TruncatedSeries& u, std::size_t k,
                                        std::size_t n, double tol) {
    if (k < 1 || k + 1 > n) {
        throw Error(ErrorKind::index_out_of_range,
                    "whitehead block needs 1 <= k < n");
    }
    const AlgebraConfig& cfg = u.config();
    TruncatedSeries uinv = reciprocal(u, tol);
    TruncatedSeries one = TruncatedSeries::one(cfg);
    std::vector<ElementaryFactor> out;
    out.reserve(6);
    out.emplace_back(k, k + 1, u);
    out.emplace_back(k + 1, k, neg(uinv));
    out.emplace_back(k, k + 1, u);
    out.emplace_back(k, k + 1, neg(one));
    out.emplace_back(k + 1, k, one);
    out.emplace_back(k, k + 1, neg(one));
    return out;
}

DiagonalFactors diagonal_to_factors(const AlgMatrix& D, double tol) {
    const std::uint32_t n = D.size();
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) {
            if (r != c && !D.at(r, c).is_zero()) {
                throw Error(ErrorKind::domain_error,
                            "diagonal_to_factors needs exactly zero off-diagonal entries");
            }
        }
    }
    DiagonalFactors out{{}, TruncatedSeries::one(D.config())};
    TruncatedSeries v = TruncatedSeries::one(D.config());
    for (std::uint32_t k = 0; k < n; ++k) {
        v = mul(v, D.at(k, k));
        // v is now v_{k+1} = u_1 ... u_{k+1} (1-based). Emit a Whitehead
        // block for every position except the last; an exact unit needs none.
        if (k + 1 < n && !v.is_one()) {
            std::vector<ElementaryFactor> w = whitehead(v, k + 1, n, tol);
            out.factors.insert(out.factors.end(), std::make_move_iterator(w.begin()),
                               std::make_move_iterator(w.end()));
        }
    }
    out.leftover = v;
    return out;
}

Factorization factor_near_identity(const AlgMatrix& F, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "tol must be positive");
    }
    const std::uint32_t n = F.size();
    const AlgebraConfig& cfg = F.config();
    if (!(identity_distance(F) < 1.0)) {
        throw Error(ErrorKind::near_identity_diverged,
                    "matrix is not within distance 1 of the identity");
    }
    // Reciprocal remainders accumulate across up to ~n^2 eliminations and the
    // diagonal reduction; keep each far below the requested tolerance.
    const double inner_tol = tol / (100.0 * n * n * n);

    std::vector<TruncatedSeries> w(F.entries());
    auto at = [&](std::uint32_t r, std::uint32_t c) -> TruncatedSeries& {
        return w[r * n + c];
    };

    std::vector<ElementaryFactor> left_ops;   // recorded in application order
    std::vector<ElementaryFactor> right_ops;  // recorded in application order

    for (std::uint32_t k = 0; k + 1 < n; ++k) {
        TruncatedSeries p = at(k, k);
        if (!(norm(sub(p, TruncatedSeries::one(cfg))) < 1.0)) {
            throw Error(ErrorKind::near_identity_diverged,
                        "stage pivot strayed out of the unit ball around 1");
        }
        TruncatedSeries pinv = reciprocal(p, inner_tol);
        // Clear column k below the diagonal with left row operations
        // E_{rk}(-w_rk * p^-1).
        for (std::uint32_t r = k + 1; r < n; ++r) {
            if (at(r, k).is_zero()) continue;
            TruncatedSeries m = neg(mul(at(r, k), pinv));
            left_ops.emplace_back(r + 1, k + 1, m);
            for (std::uint32_t c = 0; c < n; ++c) {
                at(r, c) = add(at(r, c), mul(m, at(k, c)));
            }
        }
        // Clear row k to the right with right column operations
        // E_{kc}(-p^-1 * w_kc).
        for (std::uint32_t c = k + 1; c < n; ++c) {
            if (at(k, c).is_zero()) continue;
            TruncatedSeries m = neg(mul(pinv, at(k, c)));
            right_ops.emplace_back(k + 1, c + 1, m);
            for (std::uint32_t r = 0; r < n; ++r) {
                at(r, c) = add(at(r, c), mul(at(r, k), m));
            }
        }
    }

    // The working matrix is now diagonal up to small dust; the dust stays out
    // of D and shows up in the verified residual instead.
    AlgMatrix D = AlgMatrix::identity(n, cfg);
    for (std::uint32_t k = 0; k < n; ++k) {
        D = D.with_entry(k, k, at(k, k));
    }
    DiagonalFactors diag = diagonal_to_factors(D, inner_tol);

    // L_m ... L_1 F R_1 ... R_p = W, so
    // F = L_1^-1 ... L_m^-1 W R_p^-1 ... R_1^-1.
    Factorization out;
    out.n = n;
    out.method = Method::near_identity;
    out.factors.reserve(left_ops.size() + diag.factors.size() + right_ops.size());
    for (const ElementaryFactor& e : left_ops) {
        out.factors.emplace_back(e.i, e.j, neg(e.alpha));
    }
    for (ElementaryFactor& e : diag.factors) {
        out.factors.push_back(std::move(e));
    }
    for (auto it = right_ops.rbegin(); it != right_ops.rend(); ++it) {
        out.factors.emplace_back(it->i, it->j, neg(it->alpha));
    }
    out.residual_bound =
        mat_norm(mat_sub(product_of_factors(out.factors, n, cfg), F));
    return out;
}

}  // namespace slfact
