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

#include "slfact/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "slfact/errors.hpp"
#include "slfact/nearid.hpp"
#include "slfact/unipoly.hpp"

namespace slfact {

namespace {

constexpr double kDetTol = 1e-9;

AlgMatrix mat_dilate(const AlgMatrix& F, double r) {
    std::vector<TruncatedSeries> entries;
    entries.reserve(F.entries().size());
    for (const TruncatedSeries& e : F.entries()) entries.push_back(dilate(e, r));
    return AlgMatrix::from_entries(F.size(), std::move(entries));
}

AlgMatrix poly_part(const AlgMatrix& F) {
    std::vector<TruncatedSeries> entries;
    entries.reserve(F.entries().size());
    for (const TruncatedSeries& e : F.entries()) entries.push_back(e.poly_part());
    return AlgMatrix::from_entries(F.size(), std::move(entries));
}

bool tail_free(const AlgMatrix& F) {
    for (const TruncatedSeries& e : F.entries()) {
        if (e.tail() != 0.0) return false;
    }
    return true;
}

AlgMatrix certified_inverse(const AlgMatrix& F, double tol) {
    try {
        return mat_inverse_near_identity(F, tol);
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::not_near_identity) {
            throw Error(ErrorKind::inverse_unavailable,
                        "no certified inverse: mat_norm(F - I) >= 1");
        }
        throw;
    }
}

Factorization dilation_route(const AlgMatrix& F, double tol,
                             std::optional<double> radius) {
    const double q = identity_distance(F);
    AlgMatrix inv = certified_inverse(F, tol);
    double eta = std::min({tol, std::max(0.0, 1.0 - q), 0.1}) /
                 std::max(1.0, mat_norm(inv));
    double r = radius ? *radius : choose_radius(F, eta);
    auto [fr, g] = split_dilation(F, r, tol);

    // The truncated dilation is factored as a plain polynomial matrix; its
    // tails and determinant drift surface in the verified residual.
    Factorization fac_r = euclid_factor_core(poly_part(fr), tol);
    Factorization fac_g = factor_near_identity(g, tol);

    Factorization out;
    out.n = F.size();
    out.method = Method::dilation_pipeline;
    out.factors = std::move(fac_r.factors);
    std::vector<ElementaryFactor> ginv = invert_factors(fac_g.factors);
    out.factors.insert(out.factors.end(), std::make_move_iterator(ginv.begin()),
                       std::make_move_iterator(ginv.end()));
    out.residual_bound =
        mat_norm(mat_sub(product_of_factors(out.factors, F.size(), F.config()), F));
    return out;
}

}  // namespace

double choose_radius(const AlgMatrix& F, double eta) {
    double tails = 2.0 * mat_tail_sum(F);
    if (!(eta > tails)) {
        throw Error(ErrorKind::unreachable,
                    "entry tails alone exceed the dilation budget");
    }
    for (int m = 1; m <= 60; ++m) {
        double r = 1.0 - std::ldexp(1.0, -m);
        double bound = 0.0;
        for (const TruncatedSeries& e : F.entries()) {
            bound += dilation_gap_bound(e, r);
        }
        if (bound <= eta) return r;
    }
    throw Error(ErrorKind::unreachable,
                "no grid radius meets the dilation budget");
}

std::pair<AlgMatrix, AlgMatrix> split_dilation(const AlgMatrix& F, double r,
                                               double tol) {
    if (!(r > 0.0 && r <= 1.0)) {
        throw Error(ErrorKind::domain_error, "dilation radius must lie in (0, 1]");
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "tol must be positive");
    }
    AlgMatrix fr = mat_dilate(F, r);
    AlgMatrix inv = certified_inverse(F, tol);
    AlgMatrix g = mat_add(AlgMatrix::identity(F.size(), F.config()),
                          mat_mul(inv, mat_sub(fr, F)));
    return {std::move(fr), std::move(g)};
}

Factorization factor(const FactorRequest& req) {
    const AlgMatrix& F = req.matrix;
    const double tol = req.tol;
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "tol must be positive");
    }
    if (req.radius && !(*req.radius > 0.0 && *req.radius < 1.0)) {
        throw Error(ErrorKind::domain_error, "radius must lie in (0, 1)");
    }
    // Unimodularity precheck on the coefficient tables (cofactor determinant
    // is only available for moderate n).
    if (F.size() <= 8) {
        TruncatedSeries drift = sub(det(F), TruncatedSeries::one(F.config()));
        for (const auto& t : drift.raw_terms()) {
            if (std::abs(t.coeff) > kDetTol) {
                throw Error(ErrorKind::not_unimodular,
                            "determinant is not 1 within tolerance");
            }
        }
    }

    switch (req.mode) {
        case FactorMode::near_identity:
            return factor_near_identity(F, tol);
        case FactorMode::euclid:
            return factor_univariate(F, tol);
        case FactorMode::dilation:
            return dilation_route(F, tol, req.radius);
        case FactorMode::automatic:
            break;
    }
    if (F.config().num_vars == 1 && tail_free(F)) {
        return factor_univariate(F, tol);
    }
    if (identity_distance(F) < 0.5) {
        return factor_near_identity(F, tol);
    }
    if (F.config().num_vars == 1) {
        return dilation_route(F, tol, req.radius);
    }
    throw Error(ErrorKind::unsupported,
                "no constructive route: for two or more variables far from the "
                "identity, the known factorization argument relies on a "
                "non-constructive correction step");
}

VerificationReport verify(const AlgMatrix& F, const Factorization& fac, double tol) {
    if (fac.n != F.size()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "factorization size does not match the matrix");
    }
    VerificationReport report;
    report.tol = tol;
    report.factor_count = fac.factors.size();
    report.residual =
        mat_norm(mat_sub(product_of_factors(fac.factors, F.size(), F.config()), F));
    report.passed = report.residual <= tol;
    report.normal_form_blocks = group_ik_normal_form(fac.factors, F.size()).size();
    return report;
}

AlgMatrix cohn_matrix(const AlgebraConfig& config) {
    if (config.num_vars != 2) {
        throw Error(ErrorKind::config_mismatch, "the Cohn matrix needs exactly 2 variables");
    }
    TruncatedSeries one = TruncatedSeries::one(config);
    TruncatedSeries z1z2 = TruncatedSeries::monomial(config, {1, 1}, Complex(1.0, 0.0));
    TruncatedSeries z1sq = TruncatedSeries::monomial(config, {2, 0}, Complex(1.0, 0.0));
    TruncatedSeries z2sq = TruncatedSeries::monomial(config, {0, 2}, Complex(1.0, 0.0));
    std::vector<TruncatedSeries> entries{
        add(one, z1z2), z1sq,
        neg(z2sq), sub(one, z1z2),
    };
    return AlgMatrix::from_entries(2, std::move(entries));
}

}  // namespace slfact
