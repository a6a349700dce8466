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

// Shared helpers for the unit and acceptance suites: a fixed deterministic
// generator and brute-force reference computations kept deliberately naive.

#ifndef SLFACT_TESTS_TEST_UTIL_HPP
#define SLFACT_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "slfact/elementary.hpp"
#include "slfact/matrix.hpp"
#include "slfact/series.hpp"

namespace slfact::testutil {

inline double urand53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in [-scale, scale).
inline double urand_pm(std::mt19937_64& rng, double scale) {
    return (2.0 * urand53(rng) - 1.0) * scale;
}

/// All multi-indices in d variables with total degree <= deg, odometer order.
inline std::vector<std::vector<std::uint32_t>> indices_up_to(std::uint32_t d,
                                                             std::uint32_t deg) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(d, 0);
    for (;;) {
        std::uint32_t total = 0;
        for (std::uint32_t e : cur) total += e;
        if (total <= deg) out.push_back(cur);
        std::uint32_t v = d;
        for (;;) {
            if (v == 0) return out;
            --v;
            if (cur[v] < deg) {
                ++cur[v];
                for (std::uint32_t w = v + 1; w < d; ++w) cur[w] = 0;
                break;
            }
        }
    }
}

/// Dense random polynomial of total degree <= deg, zero tail.
inline TruncatedSeries random_poly(std::mt19937_64& rng, const AlgebraConfig& cfg,
                                   std::uint32_t deg, double scale,
                                   bool complex_coeffs = true) {
    std::vector<std::pair<std::vector<std::uint32_t>, Complex>> terms;
    for (const auto& k : indices_up_to(cfg.num_vars, deg)) {
        double re = urand_pm(rng, scale);
        double im = complex_coeffs ? urand_pm(rng, scale) : 0.0;
        terms.push_back({k, Complex(re, im)});
    }
    return TruncatedSeries::from_terms(cfg, terms);
}

/// Random elementary word; alphas are dense polynomials of degree <= deg
/// rescaled to l1 norm `budget` each, so the product stays within
/// (1 + budget)^count - 1 of the identity.
inline std::vector<ElementaryFactor> random_near_identity_word(
    std::mt19937_64& rng, const AlgebraConfig& cfg, std::size_t n,
    std::size_t count, std::uint32_t deg, double budget) {
    std::vector<ElementaryFactor> out;
    out.reserve(count);
    for (std::size_t f = 0; f < count; ++f) {
        std::size_t i = 1 + static_cast<std::size_t>(rng() % n);
        std::size_t j = 1 + static_cast<std::size_t>(rng() % (n - 1));
        if (j >= i) ++j;
        TruncatedSeries a = random_poly(rng, cfg, deg, 1.0);
        double na = norm(a);
        if (na > 0.0) a = scale(a, Complex(budget / na, 0.0));
        out.emplace_back(i, j, a.poly_part());
    }
    return out;
}

/// Random polynomial word with real coefficients in [-1, 1], for the
/// univariate Euclidean round trips.
inline std::vector<ElementaryFactor> random_poly_word(std::mt19937_64& rng,
                                                      const AlgebraConfig& cfg,
                                                      std::size_t n,
                                                      std::size_t count,
                                                      std::uint32_t deg) {
    std::vector<ElementaryFactor> out;
    out.reserve(count);
    for (std::size_t f = 0; f < count; ++f) {
        std::size_t i = 1 + static_cast<std::size_t>(rng() % n);
        std::size_t j = 1 + static_cast<std::size_t>(rng() % (n - 1));
        if (j >= i) ++j;
        out.emplace_back(i, j, random_poly(rng, cfg, deg, 1.0, false));
    }
    return out;
}

/// Brute-force convolution of the two coefficient tables, keyed by
/// multi-index with no degree cap. Reference for mul's table and for the
/// mass excluded by a reduced cap.
inline std::map<std::vector<std::uint32_t>, Complex> conv_oracle(
    const TruncatedSeries& f, const TruncatedSeries& g) {
    std::map<std::vector<std::uint32_t>, Complex> acc;
    for (const SeriesTerm& a : f.terms()) {
        for (const SeriesTerm& b : g.terms()) {
            std::vector<std::uint32_t> k(a.index.size());
            for (std::size_t v = 0; v < k.size(); ++v) k[v] = a.index[v] + b.index[v];
            acc[k] += a.coeff * b.coeff;
        }
    }
    return acc;
}

/// Strips every entry tail; the polynomial parts are kept bit-identical.
inline AlgMatrix strip_tails(const AlgMatrix& F) {
    std::vector<TruncatedSeries> entries;
    entries.reserve(F.entries().size());
    for (const TruncatedSeries& e : F.entries()) entries.push_back(e.poly_part());
    return AlgMatrix::from_entries(F.size(), std::move(entries));
}

}  // namespace slfact::testutil

#endif  // SLFACT_TESTS_TEST_UTIL_HPP
