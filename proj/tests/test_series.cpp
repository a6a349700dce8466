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

#include <doctest.h>

#include <cmath>
#include <random>

#include "slfact/series.hpp"
#include "test_util.hpp"

using namespace slfact;
using namespace slfact::testutil;

namespace {

const AlgebraConfig kD1(1, 64);
const AlgebraConfig kD2(2, 20);

TruncatedSeries z(const AlgebraConfig& cfg, std::uint32_t var = 0) {
    return TruncatedSeries::variable(cfg, var);
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(AlgebraConfig(0, 10), Error);
    CHECK_THROWS_AS(AlgebraConfig(8, 10), Error);
    CHECK_THROWS_AS(AlgebraConfig(1, 0), Error);
    CHECK_THROWS_AS(AlgebraConfig(1, 128), Error);
    CHECK_THROWS_AS(AlgebraConfig(1, 10, 0.5), Error);
    CHECK(AlgebraConfig(7, 127).num_vars == 7);
}

TEST_CASE("constructors and basic accessors") {
    TruncatedSeries zero = TruncatedSeries::zero(kD1);
    CHECK(zero.is_zero());
    CHECK(zero.poly_is_zero());
    CHECK(norm(zero) == 0.0);

    TruncatedSeries one = TruncatedSeries::one(kD1);
    CHECK(one.is_one());
    CHECK(one.constant_coeff() == Complex(1.0, 0.0));

    TruncatedSeries v = z(kD2, 1);
    CHECK(v.coeff({0, 1}) == Complex(1.0, 0.0));
    CHECK(v.coeff({1, 0}) == Complex(0.0, 0.0));

    // Duplicate indices accumulate (exactly, for dyadic values).
    TruncatedSeries dup = TruncatedSeries::from_terms(
        kD1, {{{1}, Complex(0.5, 0.0)}, {{1}, Complex(0.25, 0.0)}});
    CHECK(dup.term_count() == 1);
    CHECK(dup.coeff({1}) == Complex(0.75, 0.0));
    CHECK(dup.tail() == 0.0);

    CHECK_THROWS_AS(TruncatedSeries::from_terms(kD1, {{{65}, Complex(1.0, 0.0)}}),
                    Error);
    CHECK_THROWS_AS(TruncatedSeries::from_terms(kD1, {}, -0.1), Error);
    CHECK_THROWS_AS(TruncatedSeries::variable(kD1, 1), Error);
}

TEST_CASE("norm") {
    TruncatedSeries f = add(TruncatedSeries::one(kD1),
                            scale(z(kD1), Complex(0.5, 0.0)));
    CHECK(norm(f) == 1.5);

    CHECK(norm(TruncatedSeries::from_terms(kD1, {}, 0.25)) == 0.25);

    // z1 z2 - i z1^2 with tail 0.1.
    TruncatedSeries g = TruncatedSeries::from_terms(
        kD2, {{{1, 1}, Complex(1.0, 0.0)}, {{2, 0}, Complex(0.0, -1.0)}}, 0.1);
    CHECK(norm(g) == doctest::Approx(2.1).epsilon(1e-15));
}

TEST_CASE("add and sub stay exact on exact input") {
    TruncatedSeries one = TruncatedSeries::one(kD1);
    TruncatedSeries a = add(one, z(kD1));
    TruncatedSeries b = sub(one, z(kD1));
    TruncatedSeries s = add(a, b);
    CHECK(s.term_count() == 1);
    CHECK(s.constant_coeff() == Complex(2.0, 0.0));
    CHECK(s.tail() == 0.0);

    TruncatedSeries d = sub(a, a);
    CHECK(d.is_zero());
    CHECK(d.tail() == 0.0);
}

TEST_CASE("add propagates tails additively") {
    TruncatedSeries f = TruncatedSeries::from_terms(kD1, {}, 0.1);
    TruncatedSeries g = TruncatedSeries::from_terms(kD1, {}, 0.2);
    double t = add(f, g).tail();
    CHECK(t >= 0.3);
    CHECK(t <= 0.3 * 1.0001);
}

TEST_CASE("scale and neg") {
    TruncatedSeries s = scale(z(kD1), Complex(0.0, 2.0));
    CHECK(s.coeff({1}) == Complex(0.0, 2.0));
    CHECK(s.tail() == 0.0);  // multiplication by 2i is exact

    TruncatedSeries f = TruncatedSeries::from_terms(
        kD1, {{{0}, Complex(1.0, 0.0)}, {{2}, Complex(-0.5, 0.25)}}, 0.125);
    TruncatedSeries n = neg(f);
    CHECK(n.coeff({0}) == Complex(-1.0, 0.0));
    CHECK(n.coeff({2}) == Complex(0.5, -0.25));
    CHECK(n.tail() == f.tail());
    CHECK((-f).coeff({0}) == Complex(-1.0, 0.0));

    // Scaling the tail: |c| multiplies it.
    CHECK(scale(f, Complex(2.0, 0.0)).tail() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("mul keeps exact products exact") {
    TruncatedSeries one = TruncatedSeries::one(kD1);
    TruncatedSeries p = mul(add(one, z(kD1)), sub(one, z(kD1)));
    CHECK(p.coeff({0}) == Complex(1.0, 0.0));
    CHECK(p.coeff({1}) == Complex(0.0, 0.0));
    CHECK(p.coeff({2}) == Complex(-1.0, 0.0));
    CHECK(p.tail() == 0.0);

    CHECK(mul(one, p).tail() == 0.0);  // identity fast path
    CHECK(mul(p, one).term_count() == p.term_count());
}

TEST_CASE("mul folds degree overflow into the tail") {
    AlgebraConfig cap1(1, 1);
    TruncatedSeries f = add(TruncatedSeries::one(cap1), z(cap1));
    TruncatedSeries p = mul(f, f);
    CHECK(p.coeff({0}) == Complex(1.0, 0.0));
    CHECK(p.coeff({1}) == Complex(2.0, 0.0));
    CHECK(p.tail() >= 1.0);
    CHECK(p.tail() <= 1.0 * 1.0001);
}

TEST_CASE("mul propagates operand tails") {
    TruncatedSeries f = TruncatedSeries::from_terms(kD1, {{{1}, Complex(1.0, 0.0)}}, 0.1);
    TruncatedSeries g = z(kD1);
    TruncatedSeries p = mul(f, g);
    CHECK(p.coeff({2}) == Complex(1.0, 0.0));
    CHECK(p.tail() >= 0.1);
    CHECK(p.tail() <= 0.1 * 1.0001);
}

TEST_CASE("mul matches a brute-force convolution oracle") {
    std::mt19937_64 rng(1001);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint32_t d = 1 + static_cast<std::uint32_t>(rng() % 3);
        AlgebraConfig cfg(d, 24);
        TruncatedSeries f = random_poly(rng, cfg, 5, 1.0);
        TruncatedSeries g = random_poly(rng, cfg, 5, 1.0);
        TruncatedSeries p = mul(f, g);
        auto oracle = conv_oracle(f, g);
        for (const auto& [k, c] : oracle) {
            Complex got = p.coeff(k);
            CHECK(std::abs(got - c) <= 1e-12);
        }
        CHECK(norm(p) <= norm(f) * norm(g) * (1.0 + 1e-10));
    }
}

TEST_CASE("reduced-cap products bound the excluded mass") {
    std::mt19937_64 rng(1002);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint32_t d = 1 + static_cast<std::uint32_t>(rng() % 3);
        AlgebraConfig lo(d, 6);
        TruncatedSeries f = random_poly(rng, lo, 5, 1.0);
        TruncatedSeries g = random_poly(rng, lo, 5, 1.0);
        TruncatedSeries p = mul(f, g);
        double excluded = 0.0;
        for (const auto& [k, c] : conv_oracle(f, g)) {
            std::uint32_t total = 0;
            for (std::uint32_t e : k) total += e;
            if (total > lo.degree_cap) excluded += std::abs(c);
        }
        CHECK(excluded <= p.tail() * (1.0 + 1e-10) + 1e-15);
    }
}

TEST_CASE("dilate") {
    TruncatedSeries z3 = TruncatedSeries::monomial(kD1, {3}, Complex(1.0, 0.0));
    CHECK(dilate(z3, 0.5).coeff({3}) == Complex(0.125, 0.0));

    TruncatedSeries c = TruncatedSeries::constant(kD1, Complex(0.7, -0.2));
    TruncatedSeries dc = dilate(c, 0.3);
    CHECK(dc.coeff({0}) == Complex(0.7, -0.2));
    CHECK(dc.tail() == c.tail());

    CHECK(norm(sub(dilate(z(kD1), 0.9), z(kD1))) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(dilate(z3, 0.0), Error);
    CHECK_THROWS_AS(dilate(z3, 1.5), Error);

    std::mt19937_64 rng(1003);
    for (int trial = 0; trial < 20; ++trial) {
        TruncatedSeries f = random_poly(rng, kD2, 6, 1.0);
        double r = 0.05 + 0.95 * urand53(rng);
        CHECK(norm(dilate(f, r)) <= norm(f));
    }
}

TEST_CASE("dilation_gap_bound") {
    CHECK(dilation_gap_bound(z(kD1), 0.9) == doctest::Approx(0.1).epsilon(1e-12));

    TruncatedSeries c = TruncatedSeries::from_terms(kD1, {{{0}, Complex(3.0, 0.0)}}, 0.2);
    CHECK(dilation_gap_bound(c, 0.5) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(dilation_gap_bound(c.poly_part(), 0.5) == 0.0);

    TruncatedSeries f = add(z(kD1), TruncatedSeries::monomial(kD1, {2}, Complex(1.0, 0.0)));
    CHECK(dilation_gap_bound(f, 0.5) == doctest::Approx(1.25).epsilon(1e-12));

    // gap(f, 1) = 2 tail; monotone nonincreasing in r.
    TruncatedSeries g = TruncatedSeries::from_terms(
        kD1, {{{1}, Complex(0.5, 0.5)}, {{3}, Complex(-1.0, 0.0)}}, 0.05);
    CHECK(dilation_gap_bound(g, 1.0) == doctest::Approx(0.1).epsilon(1e-12));
    double prev = dilation_gap_bound(g, 0.1);
    for (double r = 0.2; r <= 1.0; r += 0.1) {
        double cur = dilation_gap_bound(g, r);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("reciprocal certifies and refuses") {
    TruncatedSeries one = TruncatedSeries::one(kD1);
    CHECK(reciprocal(one, 1e-12).is_one());

    TruncatedSeries two = TruncatedSeries::constant(kD1, Complex(2.0, 0.0));
    TruncatedSeries half = reciprocal(two, 1e-12);
    CHECK(half.constant_coeff() == Complex(0.5, 0.0));
    CHECK(half.tail() == 0.0);  // 1 - 2*0.5 cancels exactly

    TruncatedSeries f = sub(one, scale(z(kD1), Complex(0.5, 0.0)));
    TruncatedSeries g = reciprocal(f, 1e-12);
    CHECK(g.coeff({0}) == Complex(1.0, 0.0));
    CHECK(g.coeff({3}) == Complex(0.125, 0.0));
    CHECK(norm(sub(mul(f, g), one)) <= 1e-12);

    // 1 + 2z vanishes at z = -1/2 inside the disc.
    TruncatedSeries bad = add(one, scale(z(kD1), Complex(2.0, 0.0)));
    CHECK_THROWS_AS(reciprocal(bad, 1e-10), Error);
    try {
        reciprocal(bad, 1e-10);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_invertible);
        CHECK(e.is_refusal());
    }

    CHECK_THROWS_AS(reciprocal(z(kD1), 1e-10), Error);   // zero constant term
    CHECK_THROWS_AS(reciprocal(one, 0.0), Error);        // bad tol

    std::mt19937_64 rng(1004);
    for (int trial = 0; trial < 10; ++trial) {
        // Wide perturbation: the reciprocal's mass beyond the cap is real,
        // so it must land in the tail while the stored table still cancels.
        TruncatedSeries p = random_poly(rng, kD2, 4, 1.0);
        p = scale(p, Complex(0.4 / norm(p), 0.0));
        TruncatedSeries u = add(TruncatedSeries::one(kD2), p);
        TruncatedSeries v = reciprocal(u, 1e-10);
        TruncatedSeries res = sub(mul(u, v), TruncatedSeries::one(kD2));
        CHECK(res.poly_norm() <= 1e-8);
        CHECK(v.tail() > 0.0);
        EvalResult ev = evaluate(res, {Complex(0.5, 0.3), Complex(-0.2, 0.6)});
        CHECK(std::abs(ev.value) <= ev.radius + 1e-12);

        // Tight perturbation: everything certifies below 1e-9.
        TruncatedSeries q = scale(p, Complex(0.025, 0.0));
        TruncatedSeries w = add(TruncatedSeries::one(kD2), q);
        TruncatedSeries winv = reciprocal(w, 1e-10);
        CHECK(norm(sub(mul(w, winv), TruncatedSeries::one(kD2))) <= 1e-9);
    }
}

TEST_CASE("evaluate") {
    TruncatedSeries f = TruncatedSeries::monomial(kD2, {1, 1}, Complex(1.0, 0.0));
    EvalResult r = evaluate(f, {Complex(1.0, 0.0), Complex(1.0, 0.0)});
    CHECK(r.value == Complex(1.0, 0.0));
    CHECK(r.radius == f.tail());

    EvalResult one = evaluate(TruncatedSeries::one(kD1), {Complex(-0.3, 0.4)});
    CHECK(one.value == Complex(1.0, 0.0));

    TruncatedSeries g = add(TruncatedSeries::one(kD1), z(kD1));
    EvalResult gi = evaluate(g, {Complex(0.0, 1.0)});
    CHECK(gi.value == Complex(1.0, 1.0));

    CHECK_THROWS_AS(evaluate(g, {Complex(1.5, 0.0)}), Error);
    CHECK_THROWS_AS(evaluate(g, {Complex(0.0, 0.0), Complex(0.0, 0.0)}), Error);
}

TEST_CASE("tail utilities") {
    TruncatedSeries f = TruncatedSeries::from_terms(kD1, {{{0}, Complex(1.0, 0.0)}}, 0.5);
    CHECK(f.with_tail_added(0.25).tail() >= 0.75);
    CHECK_THROWS_AS(f.with_tail_added(-0.1), Error);
    CHECK(f.poly_part().tail() == 0.0);
    CHECK(f.poly_part().poly_norm() == f.poly_norm());
}
