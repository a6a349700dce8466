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

#include <random>

#include "slfact/elementary.hpp"
#include "test_util.hpp"

using namespace slfact;
using namespace slfact::testutil;

namespace {

const AlgebraConfig kD1(1, 32);

TruncatedSeries zvar() { return TruncatedSeries::variable(kD1, 0); }

}  // namespace

TEST_CASE("factor validation and materialization") {
    CHECK_THROWS_AS(ElementaryFactor(1, 1, zvar()), Error);
    CHECK_THROWS_AS(ElementaryFactor(0, 2, zvar()), Error);

    ElementaryFactor e(1, 2, scale(zvar(), Complex(0.5, 0.0)));
    AlgMatrix M = elem_to_matrix(e, 3);
    CHECK(M.size() == 3);
    CHECK(M.at(0, 0).is_one());
    CHECK(M.at(0, 1).coeff({1}) == Complex(0.5, 0.0));
    CHECK(M.at(1, 0).is_zero());
    CHECK(M.at(2, 2).is_one());
    CHECK_THROWS_AS(elem_to_matrix(e, 1), Error);  // index outside the size
}

TEST_CASE("method tags round-trip") {
    for (Method m : {Method::euclid, Method::near_identity,
                     Method::dilation_pipeline, Method::manual}) {
        CHECK(method_from_tag(method_tag(m)) == m);
    }
    CHECK_THROWS_AS(method_from_tag("bogus"), Error);
}

TEST_CASE("product_of_factors") {
    CHECK(identity_distance(product_of_factors({}, 3, kD1)) == 0.0);

    std::vector<ElementaryFactor> one = {ElementaryFactor(1, 2, zvar())};
    AlgMatrix P1 = product_of_factors(one, 2, kD1);
    CHECK(P1.at(0, 1).coeff({1}) == Complex(1.0, 0.0));
    CHECK(P1.at(0, 0).is_one());
    CHECK(mat_tail_sum(P1) == 0.0);

    // E12(z) * E21(-1) = [[1 - z, z], [-1, 1]] exactly.
    std::vector<ElementaryFactor> w = {
        ElementaryFactor(1, 2, zvar()),
        ElementaryFactor(2, 1, TruncatedSeries::constant(kD1, Complex(-1.0, 0.0)))};
    AlgMatrix P = product_of_factors(w, 2, kD1);
    CHECK(P.at(0, 0).coeff({0}) == Complex(1.0, 0.0));
    CHECK(P.at(0, 0).coeff({1}) == Complex(-1.0, 0.0));
    CHECK(P.at(0, 1).coeff({1}) == Complex(1.0, 0.0));
    CHECK(P.at(1, 0).coeff({0}) == Complex(-1.0, 0.0));
    CHECK(P.at(1, 1).is_one());
    CHECK(mat_tail_sum(P) == 0.0);

    // Factor indices must fit inside n.
    std::vector<ElementaryFactor> oob = {ElementaryFactor(1, 3, zvar())};
    CHECK_THROWS_AS(product_of_factors(oob, 2, kD1), Error);
}

TEST_CASE("invert_factors cancels the word") {
    std::mt19937_64 rng(3001);
    for (int trial = 0; trial < 5; ++trial) {
        std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 3);
        std::vector<ElementaryFactor> w =
            random_near_identity_word(rng, kD1, n, 6, 3, 0.2);
        std::vector<ElementaryFactor> winv = invert_factors(w);
        CHECK(winv.size() == w.size());
        CHECK(winv.front().i == w.back().i);

        std::vector<ElementaryFactor> both = w;
        both.insert(both.end(), winv.begin(), winv.end());
        AlgMatrix P = product_of_factors(both, n, kD1);
        CHECK(identity_distance(P) <= 1e-12);
    }
}

TEST_CASE("group_ik_normal_form merges runs") {
    // Two upper factors merge into one run; a leading zero lower block pads.
    std::vector<ElementaryFactor> w = {
        ElementaryFactor(1, 2, zvar()),
        ElementaryFactor(1, 3, scale(zvar(), Complex(2.0, 0.0)))};
    std::vector<UnipotentBlock> blocks = group_ik_normal_form(w, 3);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].side == UnipotentBlock::Side::lower);
    CHECK(blocks[1].side == UnipotentBlock::Side::upper);
    for (const auto& b : blocks) CHECK(b.g.size() == 3);
    for (const auto& s : blocks[0].g) CHECK(s.is_zero());

    AlgMatrix M = mat_mul(block_to_matrix(blocks[0], 3, kD1),
                          block_to_matrix(blocks[1], 3, kD1));
    AlgMatrix W = product_of_factors(w, 3, kD1);
    CHECK(mat_norm(mat_sub(M, W)) <= 1e-14);

    // Mixed word: alternation is strict and the block product matches.
    std::mt19937_64 rng(3002);
    for (int trial = 0; trial < 6; ++trial) {
        std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 3);
        std::vector<ElementaryFactor> word =
            random_near_identity_word(rng, kD1, n, 8, 3, 0.1);
        std::vector<UnipotentBlock> bs = group_ik_normal_form(word, n);
        REQUIRE(!bs.empty());
        CHECK(bs[0].side == UnipotentBlock::Side::lower);
        for (std::size_t k = 0; k + 1 < bs.size(); ++k)
            CHECK(bs[k].side != bs[k + 1].side);
        for (const auto& b : bs) CHECK(b.g.size() == n * (n - 1) / 2);

        AlgMatrix prod = AlgMatrix::identity(n, kD1);
        for (const auto& b : bs) prod = mat_mul(prod, block_to_matrix(b, n, kD1));
        AlgMatrix ref = product_of_factors(word, n, kD1);
        CHECK(mat_norm(mat_sub(prod, ref)) <= 1e-10);
    }

    CHECK(group_ik_normal_form({}, 3).empty());
}

TEST_CASE("block_to_matrix validates shape") {
    UnipotentBlock b;
    b.side = UnipotentBlock::Side::upper;
    b.g = {zvar(), zvar()};  // wrong length for n = 3
    CHECK_THROWS_AS(block_to_matrix(b, 3, kD1), Error);

    b.g = {zvar(), TruncatedSeries::zero(kD1), zvar()};
    AlgMatrix M = block_to_matrix(b, 3, kD1);
    CHECK(M.at(0, 1).coeff({1}) == Complex(1.0, 0.0));
    CHECK(M.at(0, 2).is_zero());
    CHECK(M.at(2, 1).is_zero());
    CHECK(M.at(1, 2).coeff({1}) == Complex(1.0, 0.0));
}
