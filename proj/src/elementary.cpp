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

#include "slfact/elementary.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "slfact/errors.hpp"

namespace slfact {

namespace {

void check_indices(const ElementaryFactor& e, std::size_t n) {
    if (e.i < 1 || e.j < 1 || e.i > n || e.j > n) {
        throw Error(ErrorKind::index_out_of_range,
                    "elementary factor index exceeds matrix size");
    }
}

}  // namespace

ElementaryFactor::ElementaryFactor(std::size_t row, std::size_t col, TruncatedSeries a)
    : i(row), j(col), alpha(std::move(a)) {
    if (i == j || i < 1 || j < 1) {
        throw Error(ErrorKind::index_out_of_range,
                    "elementary factor needs distinct 1-based indices");
    }
}

std::string method_tag(Method m) {
    switch (m) {
        case Method::euclid: return "euclid";
        case Method::near_identity: return "near_identity";
        case Method::dilation_pipeline: return "dilation_pipeline";
        case Method::manual: return "manual";
    }
    throw std::logic_error("unknown method");
}

Method method_from_tag(const std::string& tag) {
    if (tag == "euclid") return Method::euclid;
    if (tag == "near_identity") return Method::near_identity;
    if (tag == "dilation_pipeline") return Method::dilation_pipeline;
    if (tag == "manual") return Method::manual;
    throw Error(ErrorKind::malformed_input, "unknown method tag '" + tag + "'");
}

AlgMatrix elem_to_matrix(const ElementaryFactor& e, std::size_t n) {
    check_indices(e, n);
    AlgMatrix out = AlgMatrix::identity(static_cast<std::uint32_t>(n), e.alpha.config());
    return out.with_entry(static_cast<std::uint32_t>(e.i - 1),
                          static_cast<std::uint32_t>(e.j - 1), e.alpha);
}

AlgMatrix product_of_factors(const std::vector<ElementaryFactor>& factors,
                             std::size_t n, const AlgebraConfig& config) {
    const std::uint32_t un = static_cast<std::uint32_t>(n);
    if (factors.empty()) return AlgMatrix::identity(un, config);
    std::vector<AlgMatrix> level;
    level.reserve(factors.size());
    for (const ElementaryFactor& e : factors) {
        check_indices(e, n);
        if (!(e.alpha.config() == config)) {
            throw Error(ErrorKind::config_mismatch,
                        "factor alpha config differs from the requested config");
        }
        level.push_back(elem_to_matrix(e, n));
    }
    // Balanced pairing keeps the enclosure tight: a sequential sweep scales
    // every accumulated tail by all later factor norms, while here tails only
    // see the norms of actual subproducts, which benefit from cancellation.
    while (level.size() > 1) {
        std::vector<AlgMatrix> next;
        next.reserve(level.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            next.push_back(mat_mul(level[i], level[i + 1]));
        }
        if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return std::move(level.front());
}

std::vector<ElementaryFactor> invert_factors(const std::vector<ElementaryFactor>& factors) {
    std::vector<ElementaryFactor> out;
    out.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        out.emplace_back(it->i, it->j, neg(it->alpha));
    }
    return out;
}

namespace {

UnipotentBlock::Side factor_side(const ElementaryFactor& e) {
    return e.i > e.j ? UnipotentBlock::Side::lower : UnipotentBlock::Side::upper;
}

// Extracts the strict triangle of a unipotent product and checks that the
// rest of the matrix stayed exactly trivial. Same-side transvections close
// under multiplication, so a violation is a programming error.
UnipotentBlock extract_block(const AlgMatrix& p, UnipotentBlock::Side side) {
    const std::uint32_t n = p.size();
    UnipotentBlock block;
    block.side = side;
    block.g.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) {
            const TruncatedSeries& s = p.at(r, c);
            bool in_triangle = side == UnipotentBlock::Side::lower ? r > c : r < c;
            if (in_triangle) {
                block.g.push_back(s);
            } else if (r == c ? !s.is_one() : !s.is_zero()) {
                throw std::logic_error("unipotent merge left the strict triangle");
            }
        }
    }
    return block;
}

UnipotentBlock zero_block(UnipotentBlock::Side side, std::size_t n,
                          const AlgebraConfig& config) {
    UnipotentBlock block;
    block.side = side;
    block.g.assign(n * (n - 1) / 2, TruncatedSeries::zero(config));
    return block;
}

}  // namespace

std::vector<UnipotentBlock> group_ik_normal_form(const std::vector<ElementaryFactor>& factors,
                                                 std::size_t n) {
    std::vector<UnipotentBlock> blocks;
    if (factors.empty()) return blocks;
    const AlgebraConfig config = factors.front().alpha.config();

    std::size_t start = 0;
    while (start < factors.size()) {
        UnipotentBlock::Side side = factor_side(factors[start]);
        std::size_t stop = start + 1;
        while (stop < factors.size() && factor_side(factors[stop]) == side) ++stop;
        std::vector<ElementaryFactor> run(factors.begin() + static_cast<std::ptrdiff_t>(start),
                                          factors.begin() + static_cast<std::ptrdiff_t>(stop));
        if (blocks.empty() && side == UnipotentBlock::Side::upper) {
            blocks.push_back(zero_block(UnipotentBlock::Side::lower, n, config));
        }
        blocks.push_back(extract_block(product_of_factors(run, n, config), side));
        start = stop;
    }
    return blocks;
}

AlgMatrix block_to_matrix(const UnipotentBlock& block, std::size_t n,
                          const AlgebraConfig& config) {
    if (block.g.size() != n * (n - 1) / 2) {
        throw Error(ErrorKind::dimension_mismatch,
                    "unipotent block has the wrong strict-triangle length");
    }
    std::vector<TruncatedSeries> entries(n * n, TruncatedSeries::zero(config));
    for (std::size_t r = 0; r < n; ++r) entries[r * n + r] = TruncatedSeries::one(config);
    std::size_t pos = 0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            bool in_triangle = block.side == UnipotentBlock::Side::lower ? r > c : r < c;
            if (in_triangle) entries[r * n + c] = block.g[pos++];
        }
    }
    return AlgMatrix::from_entries(static_cast<std::uint32_t>(n), std::move(entries));
}

}  // namespace slfact
