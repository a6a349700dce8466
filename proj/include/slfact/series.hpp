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

// Enclosure arithmetic for elements of the analytic Wiener algebra on the
// closed unit polydisc: power series in d variables with absolutely summable
// coefficients, measured in the l1 coefficient norm.
//
// A TruncatedSeries stores a finite coefficient table (total degree <=
// degree_cap) plus a nonnegative tail radius tau. The value represents the
// set { p + g : ||g||_1 <= tau }, p being the stored polynomial. Every
// operation maps member elements to member elements: coefficient mass that
// cannot be represented (degree overflow, dropped dust, Neumann remainders,
// rounding slack) is folded into the tail, never discarded.

#ifndef SLFACT_SERIES_HPP
#define SLFACT_SERIES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "slfact/errors.hpp"

namespace slfact {

using Complex = std::complex<double>;

/// Shared parameters of one series algebra instance.
///
/// float_slack >= 1 multiplies every tail increment; together with a small
/// additive term per accumulated coefficient it stands in for directed
/// rounding. See README for the exact bookkeeping rule.
struct AlgebraConfig {
    std::uint32_t num_vars = 1;    // d, in [1, 7]
    std::uint32_t degree_cap = 64; // maximum stored total degree, in [1, 127]
    double float_slack = 1.0 + 1e-12;

    AlgebraConfig() = default;
    AlgebraConfig(std::uint32_t d, std::uint32_t cap, double slack = 1.0 + 1e-12);

    void validate() const;

    friend bool operator==(const AlgebraConfig& a, const AlgebraConfig& b) {
        return a.num_vars == b.num_vars && a.degree_cap == b.degree_cap &&
               a.float_slack == b.float_slack;
    }
};

/// One stored coefficient, for iteration and serialization.
struct SeriesTerm {
    std::vector<std::uint32_t> index; // multi-index (k_1, ..., k_d)
    Complex coeff;
};

struct EvalResult {
    Complex value;
    double radius; // tail-induced uncertainty, valid on the closed polydisc
};

class TruncatedSeries {
public:
    // Internal monomial key: total degree in the top byte, then one byte per
    // exponent, left-aligned. Numeric order on keys equals graded-lex order
    // on multi-indices, and key addition is multi-index addition (no lane
    // carries while exponents stay <= 127).
    using Key = std::uint64_t;
    struct Term {
        Key key;
        Complex coeff;
    };

    explicit TruncatedSeries(const AlgebraConfig& config);

    static TruncatedSeries zero(const AlgebraConfig& config);
    static TruncatedSeries one(const AlgebraConfig& config);
    static TruncatedSeries constant(const AlgebraConfig& config, Complex c);
    /// z_{var+1}, var in [0, d).
    static TruncatedSeries variable(const AlgebraConfig& config, std::uint32_t var);
    static TruncatedSeries monomial(const AlgebraConfig& config,
                                    const std::vector<std::uint32_t>& index, Complex c);
    /// Builds from (multi-index, coefficient) pairs plus a tail radius.
    /// Duplicate indices accumulate; indices beyond the cap are rejected.
    static TruncatedSeries from_terms(
        const AlgebraConfig& config,
        const std::vector<std::pair<std::vector<std::uint32_t>, Complex>>& coeffs,
        double tail = 0.0);

    const AlgebraConfig& config() const noexcept { return config_; }
    double tail() const noexcept { return tail_; }
    bool poly_is_zero() const noexcept { return terms_.empty(); }
    bool is_zero() const noexcept { return terms_.empty() && tail_ == 0.0; }
    /// Exact constant 1 with zero tail.
    bool is_one() const noexcept {
        return tail_ == 0.0 && terms_.size() == 1 && terms_[0].key == 0 &&
               terms_[0].coeff == Complex(1.0, 0.0);
    }
    std::size_t term_count() const noexcept { return terms_.size(); }

    Complex coeff(const std::vector<std::uint32_t>& index) const;
    Complex constant_coeff() const;

    /// Stored coefficients in graded-lex order (the serialization order).
    std::vector<SeriesTerm> terms() const;

    /// Sum of |coefficients|, excluding the tail.
    double poly_norm() const;

    /// Same enclosure with the tail enlarged by delta (slack applied).
    TruncatedSeries with_tail_added(double delta) const;
    /// Polynomial part only, tail forced to zero.
    TruncatedSeries poly_part() const;

    // Raw term access for algorithms/serialization within the library.
    const std::vector<Term>& raw_terms() const noexcept { return terms_; }

    static std::uint32_t key_degree(Key k) noexcept { return static_cast<std::uint32_t>(k >> 56); }
    static Key pack(const AlgebraConfig& config, const std::vector<std::uint32_t>& index);
    static std::vector<std::uint32_t> unpack(const AlgebraConfig& config, Key k);

    friend TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
    friend TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);
    friend TruncatedSeries neg(const TruncatedSeries& f);
    friend TruncatedSeries scale(const TruncatedSeries& f, Complex c);
    friend TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
    friend TruncatedSeries dilate(const TruncatedSeries& f, double r);
    friend class SeriesAccumulator;

private:
    AlgebraConfig config_;
    std::vector<Term> terms_; // sorted by key, nonzero, degree <= cap
    double tail_ = 0.0;
};

/// Upper bound on the l1 norm of every represented member: sum |a_k| + tail.
double norm(const TruncatedSeries& f);

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);

/// Exact negation: coefficients flip sign, the tail is unchanged.
TruncatedSeries neg(const TruncatedSeries& f);

TruncatedSeries scale(const TruncatedSeries& f, Complex c);
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);

/// Coefficient dilation a_k -> a_k r^{|k|}, 0 < r <= 1. Norm-nonincreasing;
/// the tail is unchanged.
TruncatedSeries dilate(const TruncatedSeries& f, double r);

/// Certified upper bound on ||f_r - f||_1: sum |a_k| (1 - r^{|k|}) + 2 tail.
double dilation_gap_bound(const TruncatedSeries& f, double r);

/// Certified reciprocal. Stage 1 builds a candidate by the power-series
/// division recurrence; stage 2 certifies it through a Neumann series on
/// e = 1 - f*b, requiring ||e|| < 1. The geometric remainder (below tol)
/// lands in the tail. Throws ErrorKind::not_invertible when the constant
/// term vanishes or certification fails.
TruncatedSeries reciprocal(const TruncatedSeries& f, double tol);

/// Polynomial value plus tail radius; requires |point_i| <= 1 for all i.
EvalResult evaluate(const TruncatedSeries& f, const std::vector<Complex>& point);

inline TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) { return sub(f, g); }
inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return mul(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f) { return neg(f); }

} // namespace slfact

#endif // SLFACT_SERIES_HPP
