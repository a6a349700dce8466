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

#include "slfact/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace slfact {

namespace {

// Coefficients below this magnitude are folded into the tail to keep tables
// sparse; the fold is rigorous in the l1 norm.
constexpr double kDropThreshold = 1e-300;

// Product tables additionally fold terms this far below the table maximum.
// Without it, geometrically decaying reciprocal mass silts every table up to
// the degree cap and multiplication cost explodes in several variables. The
// charge is the same rigorous l1 fold and sits far below the rounding fudge.
constexpr double kRelDust = 1e-22;

// Additive rounding allowance per accumulated coefficient, relative to the
// magnitude that passed through the accumulation. Charged only when an
// operation was actually inexact (two-sum / fma residual tests), so exact
// arithmetic keeps a zero tail. The true error of one rounded double op is
// below magnitude * 2^-53; 1e-15 leaves an order of magnitude of headroom.
constexpr double kRoundUnit = 1e-15;

double round_fudge(std::size_t ops, double magnitude) {
    return static_cast<double>(ops) * kRoundUnit * magnitude;
}

bool add_exact(double a, double b, double s) {
    return (s - a) == b && (s - b) == a;
}

bool cadd_exact(Complex a, Complex b, Complex s) {
    return add_exact(a.real(), b.real(), s.real()) &&
           add_exact(a.imag(), b.imag(), s.imag());
}

// Exactness of the complex product as evaluated by std::complex operator*
// (four real products, two sums; the build disables fp contraction).
bool cmul_exact(Complex a, Complex b) {
    double t1 = a.real() * b.real(), t2 = a.imag() * b.imag();
    double t3 = a.real() * b.imag(), t4 = a.imag() * b.real();
    if (std::fma(a.real(), b.real(), -t1) != 0.0) return false;
    if (std::fma(a.imag(), b.imag(), -t2) != 0.0) return false;
    if (std::fma(a.real(), b.imag(), -t3) != 0.0) return false;
    if (std::fma(a.imag(), b.real(), -t4) != 0.0) return false;
    return add_exact(t1, -t2, t1 - t2) && add_exact(t3, t4, t3 + t4);
}

void check_same_config(const AlgebraConfig& a, const AlgebraConfig& b) {
    if (!(a == b)) {
        throw Error(ErrorKind::config_mismatch,
                    "operands belong to different algebra configs");
    }
}

struct KeyHash {
    std::size_t operator()(std::uint64_t k) const noexcept {
        k ^= k >> 33;
        k *= 0x9E3779B97F4A7C15ull;
        k ^= k >> 29;
        return static_cast<std::size_t>(k);
    }
};

std::uint32_t lane_shift(const AlgebraConfig& config, std::uint32_t var) {
    (void)config;
    return 48u - 8u * var;
}

// Componentwise m <= k on packed keys (implies degree lane too).
bool divides(const AlgebraConfig& config, TruncatedSeries::Key m, TruncatedSeries::Key k) {
    for (std::uint32_t v = 0; v < config.num_vars; ++v) {
        std::uint32_t s = lane_shift(config, v);
        if (((m >> s) & 0xFFu) > ((k >> s) & 0xFFu)) return false;
    }
    return true;
}

} // namespace

// Builds a series from raw accumulated terms. Sorts, merges duplicates,
// drops sub-threshold dust into the tail, applies the slack rule once.
// Each inexact duplicate merge is charged into the tail; callers add
// extra_fudge for rounding they performed before handing the terms over.
class SeriesAccumulator {
public:
    static TruncatedSeries build(const AlgebraConfig& config,
                                 std::vector<TruncatedSeries::Term>&& terms,
                                 double tail_increment, double extra_fudge,
                                 double carried_tail = 0.0, double fold_rel = 0.0) {
        std::sort(terms.begin(), terms.end(),
                  [](const TruncatedSeries::Term& a, const TruncatedSeries::Term& b) {
                      return a.key < b.key;
                  });
        std::vector<TruncatedSeries::Term> merged;
        merged.reserve(terms.size());
        double dropped = 0.0;
        double fudge = extra_fudge;
        for (std::size_t i = 0; i < terms.size();) {
            TruncatedSeries::Term t = terms[i++];
            while (i < terms.size() && terms[i].key == t.key) {
                Complex a = t.coeff, b = terms[i++].coeff;
                t.coeff = a + b;
                if (!cadd_exact(a, b, t.coeff)) {
                    fudge += round_fudge(1, std::abs(a) + std::abs(b));
                }
            }
            if (std::abs(t.coeff) < kDropThreshold) {
                dropped += std::abs(t.coeff);
            } else {
                merged.push_back(t);
            }
        }
        if (fold_rel > 0.0 && !merged.empty()) {
            double maxmag = 0.0;
            for (const auto& t : merged) maxmag = std::max(maxmag, std::abs(t.coeff));
            const double cut = fold_rel * maxmag;
            std::size_t w = 0;
            for (const auto& t : merged) {
                if (std::abs(t.coeff) < cut) {
                    dropped += std::abs(t.coeff);
                } else {
                    merged[w++] = t;
                }
            }
            merged.resize(w);
        }
        TruncatedSeries out(config);
        out.terms_ = std::move(merged);
        out.tail_ = carried_tail +
                    (tail_increment + dropped) * config.float_slack + fudge;
        return out;
    }
};

AlgebraConfig::AlgebraConfig(std::uint32_t d, std::uint32_t cap, double slack)
    : num_vars(d), degree_cap(cap), float_slack(slack) {
    validate();
}

void AlgebraConfig::validate() const {
    if (num_vars < 1 || num_vars > 7) {
        throw Error(ErrorKind::domain_error,
                    "num_vars must be in [1, 7] (packed multi-index representation)");
    }
    if (degree_cap < 1 || degree_cap > 127) {
        throw Error(ErrorKind::domain_error, "degree_cap must be in [1, 127]");
    }
    if (!(float_slack >= 1.0)) {
        throw Error(ErrorKind::domain_error, "float_slack must be >= 1");
    }
}

TruncatedSeries::TruncatedSeries(const AlgebraConfig& config) : config_(config) {
    config_.validate();
}

TruncatedSeries TruncatedSeries::zero(const AlgebraConfig& config) {
    return TruncatedSeries(config);
}

TruncatedSeries TruncatedSeries::one(const AlgebraConfig& config) {
    return constant(config, Complex(1.0, 0.0));
}

TruncatedSeries TruncatedSeries::constant(const AlgebraConfig& config, Complex c) {
    TruncatedSeries out(config);
    if (std::abs(c) >= kDropThreshold) {
        out.terms_.push_back({0u, c});
    } else {
        out.tail_ = std::abs(c);
    }
    return out;
}

TruncatedSeries TruncatedSeries::variable(const AlgebraConfig& config, std::uint32_t var) {
    if (var >= config.num_vars) {
        throw Error(ErrorKind::index_out_of_range, "variable index out of range");
    }
    std::vector<std::uint32_t> idx(config.num_vars, 0u);
    idx[var] = 1u;
    return monomial(config, idx, Complex(1.0, 0.0));
}

TruncatedSeries TruncatedSeries::monomial(const AlgebraConfig& config,
                                          const std::vector<std::uint32_t>& index, Complex c) {
    TruncatedSeries out(config);
    Key k = pack(config, index);
    if (std::abs(c) >= kDropThreshold) {
        out.terms_.push_back({k, c});
    } else {
        out.tail_ = std::abs(c);
    }
    return out;
}

TruncatedSeries TruncatedSeries::from_terms(
    const AlgebraConfig& config,
    const std::vector<std::pair<std::vector<std::uint32_t>, Complex>>& coeffs, double tail) {
    if (tail < 0.0) {
        throw Error(ErrorKind::domain_error, "tail must be nonnegative");
    }
    std::vector<Term> raw;
    raw.reserve(coeffs.size());
    for (const auto& [idx, c] : coeffs) {
        raw.push_back({pack(config, idx), c});
    }
    TruncatedSeries out = SeriesAccumulator::build(config, std::move(raw), 0.0, 0.0, tail);
    return out;
}

TruncatedSeries::Key TruncatedSeries::pack(const AlgebraConfig& config,
                                           const std::vector<std::uint32_t>& index) {
    if (index.size() != config.num_vars) {
        throw Error(ErrorKind::domain_error, "multi-index length does not match num_vars");
    }
    std::uint32_t total = 0;
    Key k = 0;
    for (std::uint32_t v = 0; v < config.num_vars; ++v) {
        if (index[v] > 127u) {
            throw Error(ErrorKind::domain_error, "exponent exceeds representable range");
        }
        total += index[v];
        k |= static_cast<Key>(index[v]) << lane_shift(config, v);
    }
    if (total > config.degree_cap) {
        throw Error(ErrorKind::domain_error, "total degree exceeds degree_cap");
    }
    k |= static_cast<Key>(total) << 56;
    return k;
}

std::vector<std::uint32_t> TruncatedSeries::unpack(const AlgebraConfig& config, Key k) {
    std::vector<std::uint32_t> idx(config.num_vars);
    for (std::uint32_t v = 0; v < config.num_vars; ++v) {
        idx[v] = static_cast<std::uint32_t>((k >> lane_shift(config, v)) & 0xFFu);
    }
    return idx;
}

Complex TruncatedSeries::coeff(const std::vector<std::uint32_t>& index) const {
    Key k = pack(config_, index);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, Key key) { return t.key < key; });
    if (it != terms_.end() && it->key == k) return it->coeff;
    return Complex(0.0, 0.0);
}

Complex TruncatedSeries::constant_coeff() const {
    if (!terms_.empty() && terms_.front().key == 0u) return terms_.front().coeff;
    return Complex(0.0, 0.0);
}

std::vector<SeriesTerm> TruncatedSeries::terms() const {
    std::vector<SeriesTerm> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        out.push_back({unpack(config_, t.key), t.coeff});
    }
    return out;
}

double TruncatedSeries::poly_norm() const {
    double s = 0.0;
    for (const Term& t : terms_) s += std::abs(t.coeff);
    return s;
}

TruncatedSeries TruncatedSeries::with_tail_added(double delta) const {
    if (delta < 0.0) {
        throw Error(ErrorKind::domain_error, "tail increment must be nonnegative");
    }
    TruncatedSeries out = *this;
    out.tail_ += delta * config_.float_slack;
    return out;
}

TruncatedSeries TruncatedSeries::poly_part() const {
    TruncatedSeries out = *this;
    out.tail_ = 0.0;
    return out;
}

double norm(const TruncatedSeries& f) {
    return f.poly_norm() + f.tail();
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_same_config(f.config_, g.config_);
    std::vector<TruncatedSeries::Term> raw;
    raw.reserve(f.terms_.size() + g.terms_.size());
    raw.insert(raw.end(), f.terms_.begin(), f.terms_.end());
    raw.insert(raw.end(), g.terms_.begin(), g.terms_.end());
    return SeriesAccumulator::build(f.config_, std::move(raw), f.tail_ + g.tail_, 0.0);
}

TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_same_config(f.config_, g.config_);
    std::vector<TruncatedSeries::Term> raw;
    raw.reserve(f.terms_.size() + g.terms_.size());
    raw.insert(raw.end(), f.terms_.begin(), f.terms_.end());
    for (const auto& t : g.terms_) raw.push_back({t.key, -t.coeff});
    return SeriesAccumulator::build(f.config_, std::move(raw), f.tail_ + g.tail_, 0.0);
}

TruncatedSeries neg(const TruncatedSeries& f) {
    TruncatedSeries out = f;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

TruncatedSeries scale(const TruncatedSeries& f, Complex c) {
    double ac = std::abs(c);
    std::vector<TruncatedSeries::Term> raw;
    raw.reserve(f.terms_.size());
    double fudge = 0.0;
    for (const auto& t : f.terms_) {
        raw.push_back({t.key, t.coeff * c});
        if (!cmul_exact(t.coeff, c)) {
            fudge += round_fudge(1, ac * std::abs(t.coeff));
        }
    }
    return SeriesAccumulator::build(f.config_, std::move(raw), f.tail_ * ac, fudge);
}

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_same_config(f.config_, g.config_);
    const AlgebraConfig& cfg = f.config_;
    // Identity fast paths keep exact operands exact.
    if (f.is_one()) return g;
    if (g.is_one()) return f;
    std::unordered_map<TruncatedSeries::Key, Complex, KeyHash> acc;
    acc.reserve(std::min<std::size_t>(f.terms_.size() * g.terms_.size(), 1u << 16) + 8);
    double overflow = 0.0;
    double fudge = 0.0;
    for (const auto& a : f.terms_) {
        for (const auto& b : g.terms_) {
            TruncatedSeries::Key k = a.key + b.key;
            Complex prod = a.coeff * b.coeff;
            if (!cmul_exact(a.coeff, b.coeff)) {
                fudge += round_fudge(1, std::abs(a.coeff) * std::abs(b.coeff));
            }
            if (TruncatedSeries::key_degree(k) > cfg.degree_cap) {
                overflow += std::abs(prod);
            } else {
                Complex& slot = acc[k];
                Complex before = slot;
                slot += prod;
                if (!cadd_exact(before, prod, slot)) {
                    fudge += round_fudge(1, std::abs(before) + std::abs(prod));
                }
            }
        }
    }
    std::vector<TruncatedSeries::Term> raw;
    raw.reserve(acc.size());
    for (const auto& [k, c] : acc) raw.push_back({k, c});
    double tail_inc = norm(f) * g.tail_ + f.tail_ * g.poly_norm() + overflow;
    return SeriesAccumulator::build(cfg, std::move(raw), tail_inc, fudge, 0.0, kRelDust);
}

TruncatedSeries dilate(const TruncatedSeries& f, double r) {
    if (!(r > 0.0 && r <= 1.0)) {
        throw Error(ErrorKind::domain_error, "dilation radius must lie in (0, 1]");
    }
    TruncatedSeries out(f.config_);
    out.tail_ = f.tail_;
    out.terms_.reserve(f.terms_.size());
    double dropped = 0.0;
    for (const auto& t : f.terms_) {
        Complex c = t.coeff * std::pow(r, static_cast<int>(TruncatedSeries::key_degree(t.key)));
        if (std::abs(c) < kDropThreshold) {
            dropped += std::abs(c);
        } else {
            out.terms_.push_back({t.key, c});
        }
    }
    out.tail_ += dropped * f.config_.float_slack;
    return out;
}

double dilation_gap_bound(const TruncatedSeries& f, double r) {
    if (!(r > 0.0 && r <= 1.0)) {
        throw Error(ErrorKind::domain_error, "dilation radius must lie in (0, 1]");
    }
    double s = 0.0;
    for (const auto& t : f.raw_terms()) {
        double rk = std::pow(r, static_cast<int>(TruncatedSeries::key_degree(t.key)));
        s += std::abs(t.coeff) * (1.0 - rk);
    }
    return s + 2.0 * f.tail();
}

namespace {

// Partial Neumann sum of sum_k e^k with the geometric remainder folded into
// the tail. rho = norm(e) must be < 1 (checked by the caller).
TruncatedSeries neumann_sum(const TruncatedSeries& e, double rho, double tol) {
    const AlgebraConfig& cfg = e.config();
    TruncatedSeries s = TruncatedSeries::one(cfg);
    TruncatedSeries term = TruncatedSeries::one(cfg);
    double remainder = rho / (1.0 - rho);
    std::size_t m = 0;
    while (remainder >= tol) {
        if (++m > 4096) {
            throw Error(ErrorKind::not_invertible,
                        "Neumann series converges too slowly (residual norm near 1)");
        }
        term = mul(term, e);
        s = add(s, term);
        remainder *= rho;
    }
    return s.with_tail_added(remainder);
}

} // namespace

TruncatedSeries reciprocal(const TruncatedSeries& f, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "tol must be positive");
    }
    const AlgebraConfig& cfg = f.config();
    Complex a0 = f.constant_coeff();
    if (std::abs(a0) == 0.0) {
        throw Error(ErrorKind::not_invertible, "constant term is zero");
    }
    Complex inv_a0 = Complex(1.0, 0.0) / a0;

    // Stage 1: division recurrence b_k = -(1/a0) sum_{0<m<=k} a_m b_{k-m}.
    std::vector<TruncatedSeries::Term> a_plus;
    for (const auto& t : f.raw_terms()) {
        if (t.key != 0u) a_plus.push_back(t);
    }
    std::unordered_map<TruncatedSeries::Key, Complex, KeyHash> b;
    b[0u] = inv_a0;
    std::set<TruncatedSeries::Key> pending;
    for (const auto& m : a_plus) {
        if (TruncatedSeries::key_degree(m.key) <= cfg.degree_cap) pending.insert(m.key);
    }
    while (!pending.empty()) {
        TruncatedSeries::Key k = *pending.begin();
        pending.erase(pending.begin());
        Complex s(0.0, 0.0);
        for (const auto& m : a_plus) {
            if (!divides(cfg, m.key, k)) continue;
            auto it = b.find(k - m.key);
            if (it != b.end()) s += m.coeff * it->second;
        }
        Complex bk = -inv_a0 * s;
        if (std::abs(bk) >= kDropThreshold) {
            b[k] = bk;
            for (const auto& m : a_plus) {
                TruncatedSeries::Key next = k + m.key;
                if (TruncatedSeries::key_degree(next) <= cfg.degree_cap) pending.insert(next);
            }
        }
    }
    std::vector<TruncatedSeries::Term> braw;
    braw.reserve(b.size());
    for (const auto& [k, c] : b) braw.push_back({k, c});
    TruncatedSeries candidate = SeriesAccumulator::build(cfg, std::move(braw), 0.0, 0.0);

    // Stage 2: certify. e = 1 - f*candidate; the Neumann sum repairs the
    // residual and its remainder bound lands in the tail.
    TruncatedSeries e = sub(TruncatedSeries::one(cfg), mul(f, candidate));
    double rho = norm(e);
    if (!(rho < 1.0)) {
        throw Error(ErrorKind::not_invertible,
                    "certification failed: residual norm >= 1 (no inverse in the algebra)");
    }
    if (rho == 0.0) return candidate;
    return mul(candidate, neumann_sum(e, rho, tol));
}

EvalResult evaluate(const TruncatedSeries& f, const std::vector<Complex>& point) {
    const AlgebraConfig& cfg = f.config();
    if (point.size() != cfg.num_vars) {
        throw Error(ErrorKind::domain_error, "evaluation point has wrong dimension");
    }
    for (const Complex& z : point) {
        if (std::abs(z) > 1.0 + 1e-12) {
            throw Error(ErrorKind::domain_error, "evaluation point outside the closed polydisc");
        }
    }
    Complex value(0.0, 0.0);
    for (const auto& t : f.raw_terms()) {
        Complex monomial(1.0, 0.0);
        for (std::uint32_t v = 0; v < cfg.num_vars; ++v) {
            std::uint32_t e = static_cast<std::uint32_t>((t.key >> (48u - 8u * v)) & 0xFFu);
            for (std::uint32_t p = 0; p < e; ++p) monomial *= point[v];
        }
        value += t.coeff * monomial;
    }
    return {value, f.tail()};
}

} // namespace slfact
