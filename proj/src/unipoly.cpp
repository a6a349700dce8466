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

#include "slfact/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "slfact/errors.hpp"
#include "slfact/nearid.hpp"

namespace slfact {

namespace {

// Degree decisions below this fraction of the working magnitude treat a
// coefficient as zero. Round-trip acceptance, not symbolic exactness, is the
// ground truth for this choice.
constexpr double kDropTolRel = 1e-12;

// A pivot whose leading coefficient sits this far below the pivot's own
// magnitude is cancellation dust; dividing by it explodes the quotient.
constexpr double kLeadDustRel = 1e-9;

// Determinant must match 1 coefficientwise at this tolerance.
constexpr double kDetTol = 1e-9;

std::vector<Complex> to_dense(const TruncatedSeries& f) {
    std::vector<Complex> c;
    for (const auto& t : f.raw_terms()) {
        std::size_t d = TruncatedSeries::key_degree(t.key);
        if (c.size() <= d) c.resize(d + 1, Complex(0.0, 0.0));
        c[d] = t.coeff;
    }
    return c;
}

TruncatedSeries from_dense(const AlgebraConfig& cfg, const std::vector<Complex>& c) {
    std::vector<std::pair<std::vector<std::uint32_t>, Complex>> terms;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != Complex(0.0, 0.0)) {
            terms.push_back({{static_cast<std::uint32_t>(i)}, c[i]});
        }
    }
    return TruncatedSeries::from_terms(cfg, terms);
}

double max_mag(const std::vector<Complex>& c) {
    double m = 0.0;
    for (const Complex& x : c) m = std::max(m, std::abs(x));
    return m;
}

// Highest index with |coefficient| > thresh, or -1 when none.
int eff_deg(const std::vector<Complex>& c, double thresh) {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (std::abs(c[static_cast<std::size_t>(i)]) > thresh) return i;
    }
    return -1;
}

}  // namespace

std::pair<TruncatedSeries, TruncatedSeries> poly_divmod(const TruncatedSeries& a,
                                                        const TruncatedSeries& b,
                                                        double drop_tol) {
    const AlgebraConfig& cfg = a.config();
    if (cfg.num_vars != 1 || b.config().num_vars != 1) {
        throw Error(ErrorKind::domain_error, "poly_divmod needs univariate series");
    }
    std::vector<Complex> r = to_dense(a);
    std::vector<Complex> d = to_dense(b);
    double thresh = drop_tol * std::max(max_mag(r), max_mag(d));
    int db = eff_deg(d, thresh);
    if (db < 0) {
        throw Error(ErrorKind::division_by_zero,
                    "divisor is zero at the working tolerance");
    }
    std::vector<Complex> q(r.size() > static_cast<std::size_t>(db)
                               ? r.size() - static_cast<std::size_t>(db)
                               : 0,
                           Complex(0.0, 0.0));
    int dr = eff_deg(r, thresh);
    while (dr >= db) {
        Complex t = r[static_cast<std::size_t>(dr)] / d[static_cast<std::size_t>(db)];
        q[static_cast<std::size_t>(dr - db)] += t;
        for (int m = 0; m < db; ++m) {
            r[static_cast<std::size_t>(dr - db + m)] -= t * d[static_cast<std::size_t>(m)];
        }
        // The leading slot cancels by construction.
        r[static_cast<std::size_t>(dr)] = Complex(0.0, 0.0);
        int next = eff_deg(r, thresh);
        if (next >= dr) {
            throw Error(ErrorKind::division_by_zero,
                        "division failed to reduce the degree");
        }
        dr = next;
    }
    return {from_dense(cfg, q), from_dense(cfg, r)};
}

namespace {

// The elimination keeps its working matrix as dense coefficient rows in
// extended precision. Accumulation noise then sits far below the relative
// drop tolerance, so degree decisions stay faithful to the exact remainder
// sequence much deeper into a cancellation-heavy word.

using LComplex = std::complex<long double>;
using LPoly = std::vector<LComplex>;

LPoly lift(const TruncatedSeries& f) {
    LPoly c;
    for (const auto& t : f.raw_terms()) {
        std::size_t d = TruncatedSeries::key_degree(t.key);
        if (c.size() <= d) c.resize(d + 1, LComplex(0.0L, 0.0L));
        c[d] = LComplex(t.coeff.real(), t.coeff.imag());
    }
    return c;
}

long double lmax_mag(const LPoly& c) {
    long double m = 0.0L;
    for (const LComplex& x : c) m = std::max(m, std::abs(x));
    return m;
}

// Highest index with |coefficient| > thresh, or -1 when none.
int leff_deg(const LPoly& c, long double thresh) {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (std::abs(c[static_cast<std::size_t>(i)]) > thresh) return i;
    }
    return -1;
}

// Rounds to storage precision. Mass above the degree cap that is not
// elimination dust cannot be represented and refuses; non-finite rounding
// results surface as a breakdown instead of propagating.
TruncatedSeries lower(const AlgebraConfig& cfg, const LPoly& c) {
    long double m = lmax_mag(c);
    std::vector<std::pair<std::vector<std::uint32_t>, Complex>> terms;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == LComplex(0.0L, 0.0L)) continue;
        if (i > cfg.degree_cap) {
            if (std::abs(c[i]) <= kDropTolRel * m) continue;
            throw Error(ErrorKind::unsupported,
                        "working degree exceeded the representable cap");
        }
        Complex x(static_cast<double>(c[i].real()),
                  static_cast<double>(c[i].imag()));
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw Error(ErrorKind::pivot_breakdown,
                        "elimination magnitudes overflowed");
        }
        if (x != Complex(0.0, 0.0)) {
            terms.push_back({{static_cast<std::uint32_t>(i)}, x});
        }
    }
    return TruncatedSeries::from_terms(cfg, terms);
}

LPoly lneg(LPoly c) {
    for (LComplex& x : c) x = -x;
    return c;
}

struct LDiv {
    LPoly q, r;
};

// poly_divmod on dense extended-precision coefficients with an absolute
// zero threshold.
LDiv ldivmod(const LPoly& a, const LPoly& b, long double thresh) {
    int db = leff_deg(b, thresh);
    if (db < 0) {
        throw Error(ErrorKind::division_by_zero,
                    "divisor is zero at the working tolerance");
    }
    LPoly r = a;
    LPoly q(r.size() > static_cast<std::size_t>(db)
                ? r.size() - static_cast<std::size_t>(db)
                : 0,
            LComplex(0.0L, 0.0L));
    int dr = leff_deg(r, thresh);
    while (dr >= db) {
        LComplex t = r[static_cast<std::size_t>(dr)] / b[static_cast<std::size_t>(db)];
        q[static_cast<std::size_t>(dr - db)] += t;
        for (int m = 0; m < db; ++m) {
            r[static_cast<std::size_t>(dr - db + m)] -= t * b[static_cast<std::size_t>(m)];
        }
        r[static_cast<std::size_t>(dr)] = LComplex(0.0L, 0.0L);
        int next = leff_deg(r, thresh);
        if (next >= dr) {
            throw Error(ErrorKind::division_by_zero,
                        "division failed to reduce the degree");
        }
        dr = next;
    }
    return {std::move(q), std::move(r)};
}

struct Eliminator {
    std::uint32_t n;
    AlgebraConfig cfg;
    long double lead_dust;
    std::vector<LPoly> w;
    std::vector<ElementaryFactor> ops;  // applied left operations, in order

    Eliminator(const AlgMatrix& F, long double lead_dust_)
        : n(F.size()), cfg(F.config()), lead_dust(lead_dust_) {
        w.reserve(static_cast<std::size_t>(n) * n);
        for (const TruncatedSeries& e : F.entries()) w.push_back(lift(e));
    }

    LPoly& at(std::uint32_t r, std::uint32_t c) {
        return w[static_cast<std::size_t>(r) * n + c];
    }

    // row_r += alpha * row_k, recorded as the left factor E_{rk}(alpha).
    // The alpha is rounded to storage precision first and the rounded value
    // is what the state applies, so the transcript and the working matrix
    // never diverge; extended precision only suppresses noise between
    // operations. The recorded factors are candidates; the caller certifies
    // them by a direct product residual.
    void row_op(std::uint32_t r, std::uint32_t k, const LPoly& alpha) {
        TruncatedSeries a = lower(cfg, alpha);
        ops.emplace_back(r + 1, k + 1, a);
        LPoly ar = lift(a);
        if (ar.empty()) return;
        for (std::uint32_t c = 0; c < n; ++c) {
            const LPoly& src = at(k, c);
            if (src.empty()) continue;
            LPoly& dst = at(r, c);
            if (dst.size() < ar.size() + src.size() - 1) {
                dst.resize(ar.size() + src.size() - 1, LComplex(0.0L, 0.0L));
            }
            for (std::size_t i = 0; i < ar.size(); ++i) {
                if (ar[i] == LComplex(0.0L, 0.0L)) continue;
                for (std::size_t j = 0; j < src.size(); ++j) {
                    dst[i + j] += ar[i] * src[j];
                }
            }
        }
    }

    // Signed swap (row_p, row_r) -> (row_r, -row_p) as a transvection triple.
    void signed_swap(std::uint32_t p, std::uint32_t r) {
        LPoly one{LComplex(1.0L, 0.0L)};
        row_op(p, r, one);
        row_op(r, p, lneg(one));
        row_op(p, r, one);
    }

    // Clears column k below the diagonal by gcd grinding; the surviving
    // minimal-degree entry ends at the diagonal. The pivot degree strictly
    // decreases between reduction passes, so the generous iteration budget
    // only trips on a genuine breakdown.
    void reduce_column(std::uint32_t k) {
        std::size_t budget = 4u * (cfg.degree_cap + 2u) + 2u * n;
        for (std::size_t iter = 0;; ++iter) {
            if (iter > budget) {
                throw Error(ErrorKind::pivot_breakdown,
                            "pivot degree failed to decrease");
            }
            long double colmax = 0.0L;
            for (std::uint32_t r = k; r < n; ++r) {
                colmax = std::max(colmax, lmax_mag(at(r, k)));
            }
            long double thresh = kDropTolRel * colmax;
            int pivot_deg = -1;
            std::uint32_t pivot_row = k;
            std::uint32_t live_below = 0;
            for (std::uint32_t r = k; r < n; ++r) {
                int d = leff_deg(at(r, k), thresh);
                if (d < 0) continue;
                if (r > k) ++live_below;
                if (pivot_deg < 0 || d < pivot_deg) {
                    pivot_deg = d;
                    pivot_row = r;
                }
            }
            if (pivot_deg < 0) {
                throw Error(ErrorKind::pivot_breakdown,
                            "column vanished during elimination");
            }
            if (pivot_row == k && live_below == 0) return;
            if (pivot_row != k) {
                signed_swap(k, pivot_row);
                continue;
            }
            // A leading coefficient that is cancellation dust against the
            // pivot's own body would explode the quotients below. Zero it
            // and re-decide the degree; the discarded mass is covered by the
            // certified residual. At the default threshold this only removes
            // rounding artifacts; the retry ladder raises it to deliberately
            // trade accuracy for moderate quotients, leaving the repair to
            // the near-identity polish.
            {
                LPoly& pv = at(k, k);
                long double selfmax = lmax_mag(pv);
                int pd = leff_deg(pv, thresh);
                bool trimmed = false;
                while (pd >= 0 && std::abs(pv[static_cast<std::size_t>(pd)]) <
                                      lead_dust * selfmax) {
                    pv[static_cast<std::size_t>(pd)] = LComplex(0.0L, 0.0L);
                    pd = leff_deg(pv, thresh);
                    trimmed = true;
                }
                if (trimmed) continue;
            }
            for (std::uint32_t r = k + 1; r < n; ++r) {
                if (leff_deg(at(r, k), thresh) < 0) continue;
                long double pair_thresh =
                    kDropTolRel * std::max(lmax_mag(at(r, k)), lmax_mag(at(k, k)));
                LDiv dm = ldivmod(at(r, k), at(k, k), pair_thresh);
                row_op(r, k, lneg(std::move(dm.q)));
                // Overwrite the slot with the division's own remainder,
                // hard-zeroing its sub-threshold dust. Recomputing the slot
                // through row_op leaves dust that can later pose as a leading
                // coefficient and blow up the next quotient; cleaned here it
                // flows into the certified residual instead, and the pivot
                // degree decrease becomes structural.
                for (LComplex& x : dm.r) {
                    if (std::abs(x) <= pair_thresh) x = LComplex(0.0L, 0.0L);
                }
                at(r, k) = std::move(dm.r);
            }
        }
    }

    // One-shot back-substitution against the pivot's constant coefficient;
    // any nonconstant pivot mass leaves dust for the verified residual.
    void clear_above() {
        for (std::uint32_t c = n; c-- > 1;) {
            LComplex c0 = at(c, c).empty() ? LComplex(0.0L, 0.0L) : at(c, c)[0];
            if (std::abs(c0) == 0.0L) continue;  // diagonal step will refuse
            for (std::uint32_t r = 0; r < c; ++r) {
                if (lmax_mag(at(r, c)) == 0.0L) continue;
                LPoly q = at(r, c);
                for (LComplex& x : q) x /= c0;
                row_op(r, c, lneg(std::move(q)));
            }
        }
    }
};

}  // namespace

namespace {
Factorization core_impl(const AlgMatrix& F, double tol, long double lead_dust);
}

Factorization euclid_factor_core(const AlgMatrix& F, double tol) {
    return core_impl(F, tol, kLeadDustRel);
}

namespace {

Factorization core_impl(const AlgMatrix& F, double tol, long double lead_dust) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "tol must be positive");
    }
    if (F.config().num_vars != 1) {
        throw Error(ErrorKind::unsupported,
                    "Euclidean elimination handles exactly one variable");
    }
    for (const TruncatedSeries& e : F.entries()) {
        if (e.tail() != 0.0) {
            throw Error(ErrorKind::unsupported,
                        "Euclidean elimination needs zero entry tails");
        }
    }
    const std::uint32_t n = F.size();
    Eliminator el(F, lead_dust);
    for (std::uint32_t k = 0; k < n; ++k) el.reduce_column(k);
    el.clear_above();

    AlgMatrix D = AlgMatrix::identity(n, F.config());
    for (std::uint32_t k = 0; k < n; ++k) {
        D = D.with_entry(k, k, lower(F.config(), el.at(k, k)));
    }
    DiagonalFactors diag = [&] {
        try {
            return diagonal_to_factors(D, tol / (100.0 * n * n * n));
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::not_invertible) {
                throw Error(ErrorKind::not_invertible_diagonal,
                            "a final diagonal unit is not invertible on the disc");
            }
            throw;
        }
    }();

    // L_m ... L_1 F = D, so F = L_1^-1 ... L_m^-1 D.
    Factorization out;
    out.n = n;
    out.method = Method::euclid;
    out.factors.reserve(el.ops.size() + diag.factors.size());
    for (const ElementaryFactor& e : el.ops) {
        out.factors.emplace_back(e.i, e.j, neg(e.alpha));
    }
    for (ElementaryFactor& e : diag.factors) {
        out.factors.push_back(std::move(e));
    }
    out.residual_bound =
        mat_norm(mat_sub(product_of_factors(out.factors, n, F.config()), F));
    return out;
}

}  // namespace

namespace {

AlgMatrix transpose_mat(const AlgMatrix& F) {
    const std::uint32_t n = F.size();
    std::vector<TruncatedSeries> e;
    e.reserve(static_cast<std::size_t>(n) * n);
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) {
            e.push_back(F.entries()[static_cast<std::size_t>(c) * n + r]);
        }
    }
    return AlgMatrix::from_entries(n, std::move(e));
}

// Exact adjugate for n <= 3; equals the inverse when det = 1. Entries whose
// cofactor degree overflows the cap lose that mass to the stripped tails,
// and the attempt then fails its certification instead of lying.
AlgMatrix adjugate_mat(const AlgMatrix& F) {
    const std::uint32_t n = F.size();
    const std::vector<TruncatedSeries>& e = F.entries();
    auto E = [&](std::uint32_t r, std::uint32_t c) -> const TruncatedSeries& {
        return e[static_cast<std::size_t>(r) * n + c];
    };
    std::vector<TruncatedSeries> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    if (n == 2) {
        out = {E(1, 1), neg(E(0, 1)), neg(E(1, 0)), E(0, 0)};
    } else {
        for (std::uint32_t r = 0; r < 3; ++r) {
            for (std::uint32_t c = 0; c < 3; ++c) {
                // adj(r, c) is the (c, r) cofactor.
                std::uint32_t i0 = (c == 0) ? 1 : 0;
                std::uint32_t i1 = (c == 2) ? 1 : 2;
                std::uint32_t j0 = (r == 0) ? 1 : 0;
                std::uint32_t j1 = (r == 2) ? 1 : 2;
                TruncatedSeries m =
                    sub(mul(E(i0, j0), E(i1, j1)), mul(E(i0, j1), E(i1, j0)));
                if ((r + c) % 2 == 1) m = neg(m);
                out.push_back(std::move(m));
            }
        }
    }
    for (TruncatedSeries& t : out) t = t.poly_part();
    return AlgMatrix::from_entries(n, std::move(out));
}

// Attempt 0 factors F itself; 1 the transpose; 2 the adjugate; 3 the
// adjugate of the transpose. Each is an exact reformulation whose factor
// word maps back to a word for F without arithmetic on the alphas beyond
// negation, so the mapped word is recertified against the original input.
AlgMatrix build_attempt(const AlgMatrix& F, int op) {
    switch (op) {
        case 1:
            return transpose_mat(F);
        case 2:
            return adjugate_mat(F);
        case 3:
            return adjugate_mat(transpose_mat(F));
        default:
            return F;
    }
}

// P^T reverses the word and swaps indices; adj(P) = P^-1 reverses the word
// and negates; adj(P^T) = (prod)^-T keeps the order, swaps, and negates.
std::vector<ElementaryFactor> map_back(std::vector<ElementaryFactor> fs, int op) {
    switch (op) {
        case 1:
            std::reverse(fs.begin(), fs.end());
            for (ElementaryFactor& f : fs) std::swap(f.i, f.j);
            return fs;
        case 2:
            return invert_factors(fs);
        case 3:
            for (ElementaryFactor& f : fs) {
                std::swap(f.i, f.j);
                f.alpha = neg(f.alpha);
            }
            return fs;
        default:
            return fs;
    }
}

// A near miss differs from F by the correction F * P^-1 with P the word's
// own playback. P^-1 comes from the exact adjugate and a Neumann-series
// reciprocal of det(P), never from inverting the word itself, so wild alphas
// inside the word cannot poison the correction. det(P) is 1 + e with e the
// playback rounding drift; left uncorrected it floors the final residual at
// ||e|| * ||F||, so the series divides it out in stripped poly arithmetic
// (a certified reciprocal would drag a tail radius through the big product
// norms instead). Correction errors get multiplied by ||P|| when the word is
// replayed, hence the norm-scaled inner tolerance. The correction factors
// prepend and the whole thing is recertified against F.
std::optional<Factorization> polish_candidate(const AlgMatrix& F,
                                              const Factorization& base,
                                              double tol) {
    const std::uint32_t n = F.size();
    if (n != 2 && n != 3) return std::nullopt;
    const AlgebraConfig& cfg = F.config();
    try {
        std::vector<TruncatedSeries> pe =
            product_of_factors(base.factors, n, cfg).entries();
        for (TruncatedSeries& t : pe) t = t.poly_part();
        AlgMatrix P = AlgMatrix::from_entries(n, std::move(pe));
        TruncatedSeries one = TruncatedSeries::one(cfg);
        TruncatedSeries e = sub(det(P), one).poly_part();
        if (!(e.poly_norm() < 0.1)) return std::nullopt;
        TruncatedSeries rec = one;
        TruncatedSeries pw = e;
        for (int k = 1; k <= 40 && pw.poly_norm() > 1e-17; ++k) {
            rec = (k % 2 == 1 ? sub(rec, pw) : add(rec, pw)).poly_part();
            pw = mul(pw, e).poly_part();
        }
        std::vector<TruncatedSeries> de = mat_mul(F, adjugate_mat(P)).entries();
        for (TruncatedSeries& t : de) t = mul(t, rec).poly_part();
        AlgMatrix Dc = AlgMatrix::from_entries(n, std::move(de));
        if (!(identity_distance(Dc) < 0.35)) return std::nullopt;
        double inner = 0.25 * tol / std::max(1.0, mat_norm(P));
        Factorization fix = factor_near_identity(Dc, std::max(inner, 1e-14));
        Factorization out;
        out.n = n;
        out.method = Method::euclid;
        out.factors = std::move(fix.factors);
        out.factors.insert(out.factors.end(), base.factors.begin(),
                           base.factors.end());
        out.residual_bound =
            mat_norm(mat_sub(product_of_factors(out.factors, n, cfg), F));
        if (!(out.residual_bound < base.residual_bound)) return std::nullopt;
        return out;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Newton-style repair loop: each round contracts the residual roughly
// quadratically until it hits the word's own replay noise, so moderate words
// converge in a few rounds while wild words stop improving immediately.
std::optional<Factorization> polish_iterated(const AlgMatrix& F,
                                             const Factorization& base,
                                             double tol) {
    std::optional<Factorization> cur;
    const Factorization* ref = &base;
    for (int round = 0; round < 6; ++round) {
        std::optional<Factorization> next = polish_candidate(F, *ref, tol);
        if (!next) break;
        bool done = next->residual_bound <= tol;
        bool moved = next->residual_bound < 0.5 * ref->residual_bound;
        cur = std::move(*next);
        ref = &*cur;
        if (done || !moved) break;
    }
    return cur;
}

AlgMatrix strip_mat(const AlgMatrix& M) {
    std::vector<TruncatedSeries> e = M.entries();
    for (TruncatedSeries& t : e) t = t.poly_part();
    return AlgMatrix::from_entries(M.size(), std::move(e));
}

// Fixed low-degree premix factors. Multiplying F on one side by E^-1
// rewrites the row or column lattice the remainder sequence runs over, which
// is what breaks a word whose own lattice is degenerate; the factor E then
// rejoins the word exactly. Constant conjugation cannot do this: it
// preserves the lattice up to a basis change.
std::vector<ElementaryFactor> premixes(const AlgebraConfig& cfg) {
    auto zp = [&](std::vector<std::pair<std::uint32_t, double>> cs) {
        std::vector<std::pair<std::vector<std::uint32_t>, Complex>> terms;
        for (const auto& [d, v] : cs) terms.push_back({{d}, Complex(v, 0.0)});
        return TruncatedSeries::from_terms(cfg, terms);
    };
    std::vector<ElementaryFactor> m;
    m.emplace_back(1, 2, zp({{1, 1.0}}));
    m.emplace_back(2, 1, zp({{1, -1.0}}));
    m.emplace_back(1, 2, zp({{0, 1.0}, {1, 1.0}}));
    m.emplace_back(2, 1, zp({{0, 0.5}, {1, -1.0}}));
    m.emplace_back(1, 2, zp({{2, 1.0}}));
    m.emplace_back(2, 1, zp({{0, 1.0}, {2, 0.5}}));
    m.emplace_back(1, 2, zp({{3, 1.0}}));
    m.emplace_back(2, 1, zp({{1, 0.5}, {3, -1.0}}));
    m.emplace_back(1, 2, zp({{0, 1.0}, {1, -1.0}, {2, 1.0}}));
    m.emplace_back(2, 1, zp({{0, 0.25}, {3, 1.0}}));
    m.emplace_back(1, 2, zp({{1, 2.0}, {2, -1.0}}));
    m.emplace_back(2, 1, zp({{0, -1.0}, {2, 0.5}}));
    return m;
}

// The remainder sequence of a cancellation-heavy word can pass through
// genuinely tiny leading coefficients, forcing quotients too large to play
// back within tol. The transpose and adjugate see a different remainder
// sequence for the same matrix, so the cascade retries them in a fixed
// order; if all four reads miss, it retries behind the premix factors, once.
// Every candidate is recertified against F and the first word meeting tol
// wins; ties never arise because the order is deterministic.
Factorization cascade(const AlgMatrix& F, double tol, bool allow_premix) {
    const std::uint32_t n = F.size();
    const AlgebraConfig& cfg = F.config();
    std::vector<int> attempts{0, 1};
    if (n == 2 || n == 3) {
        attempts.push_back(2);
        attempts.push_back(3);
    }

    std::optional<Factorization> best;
    std::optional<Error> first_err;
    auto consider = [&](Factorization cand) -> bool {
        if (cand.residual_bound <= tol) {
            best = std::move(cand);
            return true;
        }
        if (cand.residual_bound <= 0.5) {
            std::optional<Factorization> polished = polish_iterated(F, cand, tol);
            if (polished) {
                bool hit = polished->residual_bound <= tol;
                if (!best || polished->residual_bound < best->residual_bound) {
                    best = std::move(*polished);
                }
                if (hit) return true;
            }
        }
        if (!best || cand.residual_bound < best->residual_bound) {
            best = std::move(cand);
        }
        return false;
    };

    // The dust ladder: the default threshold keeps the word faithful; the
    // raised thresholds deliberately zero awkward pivot leads, producing a
    // less accurate but moderate word that the polish can finish. Moderation
    // matters more than accuracy here because the repair floor is the word's
    // replay noise, which scales with its largest alphas.
    const long double kDustLadder[] = {kLeadDustRel, 1e-6L, 1e-5L,
                                       1e-4L, 1e-3L, 1e-2L};
    for (long double dust : kDustLadder) {
        for (int op : attempts) {
            Factorization cand;
            try {
                cand = core_impl(build_attempt(F, op), tol, dust);
            } catch (const Error& err) {
                if (!first_err) first_err = err;
                continue;
            }
            Factorization mapped;
            mapped.n = n;
            mapped.method = Method::euclid;
            mapped.factors = map_back(std::move(cand.factors), op);
            mapped.residual_bound =
                mat_norm(mat_sub(product_of_factors(mapped.factors, n, cfg), F));
            if (consider(std::move(mapped))) return std::move(*best);
        }
    }

    if (allow_premix && n >= 2 && cfg.degree_cap >= 4) {
        for (const ElementaryFactor& E : premixes(cfg)) {
            for (int side = 0; side < 2; ++side) {
                ElementaryFactor Einv(E.i, E.j, neg(E.alpha));
                AlgMatrix Em = product_of_factors({Einv}, n, cfg);
                AlgMatrix Fp = side == 0 ? strip_mat(mat_mul(F, Em))
                                         : strip_mat(mat_mul(Em, F));
                Factorization sub;
                try {
                    sub = cascade(Fp, 0.25 * tol, false);
                } catch (const Error&) {
                    continue;
                }
                Factorization joined;
                joined.n = n;
                joined.method = Method::euclid;
                if (side == 0) {
                    joined.factors = std::move(sub.factors);
                    joined.factors.push_back(E);
                } else {
                    joined.factors.push_back(E);
                    joined.factors.insert(joined.factors.end(),
                                          sub.factors.begin(), sub.factors.end());
                }
                joined.residual_bound = mat_norm(
                    mat_sub(product_of_factors(joined.factors, n, cfg), F));
                if (consider(std::move(joined))) return std::move(*best);
            }
        }
    }

    if (best) return std::move(*best);
    if (first_err) throw *first_err;
    throw Error(ErrorKind::pivot_breakdown, "no elimination attempt succeeded");
}

}  // namespace

Factorization factor_univariate(const AlgMatrix& F, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "tol must be positive");
    }
    if (F.config().num_vars != 1) {
        throw Error(ErrorKind::unsupported,
                    "factor_univariate handles exactly one variable");
    }
    for (const TruncatedSeries& e : F.entries()) {
        if (e.tail() != 0.0) {
            throw Error(ErrorKind::unsupported,
                        "factor_univariate needs zero entry tails");
        }
    }
    // Cofactor determinant is only available for moderate n; beyond that the
    // certified residual is the sole gate.
    if (F.size() <= 8) {
        TruncatedSeries drift = sub(det(F), TruncatedSeries::one(F.config()));
        for (const auto& t : drift.raw_terms()) {
            if (std::abs(t.coeff) > kDetTol) {
                throw Error(ErrorKind::not_unimodular,
                            "determinant is not 1 within tolerance");
            }
        }
    }
    return cascade(F, tol, true);
}

}  // namespace slfact
