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

#include "slfact/json_io.hpp"

#include <utility>
#include <vector>

#include "slfact/errors.hpp"

namespace slfact {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::malformed_input, where.empty() ? what : where + ": " + what);
}

const OrderedJson& field(const OrderedJson& j, const char* name,
                         const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) fail(where, std::string("missing '") + name + "'");
    return *it;
}

double get_double(const OrderedJson& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

std::uint64_t get_uint(const OrderedJson& j, const std::string& where) {
    if (!j.is_number_unsigned()) fail(where, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

}  // namespace

namespace {

// Negation produces -0.0, which round-trips but reads oddly; normalize it.
double unsign_zero(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

OrderedJson series_to_json(const TruncatedSeries& f) {
    OrderedJson j;
    j["vars"] = f.config().num_vars;
    j["tail"] = f.tail();
    OrderedJson coeffs = OrderedJson::array();
    for (const SeriesTerm& t : f.terms()) {
        OrderedJson c;
        c["k"] = t.index;
        c["re"] = unsign_zero(t.coeff.real());
        c["im"] = unsign_zero(t.coeff.imag());
        coeffs.push_back(std::move(c));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

TruncatedSeries series_from_json(const OrderedJson& j, std::uint32_t degree_cap,
                                 double float_slack, const std::string& where) {
    std::uint64_t vars = get_uint(field(j, "vars", where), where + ".vars");
    if (vars < 1 || vars > 7) fail(where + ".vars", "needs 1..7 variables");
    AlgebraConfig cfg(static_cast<std::uint32_t>(vars), degree_cap, float_slack);
    double tail = get_double(field(j, "tail", where), where + ".tail");
    if (!(tail >= 0.0)) fail(where + ".tail", "tail must be nonnegative");
    const OrderedJson& coeffs = field(j, "coeffs", where);
    if (!coeffs.is_array()) fail(where + ".coeffs", "expected an array");
    std::vector<std::pair<std::vector<std::uint32_t>, Complex>> terms;
    terms.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::string at = where + ".coeffs[" + std::to_string(i) + "]";
        const OrderedJson& c = coeffs[i];
        const OrderedJson& k = field(c, "k", at);
        if (!k.is_array() || k.size() != vars) {
            fail(at + ".k", "expected a multi-index of length " + std::to_string(vars));
        }
        std::vector<std::uint32_t> index;
        std::uint64_t total = 0;
        index.reserve(k.size());
        for (std::size_t v = 0; v < k.size(); ++v) {
            std::uint64_t e = get_uint(k[v], at + ".k[" + std::to_string(v) + "]");
            total += e;
            index.push_back(static_cast<std::uint32_t>(e));
        }
        if (total > degree_cap) {
            fail(at + ".k", "total degree exceeds the degree cap");
        }
        double re = get_double(field(c, "re", at), at + ".re");
        double im = get_double(field(c, "im", at), at + ".im");
        terms.push_back({std::move(index), Complex(re, im)});
    }
    return TruncatedSeries::from_terms(cfg, terms, tail);
}

OrderedJson matrix_to_json(const AlgMatrix& F) {
    OrderedJson j;
    j["n"] = F.size();
    j["vars"] = F.config().num_vars;
    OrderedJson entries = OrderedJson::array();
    for (const TruncatedSeries& e : F.entries()) {
        entries.push_back(series_to_json(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

AlgMatrix matrix_from_json(const OrderedJson& j, std::uint32_t degree_cap,
                           double float_slack) {
    std::uint64_t n = get_uint(field(j, "n", ""), "n");
    if (n < 1 || n > 64) fail("n", "matrix size must be in 1..64");
    std::uint64_t vars = get_uint(field(j, "vars", ""), "vars");
    const OrderedJson& entries = field(j, "entries", "");
    if (!entries.is_array() || entries.size() != n * n) {
        fail("entries", "expected " + std::to_string(n * n) + " row-major entries");
    }
    std::vector<TruncatedSeries> parsed;
    parsed.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string at = "entries[" + std::to_string(i) + "]";
        TruncatedSeries e = series_from_json(entries[i], degree_cap, float_slack, at);
        if (e.config().num_vars != vars) {
            fail(at + ".vars", "does not match the matrix-level 'vars'");
        }
        parsed.push_back(std::move(e));
    }
    return AlgMatrix::from_entries(static_cast<std::uint32_t>(n), std::move(parsed));
}

OrderedJson factorization_to_json(const Factorization& fac) {
    OrderedJson j;
    j["n"] = fac.n;
    j["method"] = method_tag(fac.method);
    j["residual"] = fac.residual_bound;
    OrderedJson factors = OrderedJson::array();
    for (const ElementaryFactor& e : fac.factors) {
        OrderedJson f;
        f["i"] = e.i;
        f["j"] = e.j;
        f["alpha"] = series_to_json(e.alpha);
        factors.push_back(std::move(f));
    }
    j["factors"] = std::move(factors);
    return j;
}

Factorization factorization_from_json(const OrderedJson& j, std::uint32_t degree_cap,
                                      double float_slack) {
    Factorization fac;
    std::uint64_t n = get_uint(field(j, "n", ""), "n");
    if (n < 1 || n > 64) fail("n", "matrix size must be in 1..64");
    fac.n = static_cast<std::size_t>(n);
    const OrderedJson& method = field(j, "method", "");
    if (!method.is_string()) fail("method", "expected a string tag");
    fac.method = method_from_tag(method.get<std::string>());
    fac.residual_bound = get_double(field(j, "residual", ""), "residual");
    if (!(fac.residual_bound >= 0.0)) fail("residual", "must be nonnegative");
    const OrderedJson& factors = field(j, "factors", "");
    if (!factors.is_array()) fail("factors", "expected an array");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::string at = "factors[" + std::to_string(i) + "]";
        const OrderedJson& f = factors[i];
        std::uint64_t fi = get_uint(field(f, "i", at), at + ".i");
        std::uint64_t fj = get_uint(field(f, "j", at), at + ".j");
        if (fi < 1 || fj < 1 || fi > n || fj > n || fi == fj) {
            fail(at, "indices must be distinct and within 1..n");
        }
        TruncatedSeries alpha =
            series_from_json(field(f, "alpha", at), degree_cap, float_slack, at + ".alpha");
        fac.factors.emplace_back(static_cast<std::size_t>(fi),
                                 static_cast<std::size_t>(fj), std::move(alpha));
    }
    return fac;
}

}  // namespace slfact
