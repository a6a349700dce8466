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

#include "slfact/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "slfact/errors.hpp"
#include "slfact/json_io.hpp"
#include "slfact/nearid.hpp"
#include "slfact/pipeline.hpp"
#include "slfact/unipoly.hpp"

namespace slfact {

namespace {

std::string fmt(double x) { return OrderedJson(x).dump(); }

OrderedJson load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::malformed_input, "cannot open '" + path + "'");
    }
    try {
        OrderedJson j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::malformed_input,
                    "'" + path + "' is not valid JSON: " + e.what());
    }
}

void save_json(const std::string& path, const OrderedJson& j) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::malformed_input, "cannot write '" + path + "'");
    }
    out << j.dump(2) << "\n";
}

FactorMode mode_from_string(const std::string& s) {
    if (s == "auto") return FactorMode::automatic;
    if (s == "near-identity") return FactorMode::near_identity;
    if (s == "euclid") return FactorMode::euclid;
    if (s == "dilation") return FactorMode::dilation;
    throw Error(ErrorKind::malformed_input, "unknown mode '" + s + "'");
}

// Uniform double in [0, 1) from the top 53 bits; the fixed generator keeps
// seeded runs byte-identical everywhere.
double urand53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// All multi-indices of total degree <= deg, in a fixed enumeration order.
std::vector<std::vector<std::uint32_t>> indices_up_to(std::uint32_t d, std::uint32_t deg) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(d, 0);
    for (;;) {
        std::uint32_t total = 0;
        for (std::uint32_t e : cur) total += e;
        if (total <= deg) out.push_back(cur);
        std::uint32_t v = d;
        while (v-- > 0) {
            if (cur[v] < deg) {
                ++cur[v];
                for (std::uint32_t w = v + 1; w < d; ++w) cur[w] = 0;
                break;
            }
            if (v == 0) return out;
        }
    }
}

std::vector<ElementaryFactor> random_factors(std::mt19937_64& rng,
                                             const AlgebraConfig& cfg,
                                             std::size_t n, std::size_t count,
                                             std::uint32_t deg, double scale) {
    std::vector<std::vector<std::uint32_t>> support = indices_up_to(cfg.num_vars, deg);
    std::vector<ElementaryFactor> out;
    out.reserve(count);
    for (std::size_t f = 0; f < count; ++f) {
        std::size_t i = 1 + static_cast<std::size_t>(rng() % n);
        std::size_t j = 1 + static_cast<std::size_t>(rng() % (n - 1));
        if (j >= i) ++j;
        std::vector<std::pair<std::vector<std::uint32_t>, Complex>> terms;
        terms.reserve(support.size());
        for (const auto& k : support) {
            double re = (2.0 * urand53(rng) - 1.0) * scale;
            double im = (2.0 * urand53(rng) - 1.0) * scale;
            terms.push_back({k, Complex(re, im)});
        }
        out.emplace_back(i, j, TruncatedSeries::from_terms(cfg, terms));
    }
    return out;
}

struct FactorArgs {
    std::string input, output;
    std::string mode = "auto";
    double tol = 1e-8;
    double radius = -1.0;
    std::uint32_t degree_cap = 64;
};

int run_factor(const FactorArgs& a) {
    AlgMatrix F = matrix_from_json(load_json(a.input), a.degree_cap, 1.0 + 1e-12);
    FactorRequest req{F, mode_from_string(a.mode), a.tol,
                      a.radius > 0.0 ? std::optional<double>(a.radius) : std::nullopt};
    Factorization fac = factor(req);
    save_json(a.output, factorization_to_json(fac));
    std::cout << "method: " << method_tag(fac.method) << "\n"
              << "factors: " << fac.factors.size() << "\n"
              << "residual: " << fmt(fac.residual_bound) << "\n";
    if (fac.residual_bound > a.tol) {
        std::cout << "verification: FAIL (residual exceeds tol " << fmt(a.tol) << ")\n";
        return 1;
    }
    std::cout << "verification: PASS\n";
    return 0;
}

struct VerifyArgs {
    std::string matrix, factors;
    double tol = 1e-8;
    std::uint32_t degree_cap = 64;
};

int run_verify(const VerifyArgs& a) {
    AlgMatrix F = matrix_from_json(load_json(a.matrix), a.degree_cap, 1.0 + 1e-12);
    Factorization fac =
        factorization_from_json(load_json(a.factors), a.degree_cap, 1.0 + 1e-12);
    VerificationReport rep = verify(F, fac, a.tol);
    std::cout << "factors: " << rep.factor_count << "\n"
              << "normal form blocks: " << rep.normal_form_blocks << "\n"
              << "residual: " << fmt(rep.residual) << "\n"
              << "tol: " << fmt(rep.tol) << "\n"
              << "verification: " << (rep.passed ? "PASS" : "FAIL") << "\n";
    return rep.passed ? 0 : 1;
}

struct NormArgs {
    std::string input;
    std::uint32_t degree_cap = 64;
};

int run_norm(const NormArgs& a) {
    AlgMatrix F = matrix_from_json(load_json(a.input), a.degree_cap, 1.0 + 1e-12);
    std::cout << "norm: " << fmt(mat_norm(F)) << "\n";
    return 0;
}

struct DemoArgs {
    std::vector<double> eval;
    std::uint32_t degree_cap = 64;
};

int run_demo_cohn(const DemoArgs& a) {
    AlgebraConfig cfg(2, a.degree_cap, 1.0 + 1e-12);
    AlgMatrix C = cohn_matrix(cfg);
    std::cout << "cohn matrix:\n" << matrix_to_json(C).dump(2) << "\n";
    std::cout << "det: " << series_to_json(det(C)).dump() << "\n";
    try {
        factor({C, FactorMode::automatic, 1e-8, std::nullopt});
        std::cout << "factor(auto): unexpectedly succeeded\n";
    } catch (const Error& e) {
        std::cout << "factor(auto): " << to_string(e.kind()) << ": " << e.what()
                  << "\n";
    }
    if (!a.eval.empty()) {
        std::vector<Complex> point{Complex(a.eval[0], 0.0), Complex(a.eval[1], 0.0)};
        for (std::uint32_t r = 0; r < 2; ++r) {
            for (std::uint32_t c = 0; c < 2; ++c) {
                EvalResult v = evaluate(C.at(r, c), point);
                std::cout << "entry (" << (r + 1) << "," << (c + 1) << ") at point: "
                          << fmt(v.value.real()) << " + " << fmt(v.value.imag())
                          << "i (radius " << fmt(v.radius) << ")\n";
            }
        }
    }
    return 0;
}

struct RoundtripArgs {
    std::uint64_t n = 2, d = 1, factors = 4, seed = 0;
    std::uint32_t degree = 2, degree_cap = 0;
    double scale = 0.1, tol = 1e-8;
};

int run_roundtrip(const RoundtripArgs& a) {
    std::cout << "generator: mt19937_64 urand53\n";
    // Default cap shrinks with the variable count: table sizes grow like
    // binomial(cap + d, d) and the reciprocal fills tables up to the cap.
    std::uint32_t cap = a.degree_cap;
    if (cap == 0) cap = a.d == 1 ? 64 : (a.d == 2 ? 24 : 14);
    AlgebraConfig cfg(static_cast<std::uint32_t>(a.d), cap, 1.0 + 1e-12);
    std::mt19937_64 rng(a.seed);
    std::vector<ElementaryFactor> word =
        random_factors(rng, cfg, a.n, a.factors, a.degree, a.scale);
    AlgMatrix F = product_of_factors(word, a.n, cfg);
    Factorization fac = factor({F, FactorMode::automatic, a.tol, std::nullopt});
    VerificationReport rep = verify(F, fac, a.tol);
    std::cout << "n: " << a.n << " d: " << a.d << " factors: " << a.factors
              << " degree: " << a.degree << " scale: " << fmt(a.scale)
              << " seed: " << a.seed << "\n"
              << "method: " << method_tag(fac.method) << "\n"
              << "output factors: " << rep.factor_count << "\n"
              << "residual: " << fmt(rep.residual) << "\n"
              << "verification: " << (rep.passed ? "PASS" : "FAIL") << "\n";
    return rep.passed ? 0 : 1;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"factor SL_n matrices over series algebras into elementary matrices"};
    app.require_subcommand(1);

    FactorArgs fa;
    CLI::App* factor_cmd = app.add_subcommand("factor", "factor a matrix JSON file");
    factor_cmd->add_option("--input", fa.input, "matrix JSON file")->required();
    factor_cmd->add_option("--tol", fa.tol, "residual tolerance");
    factor_cmd->add_option("--mode", fa.mode, "auto|near-identity|euclid|dilation")
        ->check(CLI::IsMember({"auto", "near-identity", "euclid", "dilation"}));
    factor_cmd->add_option("--radius", fa.radius, "dilation radius in (0,1)");
    factor_cmd->add_option("--degree-cap", fa.degree_cap, "series degree cap");
    factor_cmd->add_option("--output", fa.output, "factorization JSON file")->required();

    VerifyArgs va;
    CLI::App* verify_cmd = app.add_subcommand("verify", "verify a factorization");
    verify_cmd->add_option("--matrix", va.matrix, "matrix JSON file")->required();
    verify_cmd->add_option("--factors", va.factors, "factorization JSON file")->required();
    verify_cmd->add_option("--tol", va.tol, "residual tolerance");
    verify_cmd->add_option("--degree-cap", va.degree_cap, "series degree cap");

    NormArgs na;
    CLI::App* norm_cmd = app.add_subcommand("norm", "print the summed entry norm");
    norm_cmd->add_option("--input", na.input, "matrix JSON file")->required();
    norm_cmd->add_option("--degree-cap", na.degree_cap, "series degree cap");

    DemoArgs da;
    std::string demo_what;
    CLI::App* demo_cmd = app.add_subcommand("demo", "built-in fixtures");
    demo_cmd->add_option("what", demo_what, "fixture name (cohn)")
        ->required()
        ->check(CLI::IsMember({"cohn"}));
    demo_cmd->add_option("--eval", da.eval, "evaluate entries at a point (two reals)")
        ->expected(2);
    demo_cmd->add_option("--degree-cap", da.degree_cap, "series degree cap");

    RoundtripArgs ra;
    CLI::App* rt_cmd = app.add_subcommand(
        "roundtrip", "factor a seeded random elementary product and verify");
    rt_cmd->add_option("--n", ra.n, "matrix size")->required()->check(CLI::Range(2, 8));
    rt_cmd->add_option("--d", ra.d, "number of variables")->required()->check(CLI::Range(1, 7));
    rt_cmd->add_option("--factors", ra.factors, "number of generated factors")->required();
    rt_cmd->add_option("--scale", ra.scale, "coefficient scale")->required();
    rt_cmd->add_option("--seed", ra.seed, "generator seed")->required();
    rt_cmd->add_option("--degree", ra.degree, "alpha total degree bound");
    rt_cmd->add_option("--tol", ra.tol, "residual tolerance");
    rt_cmd->add_option("--degree-cap", ra.degree_cap,
                       "series degree cap (default 64/24/14 for d = 1/2/3+)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (app.got_subcommand(factor_cmd)) return run_factor(fa);
        if (app.got_subcommand(verify_cmd)) return run_verify(va);
        if (app.got_subcommand(norm_cmd)) return run_norm(na);
        if (app.got_subcommand(demo_cmd)) return run_demo_cohn(da);
        if (app.got_subcommand(rt_cmd)) return run_roundtrip(ra);
    } catch (const Error& e) {
        std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
        if (e.kind() == ErrorKind::malformed_input) return 3;
        return e.is_refusal() ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

}  // namespace slfact
