/*
   Copyright 2026 The fqc Authors

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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqc/acceptance.hpp"
#include "fqc/analysis.hpp"
#include "fqc/builtins.hpp"
#include "fqc/contour.hpp"
#include "fqc/io.hpp"
#include "fqc/measure.hpp"
#include "fqc/series.hpp"
#include "fqc/stability.hpp"

namespace {

using fqc::Error;
using fqc::ErrorCode;
using Json = fqc::io::Json;

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

struct RunConfig {
    std::string builtin;
    std::string pair_file;
    std::string poly_file;
    std::vector<double> xi;
    double window = 0.0;
    int degree_max = 0;
    double sigma = 1.0;
    std::string test = "gaussian";
    double width = 4.0;
    int oversample = 32;
    std::string emit = "csv";
    std::string out_dir;
    std::uint64_t seed = 0;

    fqc::StablePair pair() const {
        const int sources = !builtin.empty() + !pair_file.empty() + !poly_file.empty();
        if (sources != 1) throw Error(ErrorCode::ConfigInvalid, "give exactly one of --builtin, --pair, --poly");
        if (!builtin.empty()) return fqc::builtins::by_name(builtin);
        if (!pair_file.empty()) return fqc::io::pair_from_json(fqc::io::read_json_file(pair_file), pair_file);
        return fqc::derive_dual(fqc::io::poly_from_json(fqc::io::read_json_file(poly_file), poly_file));
    }

    fqc::MultiPoly poly() const {
        if (!poly_file.empty() && builtin.empty() && pair_file.empty())
            return fqc::io::poly_from_json(fqc::io::read_json_file(poly_file), poly_file);
        if (builtin == "unstable") return fqc::builtins::unstable_polynomial();
        return pair().P();
    }

    fqc::FrequencyVec frequencies(std::size_t arity) const {
        if (xi.empty()) return fqc::FrequencyVec(fqc::builtins::default_xi(arity));
        if (xi.size() != arity)
            throw Error(ErrorCode::ConfigInvalid, "--xi: " + std::to_string(xi.size()) + " values for arity " +
                                                      std::to_string(arity));
        for (double x : xi)
            if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::ConfigInvalid, "--xi: entries must be positive");
        return fqc::FrequencyVec(xi);
    }

    void require_window() const {
        if (!(window > 0.0) || !std::isfinite(window)) throw Error(ErrorCode::ConfigInvalid, "--window: must be positive");
    }
    void require_degree() const {
        if (degree_max <= 0) throw Error(ErrorCode::ConfigInvalid, "--degree-max: must be positive");
    }

    fqc::TestFunction test_function() const {
        if (test == "gaussian") {
            if (!(sigma > 0.0)) throw Error(ErrorCode::ConfigInvalid, "--sigma: must be positive");
            return fqc::TestFunction::gaussian(sigma);
        }
        if (test == "cosine") {
            if (!(width > 0.0)) throw Error(ErrorCode::ConfigInvalid, "--width: must be positive");
            return fqc::TestFunction::cosine_window(width);
        }
        throw Error(ErrorCode::ConfigInvalid, "--test: expected gaussian or cosine");
    }
};

Json xi_json(const fqc::FrequencyVec& f) { return std::vector<double>(f.values().begin(), f.values().end()); }

void emit(const RunConfig& cfg, const std::string& name, const std::string& text) {
    if (cfg.out_dir.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / (name + (cfg.emit == "json" ? ".json" : ".csv"));
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ConfigInvalid, "--out: cannot write " + path.string());
    out << text;
    std::cerr << "wrote " << path.string() << '\n';
}

void emit_json(const RunConfig& cfg, const std::string& name, const Json& j) {
    RunConfig c = cfg;
    c.emit = "json";
    emit(c, name, j.dump(2));
}

std::string exponent_cells(const fqc::ExponentVec& k) {
    std::string s;
    for (int e : k.entries()) s += std::to_string(e) + ",";
    return s;
}

int run_stability(const RunConfig& cfg, std::size_t budget) {
    fqc::StabilityOptions opts;
    opts.budget = budget;
    opts.seed = cfg.seed;
    const auto p = cfg.poly();
    const auto rep = fqc::falsify_stability(p, opts);
    Json j{{"polynomial", p.str()},
           {"samples_tested", rep.samples_tested},
           {"min_modulus_found", rep.min_modulus_found},
           {"verdict", rep.verdict == fqc::Verdict::CounterexampleFound ? "CounterexampleFound" : "NoCounterexampleFound"}};
    if (rep.witness) {
        Json w = Json::array();
        for (auto z : *rep.witness) w.push_back(fqc::io::complex_json(z));
        j["witness"] = w;
        j["modulus_at_witness"] = std::abs(p(*rep.witness));
    }
    emit_json(cfg, "stability", j);
    return rep.verdict == fqc::Verdict::NoCounterexampleFound ? kOk : kCheckFailed;
}

int run_coeffs(const RunConfig& cfg, const std::string& algorithm) {
    cfg.require_degree();
    const auto p = cfg.pair().P();
    std::optional<fqc::LogCoeffTable> rec, multi;
    if (algorithm == "recurrence" || algorithm == "both") rec = fqc::log_coeffs_recurrence(p, cfg.degree_max);
    if (algorithm == "multinomial" || algorithm == "both") multi = fqc::log_coeffs_multinomial(p, cfg.degree_max);
    if (!rec && !multi) throw Error(ErrorCode::ConfigInvalid, "--algorithm: expected recurrence, multinomial or both");
    const auto& table = rec ? *rec : *multi;

    double disagreement = 0.0;
    if (rec && multi)
        for (const auto& k : [&] {
                 std::vector<fqc::ExponentVec> ks;
                 for (const auto& [k, c] : rec->coeffs()) ks.push_back(k);
                 for (const auto& [k, c] : multi->coeffs()) ks.push_back(k);
                 return ks;
             }())
            disagreement = std::max(disagreement, std::abs(rec->at(k) - multi->at(k)));
    const auto bound = fqc::coeff_bound_check(p, table);

    if (cfg.emit == "json") {
        Json rows = Json::array();
        for (const auto& [k, c] : table.coeffs())
            rows.push_back({{"k", std::vector<int>(k.entries().begin(), k.entries().end())}, {"re", c.real()}, {"im", c.imag()}});
        Json j{{"degree_max", cfg.degree_max}, {"coefficients", rows}, {"bound", bound.bound},
               {"max_found", bound.max_found}, {"sup_modulus", bound.sup_modulus}, {"bound_holds", bound.pass}};
        if (rec && multi) j["algorithm_disagreement"] = disagreement;
        emit_json(cfg, "coeffs", j);
    } else {
        std::ostringstream os;
        os.precision(17);
        for (std::size_t j = 1; j <= p.arity(); ++j) os << 'k' << j << ',';
        os << "re,im\n";
        for (const auto& [k, c] : table.coeffs()) os << exponent_cells(k) << c.real() << ',' << c.imag() << '\n';
        emit(cfg, "coeffs", os.str());
    }
    return bound.pass && disagreement <= 1e-12 ? kOk : kCheckFailed;
}

int run_zeros(const RunConfig& cfg) {
    cfg.require_window();
    const auto pair = cfg.pair();
    const auto xi = cfg.frequencies(pair.arity());
    const auto zeros = fqc::find_zeros(fqc::DirichletSeries(pair, xi, fqc::Side::F), -cfg.window, cfg.window, cfg.oversample);
    if (cfg.emit == "json") {
        Json rows = Json::array();
        for (std::size_t j = 0; j < zeros.size(); ++j)
            rows.push_back({{"gamma", zeros.gammas[j]}, {"multiplicity", zeros.multiplicities[j]}, {"residual", zeros.residuals[j]}});
        emit_json(cfg, "zeros", Json{{"xi", xi_json(xi)}, {"window", cfg.window}, {"zeros", rows}});
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "gamma,multiplicity,residual\n";
        for (std::size_t j = 0; j < zeros.size(); ++j)
            os << zeros.gammas[j] << ',' << zeros.multiplicities[j] << ',' << zeros.residuals[j] << '\n';
        emit(cfg, "zeros", os.str());
    }
    return kOk;
}

int run_curve(const RunConfig& cfg, int resolution) {
    const auto curve = fqc::torus_zero_curve(cfg.pair().P(), resolution);
    if (cfg.emit == "json") {
        Json comps = Json::array();
        for (std::size_t c = 0; c < curve.components.size(); ++c) {
            Json pts = Json::array();
            for (const auto& p : curve.components[c]) pts.push_back({p[0], p[1]});
            comps.push_back({{"closed", static_cast<bool>(curve.closed[c])}, {"points", pts}});
        }
        emit_json(cfg, "curve", Json{{"resolution", resolution}, {"components", comps}});
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "component,x,y\n";
        for (std::size_t c = 0; c < curve.components.size(); ++c)
            for (const auto& p : curve.components[c]) os << c << ',' << p[0] << ',' << p[1] << '\n';
        emit(cfg, "curve", os.str());
    }
    return kOk;
}

int run_verify(const RunConfig& cfg, bool symmetric) {
    cfg.require_window();
    cfg.require_degree();
    const auto pair = cfg.pair();
    const auto xi = cfg.frequencies(pair.arity());
    const auto test = cfg.test_function();
    const auto rep = symmetric ? fqc::verify_summation_symmetric(pair, xi, test, cfg.window, cfg.degree_max, cfg.oversample)
                               : fqc::verify_summation(pair, xi, test, cfg.window, cfg.degree_max, cfg.oversample);
    const bool pass = rep.residual <= rep.tail_estimate + 1e-6;
    Json j{{"xi", xi_json(xi)},
           {"test_function", test.describe()},
           {"window", rep.window},
           {"degree_max", rep.degree_max},
           {"lhs", fqc::io::complex_json(rep.lhs)},
           {"rhs", fqc::io::complex_json(rep.rhs)},
           {"residual", rep.residual},
           {"tail_estimate", rep.tail_estimate},
           {"zero_tail", rep.zero_tail},
           {"coefficient_tail", rep.coeff_tail},
           {"zero_count", rep.zero_count},
           {"relaxed_normalization", rep.relaxed_normalization},
           {"symmetric", symmetric},
           {"pass", pass}};
    emit_json(cfg, "verify", j);
    return pass ? kOk : kCheckFailed;
}

int run_spectrum(const RunConfig& cfg) {
    cfg.require_window();
    const auto pair = cfg.pair();
    const auto xi = cfg.frequencies(pair.arity());
    const auto spec = fqc::build_spectrum(pair, xi, cfg.window);
    if (cfg.emit == "json") {
        Json rows = Json::array();
        for (const auto& a : spec.atoms) {
            Json prov = Json::array();
            for (const auto& [k, side] : a.provenance)
                prov.push_back({{"k", std::vector<int>(k.entries().begin(), k.entries().end())},
                                {"side", side == fqc::Side::F ? "P" : "Q"}});
            rows.push_back({{"position", a.position}, {"re_weight", a.weight.real()}, {"im_weight", a.weight.imag()},
                            {"provenance", prov}});
        }
        emit_json(cfg, "spectrum", Json{{"xi", xi_json(xi)}, {"window", spec.window}, {"degree_max", spec.degree_max}, {"atoms", rows}});
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "position,re_weight,im_weight\n";
        for (const auto& a : spec.atoms) os << a.position << ',' << a.weight.real() << ',' << a.weight.imag() << '\n';
        emit(cfg, "spectrum", os.str());
    }
    return kOk;
}

fqc::CrystallineMeasure measure_of(const RunConfig& cfg, fqc::FrequencyVec* xi_out = nullptr) {
    cfg.require_window();
    const auto pair = cfg.pair();
    const auto xi = cfg.frequencies(pair.arity());
    if (xi_out) *xi_out = xi;
    return fqc::build_measure(pair, xi, cfg.window, cfg.oversample);
}

int run_gaps(const RunConfig& cfg) {
    fqc::FrequencyVec xi({1.0});
    const auto g = fqc::gap_stats(measure_of(cfg, &xi));
    emit_json(cfg, "gaps", Json{{"xi", xi_json(xi)}, {"window", cfg.window}, {"count", g.count}, {"min_gap", g.min_gap}, {"max_gap", g.max_gap}});
    return kOk;
}

int run_delone(const RunConfig& cfg, double r, double big_r) {
    fqc::FrequencyVec xi({1.0});
    const auto mu = measure_of(cfg, &xi);
    const bool ok = fqc::delone_check(mu, r, big_r);
    const auto g = fqc::gap_stats(mu);
    emit_json(cfg, "delone", Json{{"xi", xi_json(xi)}, {"window", cfg.window}, {"r", r}, {"R", big_r},
                                  {"min_gap", g.min_gap}, {"max_gap", g.max_gap}, {"delone", ok}});
    return ok ? kOk : kCheckFailed;
}

int run_progression(const RunConfig& cfg, double a, double d, long long count_limit) {
    if (!(d > 0.0)) throw Error(ErrorCode::ConfigInvalid, "--d: must be positive");
    if (count_limit < 1) throw Error(ErrorCode::ConfigInvalid, "--count-limit: must be positive");
    fqc::FrequencyVec xi({1.0});
    const auto hits = fqc::progression_intersection(measure_of(cfg, &xi), a, d, static_cast<std::size_t>(count_limit));
    emit_json(cfg, "progression", Json{{"xi", xi_json(xi)}, {"window", cfg.window}, {"a", a}, {"d", d},
                                       {"count", hits.count}, {"hits", hits.hits}, {"truncated", hits.truncated}});
    return kOk;
}

int run_relations(const RunConfig& cfg, int count, int precision, long long max_coeff) {
    if (count < 2 || count > 12) throw Error(ErrorCode::ConfigInvalid, "--count: must lie in [2, 12]");
    fqc::FrequencyVec xi({1.0});
    const auto probe = fqc::relation_probe(measure_of(cfg, &xi).atoms, static_cast<std::size_t>(count), precision, max_coeff);
    Json j{{"xi", xi_json(xi)},    {"values", probe.values}, {"precision", probe.precision},
           {"max_coeff", max_coeff}, {"empirical", true}};
    if (probe.found) {
        j["relation"] = *probe.found;
        j["abs_dot"] = probe.dot;
    } else {
        j["relation"] = nullptr;
    }
    emit_json(cfg, "relations", j);
    return kOk;
}

int run_reproduce_all(const RunConfig& cfg, const std::string& filter) {
    std::ostringstream os;
    const auto results = fqc::acceptance::run_checks(filter, fqc::acceptance::Fixtures{}, os);
    if (results.empty()) throw Error(ErrorCode::ConfigInvalid, "--filter: no check named or tagged '" + filter + "'");
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (cfg.emit == "json") {
        Json rows = Json::array();
        for (const auto& r : results)
            rows.push_back({{"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
        emit_json(cfg, "reproduce-all", Json{{"checks", rows}, {"all_pass", all}});
    } else {
        emit(cfg, "reproduce-all", os.str());
    }
    return all ? kOk : kCheckFailed;
}

void add_source(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--builtin", cfg.builtin, "Builtin pair: poisson, poisson-relaxed, lasso, lee-yang, spectral, unstable");
    sub->add_option("--pair", cfg.pair_file, "Stable pair JSON file");
    sub->add_option("--poly", cfg.poly_file, "Polynomial JSON file (dual derived)");
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--emit", cfg.emit, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_dir, "Write output into this directory");
    sub->add_option("--seed", cfg.seed, "Random seed");
}

void add_xi(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--xi", cfg.xi, "Frequencies, comma separated")->delimiter(',');
    sub->add_option("--oversample", cfg.oversample, "Zero-search grid oversampling")->check(CLI::Range(4, 4096));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier quasicrystals from stable polynomials"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::size_t budget = 100000;
    auto* stability = app.add_subcommand("stability", "Randomized search for zeros in the open unit polydisk");
    add_source(stability, cfg);
    add_common(stability, cfg);
    stability->add_option("--budget", budget, "Number of samples");

    std::string algorithm = "recurrence";
    auto* coeffs = app.add_subcommand("coeffs", "Coefficients of log P");
    add_source(coeffs, cfg);
    add_common(coeffs, cfg);
    coeffs->add_option("--degree-max", cfg.degree_max, "Largest total degree")->required();
    coeffs->add_option("--algorithm", algorithm)->check(CLI::IsMember({"recurrence", "multinomial", "both"}));

    auto* zeros = app.add_subcommand("zeros", "Zeros of F on the imaginary axis");
    add_source(zeros, cfg);
    add_common(zeros, cfg);
    add_xi(zeros, cfg);
    zeros->add_option("--window", cfg.window, "Half-width A of [-A, A]")->required();

    int resolution = 512;
    auto* curve = app.add_subcommand("curve", "Zero curve of P on the 2-torus");
    add_source(curve, cfg);
    add_common(curve, cfg);
    curve->add_option("--resolution", resolution)->check(CLI::Range(64, 8192));

    bool symmetric = false;
    auto* verify = app.add_subcommand("verify", "Both sides of the summation formula");
    add_source(verify, cfg);
    add_common(verify, cfg);
    add_xi(verify, cfg);
    verify->add_option("--window", cfg.window)->required();
    verify->add_option("--degree-max", cfg.degree_max)->required();
    verify->add_option("--test", cfg.test)->check(CLI::IsMember({"gaussian", "cosine"}));
    verify->add_option("--sigma", cfg.sigma, "Gaussian width");
    verify->add_option("--width", cfg.width, "Cosine window half-width");
    verify->add_flag("--symmetric", symmetric, "Use the self-dual form");

    auto* spectrum = app.add_subcommand("spectrum", "Atoms of the Fourier transform of the measure");
    add_source(spectrum, cfg);
    add_common(spectrum, cfg);
    add_xi(spectrum, cfg);
    spectrum->add_option("--window", cfg.window)->required();

    auto* gaps = app.add_subcommand("gaps", "Gap statistics of the zero set");
    add_source(gaps, cfg);
    add_common(gaps, cfg);
    add_xi(gaps, cfg);
    gaps->add_option("--window", cfg.window)->required();

    double r = 0.0, big_r = 0.0;
    auto* delone = app.add_subcommand("delone", "Delone check with candidate radii");
    add_source(delone, cfg);
    add_common(delone, cfg);
    add_xi(delone, cfg);
    delone->add_option("--window", cfg.window)->required();
    delone->add_option("--r", r, "Minimal gap candidate")->required();
    delone->add_option("--R", big_r, "Covering radius candidate")->required();

    double a = 0.0, d = 0.0;
    long long count_limit = 1000000;
    auto* progression = app.add_subcommand("progression", "Intersection with an arithmetic progression");
    add_source(progression, cfg);
    add_common(progression, cfg);
    add_xi(progression, cfg);
    progression->add_option("--window", cfg.window)->required();
    progression->add_option("--a", a, "Offset");
    progression->add_option("--d", d, "Step")->required();
    progression->add_option("--count-limit", count_limit);

    int count = 8, precision = 10;
    long long max_coeff = 1000;
    auto* relations = app.add_subcommand("relations", "Integer-relation probe on the first positive zeros");
    add_source(relations, cfg);
    add_common(relations, cfg);
    add_xi(relations, cfg);
    relations->add_option("--window", cfg.window)->required();
    relations->add_option("--count", count);
    relations->add_option("--precision", precision);
    relations->add_option("--max-coeff", max_coeff);

    std::string filter;
    auto* reproduce = app.add_subcommand("reproduce-all", "Run the acceptance checks");
    add_common(reproduce, cfg);
    reproduce->add_option("--filter", filter, "Check name or tag");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*stability) return run_stability(cfg, budget);
        if (*coeffs) return run_coeffs(cfg, algorithm);
        if (*zeros) return run_zeros(cfg);
        if (*curve) return run_curve(cfg, resolution);
        if (*verify) return run_verify(cfg, symmetric);
        if (*spectrum) return run_spectrum(cfg);
        if (*gaps) return run_gaps(cfg);
        if (*delone) return run_delone(cfg, r, big_r);
        if (*progression) return run_progression(cfg, a, d, count_limit);
        if (*relations) return run_relations(cfg, count, precision, max_coeff);
        if (*reproduce) return run_reproduce_all(cfg, filter);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fqc::is_numerical_failure(e.code()) ? kNumericalFailure : kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}
