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

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fqc/analysis.hpp"
#include "fqc/builtins.hpp"
#include "fqc/contour.hpp"
#include "fqc/dirichlet.hpp"
#include "fqc/measure.hpp"
#include "fqc/series.hpp"
#include "fqc/stability.hpp"

namespace fqc::acceptance {

/// Inputs of the acceptance checks. Tests swap in corrupted fixtures to see
/// the matching check fail.
struct Fixtures {
    StablePair poisson = builtins::poisson();
    MultiPoly lasso_polynomial = builtins::lasso_polynomial();
    StablePair spectral = builtins::spectral();
    StablePair lee_yang = builtins::lee_yang3();
    MultiPoly unstable = builtins::unstable_polynomial();
    FrequencyVec lasso_xi{{1.0, std::numbers::sqrt2}};
    FrequencyVec rational_xi{{1.0, 0.5}};
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Check {
    std::string name;
    std::vector<std::string> tags;
    double time_limit = 0.0;  // seconds; 0 means none
    std::function<Outcome(const Fixtures&)> run;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << v;
    return os.str();
}

inline StablePair lasso_pair(const Fixtures& fx) { return derive_dual(fx.lasso_polynomial); }

inline Outcome poisson_reduction(const Fixtures& fx) {
    const FrequencyVec xi({1.0});
    const double two_pi = 2.0 * std::numbers::pi;
    const auto mu = build_measure(fx.poisson, xi, 50.5 * two_pi);
    double worst = 0.0;
    bool exact_set = mu.size() == 101;
    for (std::size_t j = 0; exact_set && j < mu.size(); ++j)
        worst = std::max(worst, std::abs(mu.atoms.gammas[j] - two_pi * (static_cast<double>(j) - 50.0)));
    const auto rep = verify_summation(fx.poisson, xi, TestFunction::gaussian(1.0), 300.0, 20);
    return {exact_set && worst < 1e-9 && rep.residual < 1e-10,
            "zeros=" + std::to_string(mu.size()) + " max_err=" + fmt(worst) + " residual=" + fmt(rep.residual)};
}

inline Outcome lasso_coefficients(const Fixtures& fx) {
    const auto multi = log_coeffs_multinomial(fx.lasso_polynomial, 3);
    const auto rec = log_coeffs_recurrence(fx.lasso_polynomial, 3);
    struct Golden {
        int k1, k2;
        double value;
    };
    const Golden golden[] = {{1, 0, -1.0 / 3.0}, {0, 2, 1.0 / 3.0}, {1, 2, -8.0 / 9.0}};
    double worst = 0.0;
    for (const auto& g : golden) {
        const ExponentVec k({g.k1, g.k2});
        worst = std::max({worst, std::abs(example_cn(g.k1, g.k2 / 2) - g.value), std::abs(multi.at(k) - g.value),
                          std::abs(rec.at(k) - g.value)});
    }
    return {worst < 1e-12, "max_err=" + fmt(worst)};
}

inline Outcome lasso_summation(const Fixtures& fx) {
    const auto rep = verify_summation(lasso_pair(fx), fx.lasso_xi, TestFunction::gaussian(1.0), 200.0, 40);
    return {rep.residual < rep.tail_estimate + 1e-8 && rep.tail_estimate < 1e-6,
            "residual=" + fmt(rep.residual) + " tail=" + fmt(rep.tail_estimate) + " zeros=" + std::to_string(rep.zero_count)};
}

inline Outcome lasso_zero_structure(const Fixtures& fx) {
    const auto& xi = fx.lasso_xi.values();
    const auto mu = build_measure(lasso_pair(fx), fx.lasso_xi, 200.0);
    const auto x = mu.positions();
    const bool simple = std::all_of(mu.weights().begin(), mu.weights().end(), [](int m) { return m == 1; });
    double asym = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) asym = std::max(asym, std::abs(x[j] + x[x.size() - 1 - j]));
    const double gap_bound = 2.0 * std::numbers::pi / (xi[0] / 2 + xi[1]);
    const bool dense = delone_check(mu, 0.0, gap_bound);
    double secular = 0.0;
    for (double v : x) secular = std::max(secular, std::abs(lasso_laurent(v * xi[0], v * xi[1])));
    return {simple && asym < 1e-9 && dense && secular < 1e-8,
            "zeros=" + std::to_string(x.size()) + " simple=" + (simple ? "yes" : "no") + " asym=" + fmt(asym) +
                " max_gap=" + fmt(gap_stats(mu).max_gap) + "/" + fmt(gap_bound) + " secular=" + fmt(secular)};
}

inline Outcome functional_equation(const Fixtures& fx) {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(-50.0, 50.0);
    std::vector<Complex> s(100);
    for (auto& v : s) v = Complex(re(rng), im(rng));
    struct Case {
        const char* name;
        StablePair pair;
    };
    const Case cases[] = {{"poisson", fx.poisson}, {"lasso", lasso_pair(fx)}, {"spectral", fx.spectral}};
    double worst = 0.0;
    std::string detail;
    for (const auto& c : cases) {
        const FrequencyVec xi(builtins::default_xi(c.pair.arity()));
        const double r = functional_eq_residual(DirichletSeries(c.pair, xi, Side::F), DirichletSeries(c.pair, xi, Side::G), s);
        worst = std::max(worst, r);
        detail += std::string(detail.empty() ? "" : " ") + c.name + "=" + fmt(r);
    }
    return {worst < 1e-10, detail};
}

inline Outcome coefficient_bound(const Fixtures& fx) {
    const auto table = log_coeffs_recurrence(fx.lasso_polynomial, 40);
    const auto b = coeff_bound_check(fx.lasso_polynomial, table);
    const auto shells = table.shell_maxima();
    bool monotone = true;
    for (std::size_t d = 5; d < shells.size(); ++d) monotone = monotone && shells[d] <= shells[d - 1] + 1e-12;
    return {b.pass, "max=" + fmt(b.max_found) + " bound=" + fmt(b.bound) + " K=" + fmt(b.sup_modulus) +
                        " shells_non_increasing_beyond_5=" + (monotone ? "yes" : "no (soft)")};
}

inline Outcome spectrum_growth_check(const Fixtures& fx) {
    const std::vector<double> a{10.0, 20.0, 40.0, 80.0};
    const double lasso = spectrum_growth(build_spectrum(lasso_pair(fx), fx.lasso_xi, 80.0), a).slope;
    const double poisson = spectrum_growth(build_spectrum(fx.poisson, FrequencyVec({1.0}), 80.0), a).slope;
    return {lasso <= 3.0 && std::abs(poisson - 1.0) <= 0.1, "lasso_slope=" + fmt(lasso) + " poisson_slope=" + fmt(poisson)};
}

inline Outcome rational_collapse(const Fixtures& fx) {
    const auto mu = build_measure(lasso_pair(fx), fx.rational_xi, 200.0);
    const auto period = commensurate_period(fx.rational_xi);
    if (!period) return {false, "frequencies not recognized as commensurate"};
    const auto dec = decompose_progressions(mu, *period);
    const auto probe = relation_probe(mu.atoms, 6, 10, 100);
    std::string q = "none";
    if (probe.found) {
        q.clear();
        for (auto c : *probe.found) q += (q.empty() ? "" : ",") + std::to_string(c);
    }
    return {!dec.progressions.empty() && dec.residual_atoms.empty() && probe.found.has_value(),
            "period=" + fmt(*period) + " progressions=" + std::to_string(dec.progressions.size()) +
                " residual_atoms=" + std::to_string(dec.residual_atoms.size()) + " relation=" + q};
}

inline Outcome irrationality_probe(const Fixtures& fx) {
    const auto mu = build_measure(lasso_pair(fx), fx.lasso_xi, 40.0);
    const auto probe = relation_probe(mu.atoms, 8, 10, 1000);
    if (!probe.found) return {true, "no relation with |q|_inf <= 1000 at precision 10 (empirical)"};
    std::string q;
    for (auto c : *probe.found) q += (q.empty() ? "" : ",") + std::to_string(c);
    return {false, "relation q=(" + q + ") with |q.v|=" + fmt(probe.dot)};
}

inline Outcome torus_curve(const Fixtures& fx) {
    const auto curve = torus_zero_curve(fx.lasso_polynomial, 512);
    double worst = 0.0;
    bool negative = true;
    for (const auto& comp : curve.components)
        for (std::size_t j = 0; j < comp.size(); ++j) {
            worst = std::max(worst, std::abs(lasso_laurent(comp[j][0], comp[j][1])));
            if (j == 0) continue;
            const double dx = comp[j][0] - comp[j - 1][0], dy = comp[j][1] - comp[j - 1][1];
            if (!(dx * dy < 0.0)) negative = false;
        }
    return {curve.components.size() == 2 && worst < 1e-6 && negative,
            "components=" + std::to_string(curve.components.size()) + " points=" + std::to_string(curve.point_count()) +
                " max|L|=" + fmt(worst) + " slopes_negative=" + (negative ? "yes" : "no")};
}

inline Outcome stability_falsification(const Fixtures& fx) {
    StabilityOptions opts;
    opts.budget = 100000;
    struct Case {
        const char* name;
        MultiPoly p;
    };
    const Case stable[] = {{"poisson", fx.poisson.P()},
                           {"lasso", fx.lasso_polynomial},
                           {"lee-yang", fx.lee_yang.P()},
                           {"spectral", fx.spectral.P()}};
    bool ok = true;
    std::string detail;
    for (const auto& c : stable) {
        const auto rep = falsify_stability(c.p, opts);
        const bool clean = rep.verdict == Verdict::NoCounterexampleFound;
        ok = ok && clean;
        detail += std::string(c.name) + (clean ? "=clean " : "=COUNTEREXAMPLE ");
    }
    const auto bad = falsify_stability(fx.unstable, opts);
    bool caught = bad.verdict == Verdict::CounterexampleFound && bad.witness;
    double at_witness = std::numeric_limits<double>::infinity();
    if (caught) at_witness = std::abs(fx.unstable(*bad.witness));
    caught = caught && at_witness < 1e-9;
    return {ok && caught, detail + "unstable=" + (caught ? "caught |P(w)|=" + fmt(at_witness) : std::string("missed"))};
}

}  // namespace detail

/// The acceptance criteria, one named check each.
inline std::vector<Check> checks() {
    return {
        {"poisson-reduction", {"poisson", "zeros", "summation"}, 5.0, detail::poisson_reduction},
        {"lasso-coefficients", {"coeffs"}, 1.0, detail::lasso_coefficients},
        {"lasso-summation", {"summation"}, 60.0, detail::lasso_summation},
        {"lasso-zero-structure", {"zeros"}, 30.0, detail::lasso_zero_structure},
        {"functional-equation", {"dirichlet"}, 0.0, detail::functional_equation},
        {"coefficient-bound", {"coeffs"}, 0.0, detail::coefficient_bound},
        {"spectrum-growth", {"spectrum"}, 0.0, detail::spectrum_growth_check},
        {"rational-collapse", {"zeros", "relations"}, 0.0, detail::rational_collapse},
        {"irrationality-probe", {"zeros", "relations"}, 0.0, detail::irrationality_probe},
        {"torus-curve", {"curve"}, 10.0, detail::torus_curve},
        {"stability-falsification", {"stability"}, 0.0, detail::stability_falsification},
    };
}

inline bool matches(const Check& c, const std::string& filter) {
    if (filter.empty() || c.name == filter) return true;
    return std::find(c.tags.begin(), c.tags.end(), filter) != c.tags.end();
}

inline CheckResult run_check(const Check& c, const Fixtures& fx) {
    CheckResult r{c.name, false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = c.run(fx);
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && r.seconds > c.time_limit) {
        r.pass = false;
        r.detail += " (exceeded " + detail::fmt(c.time_limit) + " s)";
    }
    return r;
}

/// Runs every check whose name or tag equals `filter` (all when empty) and
/// prints one line per check.
inline std::vector<CheckResult> run_checks(const std::string& filter, const Fixtures& fx, std::ostream& os) {
    std::vector<CheckResult> out;
    for (const auto& c : checks()) {
        if (!matches(c, filter)) continue;
        out.push_back(run_check(c, fx));
        const auto& r = out.back();
        os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << r.name << std::right << std::fixed
           << std::setprecision(2) << std::setw(7) << r.seconds << " s  " << r.detail << '\n';
        os.unsetf(std::ios::floatfield);
    }
    return out;
}

}  // namespace fqc::acceptance
