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
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqc/dirichlet.hpp"
#include "fqc/polynomial.hpp"
#include "fqc/series.hpp"

namespace fqc {

/// mu = sum over zeros i gamma of F of m(gamma) delta_gamma, restricted to a window.
struct CrystallineMeasure {
    ZeroList atoms;

    std::size_t size() const noexcept { return atoms.size(); }
    bool empty() const noexcept { return atoms.empty(); }
    std::span<const double> positions() const noexcept { return atoms.gammas; }
    std::span<const int> weights() const noexcept { return atoms.multiplicities; }
    double lo() const noexcept { return atoms.lo; }
    double hi() const noexcept { return atoms.hi; }
};

inline CrystallineMeasure build_measure(const StablePair& pair, const FrequencyVec& freq, double window,
                                        int oversample = 32) {
    if (!(window >= 0.0)) throw Error(ErrorCode::InvalidArgument, "window half-width must be >= 0");
    const DirichletSeries f(pair, freq, Side::F);
    return CrystallineMeasure{find_zeros(f, -window, window, oversample)};
}

/// One atom of mu-hat. Provenance records which k (and which side, P at +xi.k,
/// Q at -xi.k) contributed before coincident positions were merged.
struct SpectrumAtom {
    double position = 0.0;
    Complex weight{};
    std::vector<std::pair<ExponentVec, Side>> provenance;
};

struct SpectrumMeasure {
    std::vector<SpectrumAtom> atoms;  // sorted by position
    double window = 0.0;
    int degree_max = 0;

    double total_variation(double a) const {
        double v = 0.0;
        for (const auto& at : atoms)
            if (std::abs(at.position) <= a) v += std::abs(at.weight);
        return v;
    }
};

namespace detail {

// log P with P scaled to P(0) = 1; only the log-derivative matters downstream.
inline LogCoeffTable log_table(const MultiPoly& p, int degree_max) {
    return log_coeffs_recurrence(p.normalized(), degree_max);
}

}  // namespace detail

/// mu-hat = (xi.ell) delta_0 - sum_k (xi.k) c_P(k) delta_{xi.k} - sum_k (xi.k) c_Q(k) delta_{-xi.k},
/// truncated to |position| <= window with degree_max = ceil(window / min xi).
inline SpectrumMeasure build_spectrum(const StablePair& pair, const FrequencyVec& freq, double window) {
    if (!(window >= 0.0) || !std::isfinite(window))
        throw Error(ErrorCode::InvalidArgument, "window half-width must be finite and >= 0");
    if (freq.size() != pair.arity()) throw Error(ErrorCode::WrongArity, "frequency length does not match arity");

    SpectrumMeasure spec;
    spec.window = window;
    spec.degree_max = static_cast<int>(std::ceil(window / freq.min()));

    std::vector<SpectrumAtom> raw;
    raw.push_back({0.0, Complex(freq.dot(pair.ell())), {}});
    if (spec.degree_max >= 1) {
        const LogCoeffTable cp = detail::log_table(pair.P(), spec.degree_max);
        const LogCoeffTable cq = detail::log_table(pair.Q(), spec.degree_max);
        for (const auto& [k, c] : cp.coeffs()) {
            const double x = freq.dot(k);
            if (x <= window) raw.push_back({x, -x * c, {{k, Side::F}}});
        }
        for (const auto& [k, c] : cq.coeffs()) {
            const double x = freq.dot(k);
            if (x <= window) raw.push_back({-x, -x * c, {{k, Side::G}}});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
    for (auto& atom : raw) {
        if (!spec.atoms.empty()) {
            auto& last = spec.atoms.back();
            if (std::abs(atom.position - last.position) <= 1e-9 * std::max(1.0, std::abs(atom.position))) {
                last.weight += atom.weight;
                last.provenance.insert(last.provenance.end(), atom.provenance.begin(), atom.provenance.end());
                continue;
            }
        }
        spec.atoms.push_back(std::move(atom));
    }
    return spec;
}

/// Test function h with closed-form transform hat h(gamma) = int h(t) e^{i gamma t} dt.
/// Both shipped kinds are real and even.
class TestFunction {
public:
    enum class Kind { Gaussian, CosineWindow };

    /// h(t) = exp(-t^2 / (2 sigma^2)).
    static TestFunction gaussian(double sigma) {
        if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
        return TestFunction(Kind::Gaussian, sigma);
    }
    /// h(t) = cos^2(pi t / (2 w)) on |t| <= w, zero outside.
    static TestFunction cosine_window(double width) {
        if (!(width > 0.0)) throw Error(ErrorCode::InvalidArgument, "width must be positive");
        return TestFunction(Kind::CosineWindow, width);
    }

    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return param_; }

    double h(double t) const {
        if (kind_ == Kind::Gaussian) return std::exp(-t * t / (2 * param_ * param_));
        if (std::abs(t) >= param_) return 0.0;
        const double c = std::cos(std::numbers::pi * t / (2 * param_));
        return c * c;
    }

    double hat(double gamma) const {
        if (kind_ == Kind::Gaussian)
            return param_ * std::sqrt(2 * std::numbers::pi) * std::exp(-param_ * param_ * gamma * gamma / 2);
        const double w = param_, k = std::numbers::pi / w;
        return w * sinc(gamma * w) + 0.5 * w * (sinc((gamma + k) * w) + sinc((gamma - k) * w));
    }

    /// sup_{|s| >= |t|} |h(s)|.
    double h_envelope(double t) const {
        if (kind_ == Kind::Gaussian) return h(std::abs(t));
        return std::abs(t) >= param_ ? 0.0 : 1.0;
    }

    /// Upper bound for sum_{j >= 0} sup_{[a+j, a+j+1]} |hat h|, a >= 0.
    double hat_tail(double a) const {
        a = std::max(a, 0.0);
        if (kind_ == Kind::Gaussian)
            return hat(a) + std::numbers::pi * std::erfc(param_ * a / std::numbers::sqrt2);
        // |hat h| <= w everywhere and <= (4 pi^2 / 3) / (w^2 gamma^3) once w gamma >= 2 pi.
        const double w = param_;
        const double g0 = std::max(a, 2 * std::numbers::pi / w);
        const double near = a < g0 ? w * std::ceil(g0 - a) : 0.0;
        const double c = 4 * std::numbers::pi * std::numbers::pi / (3 * w * w);
        return near + c * (1 / (g0 * g0 * g0) + 1 / (2 * g0 * g0));
    }

    std::string describe() const {
        return (kind_ == Kind::Gaussian ? "gaussian(sigma=" : "cosine_window(width=") + std::to_string(param_) + ")";
    }

private:
    TestFunction(Kind kind, double param) : kind_(kind), param_(param) {}

    static double sinc(double x) {
        if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
        return std::sin(x) / x;
    }

    Kind kind_;
    double param_;
};

/// Both sides of the summation formula, with a certified truncation budget.
struct SummationReport {
    Complex lhs{};
    Complex rhs{};
    double residual = 0.0;
    double window = 0.0;
    int degree_max = 0;
    double tail_estimate = 0.0;
    double zero_tail = 0.0;
    double coeff_tail = 0.0;
    std::size_t zero_count = 0;
    bool relaxed_normalization = false;
};

inline constexpr double kMaxTail = 0.1;

namespace detail {

struct SummationInputs {
    ZeroList zeros;
    LogCoeffTable cp;
    LogCoeffTable cq;
    double zero_tail = 0.0;
    double coeff_tail = 0.0;
};

inline SummationInputs summation_inputs(const StablePair& pair, const FrequencyVec& freq, const TestFunction& test,
                                        double window, int degree_max, int oversample) {
    if (!(window > 0.0) || degree_max < 1)
        throw Error(ErrorCode::InvalidArgument, "window and degree_max must be positive");
    const DirichletSeries f(pair, freq, Side::F);
    SummationInputs in{find_zeros(f, -window, window, oversample), detail::log_table(pair.P(), degree_max),
                       detail::log_table(pair.Q(), degree_max)};

    // Zeros beyond the window: at most ceil(xi.ell / pi) + 1 per unit length.
    const double density = std::ceil(f.bandwidth() / std::numbers::pi) + 1.0;
    in.zero_tail = 2.0 * density * test.hat_tail(window);

    // Coefficients beyond degree_max: |c(k)| <= C, at most (d+1)^n exponents per shell.
    const auto bp = coeff_bound_check(pair.P().normalized(), in.cp);
    const auto bq = coeff_bound_check(pair.Q().normalized(), in.cq);
    const double c = std::max({bp.bound, bq.bound, bp.max_found, bq.max_found});
    const double n = static_cast<double>(pair.arity());
    for (int d = degree_max + 1; d < degree_max + 1000000; ++d) {
        const double env = test.h_envelope(freq.min() * d);
        if (env == 0.0) break;
        const double term = c * std::pow(d + 1.0, n) * freq.max() * d * 2.0 * env;
        in.coeff_tail += term;
        if (term < 1e-300 || (term < 1e-20 * in.coeff_tail && freq.min() * d > 10.0 * test.parameter())) break;
    }
    return in;
}

inline SummationReport finish_report(const SummationInputs& in, const TestFunction& test, Complex rhs,
                                     const StablePair& pair, double window, int degree_max) {
    SummationReport r;
    for (std::size_t j = 0; j < in.zeros.size(); ++j) r.lhs += static_cast<double>(in.zeros.multiplicities[j]) * test.hat(in.zeros.gammas[j]);
    r.rhs = rhs;
    r.residual = std::abs(r.lhs - r.rhs);
    r.window = window;
    r.degree_max = degree_max;
    r.zero_tail = in.zero_tail;
    r.coeff_tail = in.coeff_tail;
    r.tail_estimate = in.zero_tail + in.coeff_tail;
    r.zero_count = in.zeros.size();
    r.relaxed_normalization = pair.relaxed();
    if (r.tail_estimate > kMaxTail)
        throw Error(ErrorCode::TailTooLarge, "truncation tail " + std::to_string(r.tail_estimate) +
                                                 " exceeds " + std::to_string(kMaxTail) + "; enlarge window or degree");
    return r;
}

}  // namespace detail

/// sum_{|gamma| <= A} m(gamma) hat h(gamma)
///   = (xi.ell) h(0) - sum_{|k| <= D} (xi.k) [c_P(k) h(xi.k) + c_Q(k) h(-xi.k)] + truncation.
inline SummationReport verify_summation(const StablePair& pair, const FrequencyVec& freq, const TestFunction& test,
                                        double window, int degree_max, int oversample = 32) {
    const auto in = detail::summation_inputs(pair, freq, test, window, degree_max, oversample);
    Complex rhs = freq.dot(pair.ell()) * test.h(0.0);
    for (const auto& [k, c] : in.cp.coeffs()) rhs -= freq.dot(k) * c * test.h(freq.dot(k));
    for (const auto& [k, c] : in.cq.coeffs()) rhs -= freq.dot(k) * c * test.h(-freq.dot(k));
    return detail::finish_report(in, test, rhs, pair, window, degree_max);
}

/// Self-dual form: (xi.ell) h(0) - sum_k (xi.k) c_P(k) (h(xi.k) + h(-xi.k)).
inline SummationReport verify_summation_symmetric(const StablePair& pair, const FrequencyVec& freq,
                                                  const TestFunction& test, double window, int degree_max,
                                                  int oversample = 32) {
    if (!pair.self_dual()) throw Error(ErrorCode::NotSelfDual, "P and Q differ");
    const auto in = detail::summation_inputs(pair, freq, test, window, degree_max, oversample);
    Complex rhs = freq.dot(pair.ell()) * test.h(0.0);
    for (const auto& [k, c] : in.cp.coeffs()) {
        const double x = freq.dot(k);
        rhs -= x * c * (test.h(x) + test.h(-x));
    }
    return detail::finish_report(in, test, rhs, pair, window, degree_max);
}

struct GrowthReport {
    std::vector<std::pair<double, double>> values;  // (A, |mu-hat|([-A, A]))
    double slope = 0.0;                             // least-squares slope of log V against log A
};

inline double loglog_slope(std::span<const std::pair<double, double>> pts) {
    if (pts.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [a, v] : pts) {
        const double x = std::log(a), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline GrowthReport spectrum_growth(const SpectrumMeasure& spec, std::span<const double> a_values) {
    GrowthReport r;
    double prev = 0.0;
    for (double a : a_values) {
        if (!(a > prev)) throw Error(ErrorCode::InvalidArgument, "A values must be positive and increasing");
        if (a > spec.window) throw Error(ErrorCode::WindowExceeded, "A exceeds the spectrum window");
        r.values.emplace_back(a, spec.total_variation(a));
        prev = a;
    }
    r.slope = loglog_slope(r.values);
    return r;
}

/// mu(x + [-1, 1]) for each x.
inline std::vector<double> translation_bound_profile(const CrystallineMeasure& mu, std::span<const double> xs) {
    std::vector<double> out;
    for (double x : xs) {
        if (x - 1.0 < mu.lo() || x + 1.0 > mu.hi())
            throw Error(ErrorCode::WindowExceeded, "x +- 1 leaves the measure window");
        double mass = 0.0;
        for (std::size_t j = 0; j < mu.size(); ++j)
            if (std::abs(mu.atoms.gammas[j] - x) <= 1.0) mass += mu.atoms.multiplicities[j];
        out.push_back(mass);
    }
    return out;
}

/// |mu-hat|(x + [-1, 1]) for each x.
inline std::vector<double> spectrum_window_profile(const SpectrumMeasure& spec, std::span<const double> xs) {
    std::vector<double> out;
    for (double x : xs) {
        if (std::abs(x) + 1.0 > spec.window) throw Error(ErrorCode::WindowExceeded, "x +- 1 leaves the spectrum window");
        double mass = 0.0;
        for (const auto& at : spec.atoms)
            if (std::abs(at.position - x) <= 1.0) mass += std::abs(at.weight);
        out.push_back(mass);
    }
    return out;
}

}  // namespace fqc
