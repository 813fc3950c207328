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
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "fqc/polynomial.hpp"

namespace fqc {

/// xi_j = ln b_j > 0.
class FrequencyVec {
public:
    explicit FrequencyVec(std::vector<double> xi) : xi_(std::move(xi)) {
        if (xi_.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one frequency");
        for (double x : xi_)
            if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "frequencies must be positive");
    }

    std::size_t size() const noexcept { return xi_.size(); }
    double operator[](std::size_t j) const { return xi_.at(j); }
    std::span<const double> values() const noexcept { return xi_; }

    double dot(const ExponentVec& k) const {
        if (k.size() != xi_.size()) throw Error(ErrorCode::WrongArity, "exponent and frequency length differ");
        double s = 0.0;
        for (std::size_t j = 0; j < xi_.size(); ++j) s += xi_[j] * k[j];
        return s;
    }
    double min() const { return *std::min_element(xi_.begin(), xi_.end()); }
    double max() const { return *std::max_element(xi_.begin(), xi_.end()); }

private:
    std::vector<double> xi_;
};

/// omega with |omega| = 1 such that omega e^{-i ell.theta/2} P(e^{i theta}) is real
/// on the torus, if P has that symmetry (conj a(m) = kappa a(ell - m)).
inline std::optional<Complex> real_phase(const MultiPoly& p, const ExponentVec& ell, double tol = 1e-12) {
    const Complex a0 = p.constant_term();
    const Complex top = p.coefficient(ell);
    if (a0 == Complex{} || top == Complex{}) return std::nullopt;
    const Complex kappa = std::conj(a0) / top;
    if (std::abs(std::abs(kappa) - 1.0) > tol) return std::nullopt;
    for (const auto& [m, c] : p.terms()) {
        if (!m.dominated_by(ell)) return std::nullopt;
        const Complex mirror = p.coefficient(ell - m);
        if (std::abs(std::conj(c.value) - kappa * mirror) > tol * std::max(1.0, std::abs(c.value))) return std::nullopt;
    }
    return std::sqrt(kappa);
}

enum class Side { F, G };

/// F(s) = P(b^{-s}) (side F) or G(s) = Q(b^{-s}) (side G), as a finite
/// Dirichlet series sum_m a(m) e^{-(xi.m) s}.
class DirichletSeries {
public:
    struct Term {
        Complex coeff;
        double freq;
    };

    DirichletSeries(const StablePair& pair, FrequencyVec freq, Side side = Side::F)
        : pair_(pair), freq_(std::move(freq)), side_(side) {
        if (freq_.size() != pair_.arity())
            throw Error(ErrorCode::WrongArity, "frequency vector length does not match the pair's arity");
        for (const auto& [m, c] : poly().terms()) {
            terms_.push_back({c.value, freq_.dot(m)});
            derivative_bound_ += std::abs(c.value) * freq_.dot(m);
        }
        bandwidth_ = freq_.dot(pair_.ell());
        phase_ = real_phase(poly(), pair_.ell());
    }

    const StablePair& pair() const noexcept { return pair_; }
    const FrequencyVec& freq() const noexcept { return freq_; }
    Side side() const noexcept { return side_; }
    const MultiPoly& poly() const noexcept { return side_ == Side::F ? pair_.P() : pair_.Q(); }
    std::span<const Term> terms() const noexcept { return terms_; }

    /// xi . ell, the length of the frequency support.
    double bandwidth() const noexcept { return bandwidth_; }
    /// sum |a(m)| (xi.m), an upper bound for |d/dgamma F(i gamma)|.
    double derivative_bound() const noexcept { return derivative_bound_; }
    std::optional<Complex> phase() const noexcept { return phase_; }

    Complex operator()(Complex s) const {
        Complex v{};
        for (const auto& t : terms_) v += t.coeff * std::exp(-t.freq * s);
        return v;
    }

    Complex derivative(Complex s) const {
        Complex v{};
        for (const auto& t : terms_) v -= t.freq * t.coeff * std::exp(-t.freq * s);
        return v;
    }

    Complex second_derivative(Complex s) const {
        Complex v{};
        for (const auto& t : terms_) v += t.freq * t.freq * t.coeff * std::exp(-t.freq * s);
        return v;
    }

    /// F(i gamma) for real gamma.
    Complex on_axis(double gamma) const {
        Complex v{};
        for (const auto& t : terms_) v += t.coeff * std::polar(1.0, -t.freq * gamma);
        return v;
    }

    /// d/dgamma F(i gamma) = sum a(m) (-i xi.m) e^{-i gamma xi.m}.
    Complex on_axis_derivative(double gamma) const {
        Complex v{};
        for (const auto& t : terms_) v += t.coeff * Complex(0.0, -t.freq) * std::polar(1.0, -t.freq * gamma);
        return v;
    }

private:
    StablePair pair_;
    FrequencyVec freq_;
    Side side_;
    std::vector<Term> terms_;
    double bandwidth_ = 0.0;
    double derivative_bound_ = 0.0;
    std::optional<Complex> phase_;
};

/// max_s |F(-s) - eta^{-1} e^{s xi.ell} G(s)| / (1 + |F(-s)|).
inline double functional_eq_residual(const DirichletSeries& f, const DirichletSeries& g,
                                     std::span<const Complex> samples) {
    if (f.side() != Side::F || g.side() != Side::G)
        throw Error(ErrorCode::InvalidArgument, "expected an F series and a G series");
    if (max_coefficient_distance(f.pair().P(), g.pair().P()) != 0.0 ||
        max_coefficient_distance(f.pair().Q(), g.pair().Q()) != 0.0)
        throw Error(ErrorCode::InvalidArgument, "series come from different pairs");
    const double lambda = f.bandwidth();
    const Complex inv_eta = 1.0 / f.pair().eta();
    double worst = 0.0;
    for (const Complex& s : samples) {
        const Complex lhs = f(-s);
        const Complex rhs = inv_eta * std::exp(s * lambda) * g(s);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    return worst;
}

/// Zeros i gamma_j of F on the imaginary axis within [lo, hi].
struct ZeroList {
    std::vector<double> gammas;
    std::vector<int> multiplicities;
    std::vector<double> residuals;
    double lo = 0.0;
    double hi = 0.0;

    std::size_t size() const noexcept { return gammas.size(); }
    bool empty() const noexcept { return gammas.empty(); }
    int total_multiplicity() const {
        int s = 0;
        for (int m : multiplicities) s += m;
        return s;
    }
};

struct ZeroSearchOptions {
    int oversample = 32;
    int max_iterations = 60;
    double residual_tol = 1e-12;
    double dedupe_tol = 1e-8;
    double accept_tol = 1e-9;
};

namespace detail {

/// Winding number of F around the circle |s - center| = radius.
inline int winding_number(const DirichletSeries& f, Complex center, double radius) {
    for (int samples = 64; samples <= 4096; samples *= 2) {
        Complex prev = f(center + radius);
        double total = 0.0;
        bool smooth = true;
        for (int j = 1; j <= samples; ++j) {
            const Complex cur = f(center + std::polar(radius, 2.0 * std::numbers::pi * j / samples));
            const double d = std::arg(cur / prev);
            if (std::abs(d) > std::numbers::pi / 2) {
                smooth = false;
                break;
            }
            total += d;
            prev = cur;
        }
        if (smooth) return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    }
    throw Error(ErrorCode::WindowTooCoarse, "argument principle did not resolve near a zero");
}

struct Candidate {
    double gamma;
    double seed;
    double residual;
    bool free;  // found from a local minimum rather than a sign change
};

}  // namespace detail

/// Locates the zeros of F on the imaginary axis inside [lo, hi].
///
/// The map gamma -> F(i gamma) is sampled on a grid of spacing
/// 2 pi / ((xi.ell) oversample). When F has the conjugate symmetry returned by
/// real_phase(), sign changes of the real function omega e^{i gamma xi.ell/2} F(i gamma)
/// are bracketed and polished by safeguarded Newton; local minima of |F(i gamma)|
/// are polished by multiplicity-independent Newton (Schroeder) in the complex
/// gamma plane, which catches zeros of even multiplicity and handles series
/// without the symmetry. Multiplicities come from the argument principle.
inline ZeroList find_zeros(const DirichletSeries& f, double lo, double hi, const ZeroSearchOptions& opts = {}) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
        throw Error(ErrorCode::InvalidArgument, "window must be a finite interval");
    if (opts.oversample < 4) throw Error(ErrorCode::InvalidArgument, "oversample must be >= 4");

    const double lambda = f.bandwidth();
    const double h = 2.0 * std::numbers::pi / (lambda * opts.oversample);
    const std::size_t cells = hi > lo ? static_cast<std::size_t>(std::ceil((hi - lo) / h)) : 0;
    const double step = cells ? (hi - lo) / static_cast<double>(cells) : 0.0;
    auto grid = [&](std::size_t i) { return i == cells ? hi : lo + static_cast<double>(i) * step; };

    const auto omega = f.phase();
    auto real_part = [&](double g) { return std::real(*omega * std::polar(1.0, g * lambda / 2) * f.on_axis(g)); };
    auto real_derivative = [&](double g) {
        const Complex rot = *omega * std::polar(1.0, g * lambda / 2);
        return std::real(rot * (Complex(0.0, lambda / 2) * f.on_axis(g) + f.on_axis_derivative(g)));
    };

    std::vector<double> mag(cells + 1), re(omega ? cells + 1 : 0);
    for (std::size_t i = 0; i <= cells; ++i) {
        mag[i] = std::abs(f.on_axis(grid(i)));
        if (omega) re[i] = real_part(grid(i));
    }
    auto sign_change = [&](std::size_t i) { return omega && i < cells && re[i] * re[i + 1] < 0.0; };

    std::vector<detail::Candidate> cands;
    auto residual_at = [&](double g) { return std::abs(f.on_axis(g)); };

    // Exact hits on grid points.
    for (std::size_t i = 0; i <= cells; ++i)
        if (mag[i] <= 1e-14) cands.push_back({grid(i), grid(i), mag[i], false});

    // Sign changes of the real normalized function.
    for (std::size_t i = 0; omega && i < cells; ++i) {
        if (!sign_change(i)) continue;
        double a = grid(i), b = grid(i + 1), ra = re[i];
        double x = (std::abs(re[i]) < std::abs(re[i + 1])) ? a : b;
        for (int it = 0; it < 2 * opts.max_iterations; ++it) {
            const double r = real_part(x);
            if (r == 0.0) break;
            if ((r < 0) == (ra < 0)) {
                a = x;
                ra = r;
            } else {
                b = x;
            }
            const double dr = real_derivative(x);
            double next = dr != 0.0 ? x - r / dr : 0.5 * (a + b);
            if (!(next > a && next < b)) next = 0.5 * (a + b);
            const bool done = std::abs(next - x) <= 2e-16 * std::max(1.0, std::abs(x)) ||
                              (it >= opts.max_iterations && residual_at(next) < opts.residual_tol);
            x = next;
            if (done || b - a <= 4e-16 * std::max(1.0, std::abs(x))) break;
        }
        cands.push_back({x, grid(i), residual_at(x), false});
    }

    // Local minima of |F(i gamma)| not explained by a sign change.
    const double min_threshold = std::max(1e-3, step * f.derivative_bound());
    for (std::size_t i = 0; i <= cells; ++i) {
        const double left = i > 0 ? mag[i - 1] : std::numeric_limits<double>::infinity();
        const double right = i < cells ? mag[i + 1] : std::numeric_limits<double>::infinity();
        if (!(mag[i] <= left && mag[i] <= right && mag[i] < min_threshold) || mag[i] <= 1e-14) continue;
        if (omega && ((i > 0 && sign_change(i - 1)) || sign_change(i))) continue;
        Complex g(grid(i), 0.0);
        for (int it = 0; it < opts.max_iterations; ++it) {
            const Complex s(-g.imag(), g.real());  // s = i g
            const Complex v = f(s);
            const Complex d1 = Complex(0.0, 1.0) * f.derivative(s);
            const Complex d2 = -f.second_derivative(s);
            const Complex denom = d1 * d1 - v * d2;
            if (std::abs(v) < 1e-16 || denom == Complex{}) break;
            const Complex delta = v * d1 / denom;
            g -= delta;
            if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(g))) break;
        }
        if (std::abs(g.imag()) > 1e-6) continue;
        const double x = g.real();
        const double res = residual_at(x);
        if (!(res < opts.accept_tol)) continue;
        cands.push_back({x, grid(i), res, true});
    }

    std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.gamma < b.gamma; });

    // Deduplicate; distinct seeds far apart converging together means the grid
    // missed an oscillation.
    std::vector<detail::Candidate> zeros;
    std::vector<std::pair<double, double>> seed_span;
    for (const auto& c : cands) {
        if (!(c.residual < opts.accept_tol)) continue;
        if (!zeros.empty() && std::abs(c.gamma - zeros.back().gamma) <= opts.dedupe_tol) {
            auto& span = seed_span.back();
            span.first = std::min(span.first, c.seed);
            span.second = std::max(span.second, c.seed);
            if (span.second - span.first > 2.0 * step + 1e-12)
                throw Error(ErrorCode::WindowTooCoarse,
                            "zero near " + std::to_string(c.gamma) + " reached from distant grid cells");
            if (c.residual < zeros.back().residual) {
                const bool free = zeros.back().free && c.free;
                zeros.back() = c;
                zeros.back().free = free;
            } else {
                zeros.back().free = zeros.back().free && c.free;
            }
            continue;
        }
        zeros.push_back(c);
        seed_span.emplace_back(c.seed, c.seed);
    }

    ZeroList out;
    out.lo = lo;
    out.hi = hi;
    std::vector<detail::Candidate> kept;
    for (const auto& z : zeros)
        if (z.gamma >= lo - 1e-9 && z.gamma <= hi + 1e-9) kept.push_back(z);

    for (std::size_t j = 0; j < kept.size(); ++j) {
        double gap = std::numeric_limits<double>::infinity();
        if (j > 0) gap = std::min(gap, kept[j].gamma - kept[j - 1].gamma);
        if (j + 1 < kept.size()) gap = std::min(gap, kept[j + 1].gamma - kept[j].gamma);
        const double radius = std::min(1e-4, 0.5 * gap);
        const int m = detail::winding_number(f, Complex(0.0, kept[j].gamma), radius);
        if (m < 1) continue;
        // A simple crossing found only as a local minimum implies a second,
        // unresolved sign change in the same cell.
        if (omega && kept[j].free && m % 2 == 1)
            throw Error(ErrorCode::WindowTooCoarse,
                        "odd-order zero near " + std::to_string(kept[j].gamma) + " without a bracketing sign change");
        out.gammas.push_back(kept[j].gamma);
        out.multiplicities.push_back(m);
        out.residuals.push_back(kept[j].residual);
    }
    return out;
}

inline ZeroList find_zeros(const DirichletSeries& f, double lo, double hi, int oversample) {
    ZeroSearchOptions opts;
    opts.oversample = oversample;
    return find_zeros(f, lo, hi, opts);
}

/// L(gamma xi_1, gamma xi_2) = 3 sin(gamma (xi_1/2 + xi_2)) + sin(gamma (xi_1/2 - xi_2)),
/// the real form of F(i gamma) for the lasso polynomial.
inline std::vector<double> secular_values(const FrequencyVec& freq, std::span<const double> gammas) {
    if (freq.size() != 2) throw Error(ErrorCode::WrongArity, "secular equation needs two frequencies");
    const double plus = freq[0] / 2 + freq[1];
    const double minus = freq[0] / 2 - freq[1];
    std::vector<double> out;
    out.reserve(gammas.size());
    for (double g : gammas) out.push_back(3.0 * std::sin(plus * g) + std::sin(minus * g));
    return out;
}

/// L(x, y) = 3 sin(x/2 + y) + sin(x/2 - y).
inline double lasso_laurent(double x, double y) { return 3.0 * std::sin(x / 2 + y) + std::sin(x / 2 - y); }

/// Result of comparing the argument-principle count of zeros in the strip
/// |Re s| <= half_width, gamma_a < Im s < gamma_b with the on-axis count.
struct OffAxisReport {
    int winding_total = 0;
    int on_axis_count = 0;
    bool consistent = false;
};

namespace detail {

inline double arg_change(const DirichletSeries& f, Complex a, Complex b, Complex fa, Complex fb, int depth) {
    const double d = std::arg(fb / fa);
    if (depth >= 40 || (std::abs(d) < std::numbers::pi / 8 && std::abs(b - a) < 0.05)) return d;
    const Complex mid = 0.5 * (a + b);
    const Complex fm = f(mid);
    return arg_change(f, a, mid, fa, fm, depth + 1) + arg_change(f, mid, b, fm, fb, depth + 1);
}

}  // namespace detail

/// Diagnostic: counts zeros inside a rectangle around the imaginary axis by the
/// argument principle and compares with find_zeros on [gamma_a, gamma_b]. The
/// horizontal edges must not pass through zeros.
inline OffAxisReport off_axis_check(const DirichletSeries& f, double gamma_a, double gamma_b, double half_width = 1.0,
                                    int oversample = 32) {
    if (!(gamma_b > gamma_a) || !(half_width > 0.0))
        throw Error(ErrorCode::InvalidArgument, "rectangle must be non-degenerate");
    const Complex corners[4] = {{-half_width, gamma_a}, {half_width, gamma_a}, {half_width, gamma_b}, {-half_width, gamma_b}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        const Complex a = corners[e], b = corners[(e + 1) % 4];
        total += detail::arg_change(f, a, b, f(a), f(b), 0);
    }
    OffAxisReport r;
    r.winding_total = static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    r.on_axis_count = find_zeros(f, gamma_a, gamma_b, oversample).total_multiplicity();
    r.consistent = r.winding_total == r.on_axis_count;
    return r;
}

}  // namespace fqc
