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

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fqc/polynomial.hpp"

namespace fqc {

enum class Verdict { NoCounterexampleFound, CounterexampleFound };

/// Outcome of a randomized search for zeros inside the open unit polydisk.
/// A NoCounterexampleFound verdict is evidence, never a certificate.
struct StabilityReport {
    std::size_t samples_tested = 0;
    double min_modulus_found = std::numeric_limits<double>::infinity();
    std::optional<std::vector<Complex>> witness;
    Verdict verdict = Verdict::NoCounterexampleFound;
};

struct StabilityOptions {
    std::size_t budget = 100000;
    std::vector<double> radii{0.5, 0.9, 0.99, 0.999};
    std::uint64_t seed = 0;
};

inline constexpr double kWitnessTol = 1e-9;

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint32_t base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

inline std::uint32_t nth_prime(std::size_t j) {
    static const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
    return primes[j % std::size(primes)];
}

/// Halton point with a Cranley-Patterson rotation, in [0,1)^dim.
inline void halton(std::uint64_t index, std::span<const double> shift, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) {
        double u = radical_inverse(index + 1, nth_prime(j)) + shift[j];
        out[j] = u - std::floor(u);
    }
}

/// Roots of c_0 + c_1 x + ... + c_d x^d via companion-matrix eigenvalues.
/// Leading coefficients that are negligible relative to the rest are dropped.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    const std::size_t d = c.size() - 1;
    if (d == 0) return {};
    if (d == 1) return {-c[0] / c[1]};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    const auto& ev = es.eigenvalues();
    return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

inline Complex horner(std::span<const Complex> c, Complex x, Complex* derivative = nullptr) {
    Complex v{}, dv{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dv = dv * x + v;
        v = v * x + *it;
    }
    if (derivative) *derivative = dv;
    return v;
}

inline Complex newton_polish(std::span<const Complex> c, Complex x) {
    for (int it = 0; it < 8; ++it) {
        Complex d;
        Complex v = horner(c, x, &d);
        if (d == Complex{}) break;
        Complex step = v / d;
        x -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

}  // namespace detail

/// Randomized falsification of D-stability (no zeros in the open unit polydisk).
///
/// Phase (a) evaluates P at quasi-random points of the polycircles |z_j| = r for
/// every radius r. Phase (b) fixes all but one variable at random points of the
/// closed disks |z| <= r and computes the roots of the remaining univariate
/// polynomial; a root with modulus below 1 - 1e-9 gives a witness. Both phases
/// share the budget and are deterministic for a given seed.
inline StabilityReport falsify_stability(const MultiPoly& p, const StabilityOptions& opts = {}) {
    if (opts.budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
    if (opts.radii.empty()) throw Error(ErrorCode::InvalidArgument, "radii must be non-empty");
    for (double r : opts.radii)
        if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "radii must lie in (0, 1)");
    if (p.is_constant()) throw Error(ErrorCode::DegenerateInput, "constant polynomial");

    const std::size_t n = p.arity();
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    StabilityReport report;

    auto accept = [&](std::vector<Complex> z) {
        const double m = std::abs(p(z));
        report.min_modulus_found = std::min(report.min_modulus_found, m);
        bool inside = true;
        for (const auto& v : z) inside = inside && std::abs(v) < 1.0;
        if (inside && m < kWitnessTol) {
            report.witness = std::move(z);
            report.verdict = Verdict::CounterexampleFound;
            return true;
        }
        return false;
    };

    // Phase (a): polycircle sampling.
    const std::size_t phase_a = std::max<std::size_t>(1, opts.budget / 2);
    std::vector<double> shift(n), u(n);
    for (auto& s : shift) s = unif(rng);
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < phase_a; ++i) {
        const double r = opts.radii[i % opts.radii.size()];
        detail::halton(i / opts.radii.size(), shift, u);
        for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(r, 2.0 * std::numbers::pi * u[j]);
        ++report.samples_tested;
        if (accept(z)) return report;
    }

    // Phase (b): univariate root checks along random slices.
    const std::size_t phase_b = opts.budget > phase_a ? opts.budget - phase_a : 0;
    for (std::size_t i = 0; i < phase_b; ++i) {
        const std::size_t var = i % n;
        const double r = opts.radii[(i / n) % opts.radii.size()];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == var) {
                z[j] = 0.0;
                continue;
            }
            z[j] = std::polar(r * std::sqrt(unif(rng)), 2.0 * std::numbers::pi * unif(rng));
        }
        ++report.samples_tested;
        const auto coeffs = p.univariate(var, z);
        const auto roots = detail::polynomial_roots(coeffs);
        if (roots.empty()) {
            // The slice is constant in z_var.
            if (std::abs(coeffs.front()) < kWitnessTol && accept(z)) return report;
            continue;
        }
        for (const auto& root : roots) {
            if (!(std::abs(root) < 1.0 - 1e-9)) continue;
            std::vector<Complex> w = z;
            w[var] = detail::newton_polish(coeffs, root);
            if (accept(std::move(w))) return report;
        }
    }
    return report;
}

/// Runs falsify_stability on P and on Q with the same options.
inline std::pair<StabilityReport, StabilityReport> verify_pair_stability(const StablePair& pair,
                                                                         const StabilityOptions& opts = {}) {
    return {falsify_stability(pair.P(), opts), falsify_stability(pair.Q(), opts)};
}

}  // namespace fqc
