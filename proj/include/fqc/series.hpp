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
#include <map>
#include <numbers>
#include <vector>

#include "fqc/polynomial.hpp"
#include "fqc/stability.hpp"

namespace fqc {

/// Coefficients c(k), 1 <= |k| <= degree_max, of log P = sum_k c(k) z^k.
/// Entries with |c(k)| below kDropTol are not stored; c(0) never is.
class LogCoeffTable {
public:
    static constexpr double kDropTol = 1e-15;

    LogCoeffTable(std::size_t n, int degree_max) : n_(n), degree_max_(degree_max) {}

    std::size_t arity() const noexcept { return n_; }
    int degree_max() const noexcept { return degree_max_; }
    const std::map<ExponentVec, Complex>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool empty() const noexcept { return coeffs_.empty(); }

    Complex at(const ExponentVec& k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Complex{} : it->second;
    }

    void set(const ExponentVec& k, Complex c) {
        if (k.is_zero()) return;
        if (std::abs(c) < kDropTol) {
            coeffs_.erase(k);
            return;
        }
        coeffs_[k] = c;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// max_{|k| = d} |c(k)| for d = 1..degree_max (index d-1).
    std::vector<double> shell_maxima() const {
        std::vector<double> m(static_cast<std::size_t>(std::max(degree_max_, 0)), 0.0);
        for (const auto& [k, c] : coeffs_) {
            auto& slot = m[static_cast<std::size_t>(k.total_degree() - 1)];
            slot = std::max(slot, std::abs(c));
        }
        return m;
    }

private:
    std::size_t n_;
    int degree_max_;
    std::map<ExponentVec, Complex> coeffs_;
};

namespace detail {

inline void require_normalized(const MultiPoly& p, int degree_max) {
    if (std::abs(p.constant_term() - Complex(1.0)) > 1e-14) throw Error(ErrorCode::NotNormalized, "P(0) != 1");
    if (degree_max < 1) throw Error(ErrorCode::InvalidArgument, "degree_max must be >= 1");
}

}  // namespace detail

inline constexpr int kMaxMultinomialDegree = 16;

/// c(k) = sum_nu (-1)^(nu+1) / nu * sum_{m_1 + ... + m_nu = k} a(m_1) ... a(m_nu),
/// by enumerating every ordered tuple of non-constant monomials. Exponential in
/// degree_max; use as an oracle only.
inline LogCoeffTable log_coeffs_multinomial(const MultiPoly& p, int degree_max) {
    detail::require_normalized(p, degree_max);
    if (degree_max > kMaxMultinomialDegree)
        throw Error(ErrorCode::Unsupported, "composition enumeration is limited to degree_max <= 16");

    std::vector<std::pair<ExponentVec, Complex>> mono;
    for (const auto& [e, c] : p.terms())
        if (!e.is_zero()) mono.emplace_back(e, c.value);

    std::map<ExponentVec, Complex> acc;
    auto dfs = [&](auto&& self, const ExponentVec& sum, int degree, int nu, Complex prod) -> void {
        if (nu > 0) acc[sum] += (nu % 2 ? 1.0 : -1.0) / nu * prod;
        for (const auto& [m, a] : mono) {
            const int d = degree + m.total_degree();
            if (d > degree_max) continue;
            self(self, sum + m, d, nu + 1, prod * a);
        }
    };
    dfs(dfs, ExponentVec(p.arity()), 0, 0, Complex(1.0));

    LogCoeffTable table(p.arity(), degree_max);
    for (const auto& [k, c] : acc) table.set(k, c);
    return table;
}

/// Graded recurrence from E(log P) * P = E P with E = sum_j z_j d/dz_j:
///   |k| c(k) = |k| a(k) - sum_{0 < m < k} a(m) |k - m| c(k - m).
inline LogCoeffTable log_coeffs_recurrence(const MultiPoly& p, int degree_max) {
    detail::require_normalized(p, degree_max);
    const std::size_t n = p.arity();

    std::vector<std::pair<ExponentVec, Complex>> mono;
    for (const auto& [e, c] : p.terms())
        if (!e.is_zero() && e.total_degree() <= degree_max) mono.emplace_back(e, c.value);

    std::map<ExponentVec, Complex> full;
    for (int d = 1; d <= degree_max; ++d) {
        for (const auto& k : exponents_of_degree(n, d)) {
            Complex s = p.coefficient(k) * static_cast<double>(d);
            for (const auto& [m, a] : mono) {
                if (m == k || !m.dominated_by(k)) continue;
                const ExponentVec rest = k - m;
                auto it = full.find(rest);
                if (it != full.end()) s -= a * static_cast<double>(rest.total_degree()) * it->second;
            }
            s /= static_cast<double>(d);
            if (s != Complex{}) full.emplace(k, s);
        }
    }

    LogCoeffTable table(n, degree_max);
    for (const auto& [k, c] : full) table.set(k, c);
    return table;
}

/// Closed-form coefficient c(n1, 2 n2) of log(1 - z1/3 + z2^2/3 - z1 z2^2):
///   - sum_{k1 + k3 = n1, k2 + k3 = n2} (k1+k2+k3-1)! / (k1! k2! k3!) (-1)^k2 / 3^(k1+k2).
inline Complex example_cn(int n1, int n2) {
    if (n1 < 0 || n2 < 0 || (n1 == 0 && n2 == 0))
        throw Error(ErrorCode::InvalidArgument, "need (n1, n2) != (0, 0) with n1, n2 >= 0");
    long double sum = 0.0L;
    for (int k3 = 0; k3 <= std::min(n1, n2); ++k3) {
        const int k1 = n1 - k3, k2 = n2 - k3;
        const long double log_mag = std::lgamma(static_cast<long double>(k1 + k2 + k3)) -
                                    std::lgamma(k1 + 1.0L) - std::lgamma(k2 + 1.0L) - std::lgamma(k3 + 1.0L) -
                                    (k1 + k2) * std::log(3.0L);
        const long double term = std::exp(log_mag);
        sum += (k2 % 2 ? -term : term);
    }
    return Complex(static_cast<double>(-sum), 0.0);
}

struct CoeffBound {
    double bound = 0.0;
    double max_found = 0.0;
    double sup_modulus = 1.0;  // K, the estimated sup of |P| on the polydisk
    bool pass = true;
};

/// Estimates K = sup |P| over the unit polycircle (64^n grid for n <= 3,
/// 10^6 Halton points otherwise).
inline double torus_sup_modulus(const MultiPoly& p) {
    const std::size_t n = p.arity();
    double k = 0.0;
    std::vector<double> theta(n);
    if (n <= 3) {
        constexpr std::size_t g = 64;
        std::size_t total = 1;
        for (std::size_t j = 0; j < n; ++j) total *= g;
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t r = idx;
            for (std::size_t j = 0; j < n; ++j, r /= g)
                theta[j] = 2.0 * std::numbers::pi * static_cast<double>(r % g) / g;
            k = std::max(k, std::abs(p.on_torus(theta)));
        }
    } else {
        std::vector<double> shift(n, 0.0), u(n);
        for (std::uint64_t i = 0; i < 1000000; ++i) {
            detail::halton(i, shift, u);
            for (std::size_t j = 0; j < n; ++j) theta[j] = 2.0 * std::numbers::pi * u[j];
            k = std::max(k, std::abs(p.on_torus(theta)));
        }
    }
    return k;
}

/// Checks max |c(k)| <= sqrt((2 ln K)^2 + (pi deg P)^2), with the torus measure
/// normalized to total mass one.
inline CoeffBound coeff_bound_check(const MultiPoly& p, const LogCoeffTable& table) {
    CoeffBound out;
    out.sup_modulus = std::max(1.0, torus_sup_modulus(p));
    const double log_part = 2.0 * std::log(out.sup_modulus);
    const double arg_part = std::numbers::pi * p.total_degree();
    out.bound = std::hypot(log_part, arg_part);
    out.max_found = table.max_abs();
    out.pass = out.max_found <= out.bound * (1.0 + 1e-6);
    return out;
}

}  // namespace fqc
