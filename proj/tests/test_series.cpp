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
#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fqc/builtins.hpp"
#include "fqc/series.hpp"

namespace {

using fqc::Complex;
using fqc::ExponentVec;
using fqc::MultiPoly;
using fqc::Rational;

using Series = std::map<std::vector<int>, Complex>;

int degree(const std::vector<int>& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

Series truncated_product(const Series& a, const Series& b, int max_degree) {
    Series out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
            if (degree(e) <= max_degree) out[e] += ca * cb;
        }
    return out;
}

// Independent oracle: log(1 + u) = sum_j (-1)^{j+1} u^j / j with u = P - 1,
// every power truncated at total degree D.
Series log_by_powers(const MultiPoly& p, int max_degree) {
    Series u;
    for (const auto& [e, c] : p.terms())
        if (!e.is_zero()) u[std::vector<int>(e.entries().begin(), e.entries().end())] = c.value;
    Series out, power = u;
    for (int j = 1; j <= max_degree && !power.empty(); ++j) {
        for (const auto& [e, c] : power) out[e] += (j % 2 ? 1.0 : -1.0) / j * c;
        power = truncated_product(power, u, max_degree);
    }
    return out;
}

MultiPoly random_normalized(std::mt19937_64& rng, std::size_t n, int max_deg, int terms) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_real_distribution<double> coef(-0.6, 0.6);
    MultiPoly p(n);
    p.add(ExponentVec(n), Complex(1.0));
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(n);
        for (auto& x : e) x = deg(rng);
        if (degree(e) == 0) continue;
        p.add(ExponentVec(e), Complex(coef(rng), coef(rng)));
    }
    return p;
}

TEST(LogCoefficients, LassoGoldenValues) {
    const auto p = fqc::builtins::lasso_polynomial();
    const auto rec = fqc::log_coeffs_recurrence(p, 3);
    const auto multi = fqc::log_coeffs_multinomial(p, 3);
    const struct {
        ExponentVec k;
        double value;
    } golden[] = {{{1, 0}, -1.0 / 3.0}, {{0, 2}, 1.0 / 3.0}, {{1, 2}, -8.0 / 9.0}};
    for (const auto& g : golden) {
        EXPECT_NEAR(std::abs(rec.at(g.k) - g.value), 0.0, 1e-12) << g.k.str();
        EXPECT_NEAR(std::abs(multi.at(g.k) - g.value), 0.0, 1e-12) << g.k.str();
    }
    EXPECT_NEAR(std::abs(fqc::example_cn(1, 0) + 1.0 / 3.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(fqc::example_cn(0, 1) - 1.0 / 3.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(fqc::example_cn(1, 1) + 8.0 / 9.0), 0.0, 1e-12);
}

TEST(LogCoefficients, LassoOnlyEvenPowersOfZ2) {
    const auto table = fqc::log_coeffs_recurrence(fqc::builtins::lasso_polynomial(), 20);
    for (const auto& [k, c] : table.coeffs()) EXPECT_EQ(k[1] % 2, 0) << k.str();
}

TEST(LogCoefficients, ClosedFormMatchesRecurrenceOnLasso) {
    const auto table = fqc::log_coeffs_recurrence(fqc::builtins::lasso_polynomial(), 30);
    for (int n1 = 0; n1 <= 10; ++n1)
        for (int n2 = 0; 2 * n2 + n1 <= 30 && n2 <= 10; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const Complex cf = fqc::example_cn(n1, n2);
            EXPECT_NEAR(std::abs(table.at(ExponentVec{n1, 2 * n2}) - cf), 0.0, 1e-11 * (1.0 + std::abs(cf)))
                << n1 << "," << n2;
        }
}

TEST(LogCoefficients, PoissonIsMinusOneOverK) {
    MultiPoly p(1);
    p.add({0}, Rational(1));
    p.add({1}, Rational(-1));
    const auto table = fqc::log_coeffs_recurrence(p, 40);
    for (int k = 1; k <= 40; ++k) EXPECT_NEAR(std::abs(table.at(ExponentVec{k}) + 1.0 / k), 0.0, 1e-15);
}

TEST(LogCoefficients, AllAlgorithmsAgreeWithPowerSeriesOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto p = random_normalized(rng, n, 2, 3);
        const int d = 6;
        const auto oracle = log_by_powers(p, d);
        const auto rec = fqc::log_coeffs_recurrence(p, d);
        const auto multi = fqc::log_coeffs_multinomial(p, d);
        for (const auto& [e, c] : oracle) {
            const ExponentVec k(e);
            EXPECT_NEAR(std::abs(rec.at(k) - c), 0.0, 1e-12) << k.str();
            EXPECT_NEAR(std::abs(multi.at(k) - c), 0.0, 1e-12) << k.str();
        }
        for (const auto& [k, c] : rec.coeffs())
            EXPECT_TRUE(oracle.count(std::vector<int>(k.entries().begin(), k.entries().end()))) << k.str();
    }
}

TEST(LogCoefficients, ExponentialOfLogReproducesPolynomial) {
    // Round trip: P = exp(sum c(k) z^k) through degree D.
    const auto p = fqc::builtins::lasso_polynomial();
    const int d = 9;
    const auto table = fqc::log_coeffs_recurrence(p, d);
    Series l;
    for (const auto& [k, c] : table.coeffs()) l[std::vector<int>(k.entries().begin(), k.entries().end())] = c;
    Series exp_l{{{0, 0}, 1.0}}, power{{{0, 0}, 1.0}};
    double fact = 1.0;
    for (int j = 1; j <= d; ++j) {
        power = truncated_product(power, l, d);
        fact *= j;
        for (const auto& [e, c] : power) exp_l[e] += c / fact;
    }
    for (const auto& [e, c] : exp_l) EXPECT_NEAR(std::abs(c - p.coefficient(ExponentVec(e))), 0.0, 1e-12);
}

TEST(LogCoefficients, Preconditions) {
    MultiPoly p(1);
    p.add({0}, Rational(2));
    p.add({1}, Rational(-1));
    EXPECT_THROW(fqc::log_coeffs_recurrence(p, 3), fqc::Error);
    EXPECT_THROW(fqc::log_coeffs_recurrence(fqc::builtins::lasso_polynomial(), 0), fqc::Error);
    try {
        fqc::log_coeffs_multinomial(fqc::builtins::lasso_polynomial(), 17);
        FAIL();
    } catch (const fqc::Error& e) {
        EXPECT_EQ(e.code(), fqc::ErrorCode::Unsupported);
    }
    EXPECT_THROW(fqc::example_cn(0, 0), fqc::Error);
}

TEST(CoefficientBound, HoldsForLasso) {
    const auto p = fqc::builtins::lasso_polynomial();
    const auto table = fqc::log_coeffs_recurrence(p, 40);
    const auto b = fqc::coeff_bound_check(p, table);
    EXPECT_TRUE(b.pass);
    // sup |P| on the torus is 8/3, attained at z1 = -1, z2 = 1.
    EXPECT_NEAR(b.sup_modulus, 8.0 / 3.0, 1e-12);
    EXPECT_NEAR(b.bound, std::hypot(2 * std::log(8.0 / 3.0), 3 * std::numbers::pi), 1e-12);
    EXPECT_LE(b.max_found, 1.0);
}

TEST(CoefficientBound, HoldsForRandomStableProducts) {
    // Products of (1 - w z_j) with |w| <= 1 are stable.
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, 6.283185307179586);
    for (int trial = 0; trial < 10; ++trial) {
        MultiPoly p = MultiPoly::constant(2, Complex(1.0));
        for (int f = 0; f < 3; ++f) {
            MultiPoly factor(2);
            factor.add({0, 0}, Complex(1.0));
            factor.add(f % 2 ? ExponentVec{0, 1} : ExponentVec{1, 0}, -std::polar(rad(rng), ang(rng)));
            p = p * factor;
        }
        const auto b = fqc::coeff_bound_check(p, fqc::log_coeffs_recurrence(p, 15));
        EXPECT_TRUE(b.pass) << trial;
    }
}

TEST(CoefficientTable, ShellMaximaIndexByDegree) {
    const auto table = fqc::log_coeffs_recurrence(fqc::builtins::lasso_polynomial(), 4);
    const auto shells = table.shell_maxima();
    ASSERT_EQ(shells.size(), 4u);
    EXPECT_NEAR(shells[0], 1.0 / 3.0, 1e-15);
}

}  // namespace
