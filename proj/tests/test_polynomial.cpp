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

#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fqc/builtins.hpp"
#include "fqc/polynomial.hpp"

namespace {

using fqc::Complex;
using fqc::ErrorCode;
using fqc::ExponentVec;
using fqc::MultiPoly;
using fqc::Rational;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const fqc::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

MultiPoly random_poly(std::mt19937_64& rng, std::size_t n, int max_deg, int terms) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::normal_distribution<double> coef(0.0, 1.0);
    MultiPoly p(n);
    p.add(ExponentVec(n), Complex(1.0));
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(n);
        for (auto& x : e) x = deg(rng);
        if (ExponentVec(e).is_zero()) continue;
        p.add(ExponentVec(e), Complex(coef(rng), coef(rng)));
    }
    return p;
}

TEST(ExponentVec, RejectsNegativeEntries) {
    EXPECT_EQ(code_of([] { ExponentVec({1, -1}); }), ErrorCode::InvalidArgument);
}

TEST(ExponentVec, DegreeAndOrder) {
    const ExponentVec a{1, 2}, b{2, 2};
    EXPECT_EQ(a.total_degree(), 3);
    EXPECT_TRUE(a.dominated_by(b));
    EXPECT_FALSE(b.dominated_by(a));
    EXPECT_EQ(b - a, (ExponentVec{1, 0}));
    EXPECT_EQ(code_of([&] { (void)(a - b); }), ErrorCode::InvalidArgument);
}

TEST(ExponentVec, ShellCountsMatchStarsAndBars) {
    // C(d + n - 1, n - 1) exponents of total degree d.
    EXPECT_EQ(fqc::exponents_of_degree(2, 5).size(), 6u);
    EXPECT_EQ(fqc::exponents_of_degree(3, 4).size(), 15u);
    EXPECT_EQ(fqc::exponents_of_degree(1, 0).size(), 1u);
}

TEST(MultiPoly, ExactArithmeticCancels) {
    MultiPoly p(1);
    p.add({1}, Rational(1, 3));
    p.add({1}, Rational(-1, 3));
    EXPECT_EQ(p.size(), 0u);
}

TEST(MultiPoly, ProductEvaluatesAsProduct) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_poly(rng, 2, 3, 4), q = random_poly(rng, 2, 2, 3);
        const std::vector<Complex> z{{u(rng), u(rng)}, {u(rng), u(rng)}};
        EXPECT_NEAR(std::abs((p * q)(z) - p(z) * q(z)), 0.0, 1e-12 * (1.0 + std::abs(p(z) * q(z))));
    }
}

TEST(MultiPoly, MaxDegreesArePerVariable) {
    const auto p = fqc::builtins::lasso_polynomial();
    EXPECT_EQ(p.max_degrees(), (ExponentVec{1, 2}));
    EXPECT_EQ(p.total_degree(), 3);
}

TEST(Involution, RoundTripsOnRandomPolynomials) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_poly(rng, 3, 3, 5);
        EXPECT_EQ(fqc::max_coefficient_distance(fqc::restore(fqc::involute(p)), p), 0.0);
    }
}

TEST(Involution, MatchesEvaluationOnTorus) {
    // z^ell P(1/z) at z = e^{i theta} equals e^{i ell.theta} P(e^{-i theta}).
    const auto p = fqc::builtins::lasso_polynomial();
    const auto inv = fqc::involute(p);
    const double th[2] = {0.3, 1.7}, neg[2] = {-0.3, -1.7};
    const Complex lhs = inv.cleared.on_torus(th);
    const Complex rhs = std::polar(1.0, 1 * 0.3 + 2 * 1.7) * p.on_torus(neg);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-14);
}

TEST(StablePair, PoissonDerivesSelfDualPair) {
    const auto pair = fqc::builtins::poisson();
    EXPECT_TRUE(pair.self_dual());
    EXPECT_EQ(pair.eta(), Complex(-1.0));
    ASSERT_TRUE(pair.exact_eta());
    EXPECT_EQ(*pair.exact_eta(), Rational(-1));
}

TEST(StablePair, LassoIsSelfDual) {
    const auto pair = fqc::builtins::lasso();
    EXPECT_TRUE(pair.self_dual());
    EXPECT_EQ(pair.ell(), (ExponentVec{1, 2}));
    EXPECT_EQ(pair.eta(), Complex(-1.0));
    EXPECT_EQ(pair.residual(), 0.0);
}

TEST(StablePair, RelaxedPoissonKeepsPaperDual) {
    const auto pair = fqc::builtins::poisson_relaxed();
    EXPECT_TRUE(pair.relaxed());
    EXPECT_EQ(pair.eta(), Complex(1.0));
    EXPECT_EQ(pair.Q().constant_term(), Complex(-1.0));
}

TEST(StablePair, StrictModeRejectsNonUnitConstant) {
    MultiPoly p(1), q(1);
    p.add({0}, Rational(1));
    p.add({1}, Rational(-1));
    q.add({0}, Rational(-1));
    q.add({1}, Rational(1));
    EXPECT_EQ(code_of([&] { fqc::make_stable_pair(p, q); }), ErrorCode::NotNormalized);
}

TEST(StablePair, RejectsWrongDual) {
    const auto p = fqc::builtins::lasso_polynomial();
    MultiPoly q = p;
    q.add({1, 0}, Rational(1, 100));
    EXPECT_EQ(code_of([&] { fqc::make_stable_pair(p, q); }), ErrorCode::NoFunctionalEquation);
}

TEST(StablePair, DeriveDualSatisfiesFunctionalEquationForRandomInput) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly p = random_poly(rng, 2, 2, 3);
        p.add({2, 2}, Complex(0.5, 0.25));
        const auto pair = fqc::derive_dual(p);
        EXPECT_LE(pair.residual(), 1e-12);
        EXPECT_EQ(pair.Q().constant_term(), Complex(1.0));
    }
}

TEST(StablePair, DeriveDualNeedsPositiveDegreeVector) {
    MultiPoly p(2);
    p.add({0, 0}, Rational(1));
    p.add({1, 0}, Rational(-1, 2));
    EXPECT_EQ(code_of([&] { fqc::derive_dual(p); }), ErrorCode::ZeroTopCoefficient);
}

TEST(StablePair, DeriveDualNeedsUnitConstant) {
    MultiPoly p(1);
    p.add({0}, Rational(2));
    p.add({1}, Rational(-1));
    EXPECT_EQ(code_of([&] { fqc::derive_dual(p); }), ErrorCode::NotNormalized);
}

TEST(SpectralPair, NeumannVertexHasEtaOneOverDetMinusS) {
    const auto pair = fqc::builtins::spectral();
    const Complex det = (-fqc::builtins::neumann_vertex3().matrix()).determinant();
    EXPECT_NEAR(std::abs(pair.eta() - 1.0 / det), 0.0, 1e-12);
    EXPECT_EQ(pair.ell(), (ExponentVec{1, 2}));
    EXPECT_NEAR(std::abs(pair.P().constant_term() - 1.0), 0.0, 1e-14);
}

TEST(SpectralPair, RejectsNonUnitaryAndUnusedVariables) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(2, 2) * 1.5;
    EXPECT_EQ(code_of([&] { fqc::UnitaryMatrix{s}; }), ErrorCode::NotUnitary);
    const fqc::UnitaryMatrix id(Eigen::MatrixXcd::Identity(2, 2));
    EXPECT_EQ(code_of([&] { fqc::spectral_pair({ExponentVec{1, 0}, ExponentVec{1, 0}}, id); }), ErrorCode::ZeroColumnSum);
}

TEST(LeeYang, TwoByTwoMatchesClosedForm) {
    // n = 2: P = 1 + a12 z1 + a12 z2 + z1 z2.
    Eigen::MatrixXd a(2, 2);
    a << 1.0, 0.4, 0.4, 1.0;
    const auto pair = fqc::lee_yang(a);
    EXPECT_NEAR(pair.P().coefficient({1, 0}).real(), 0.4, 1e-15);
    EXPECT_NEAR(pair.P().coefficient({0, 1}).real(), 0.4, 1e-15);
    EXPECT_EQ(pair.P().coefficient({1, 1}), Complex(1.0));
    EXPECT_TRUE(pair.self_dual());
}

TEST(LeeYang, ValidatesMatrix) {
    Eigen::MatrixXd a(2, 2);
    a << 1.0, 0.4, 0.3, 1.0;
    EXPECT_EQ(code_of([&] { fqc::lee_yang(a); }), ErrorCode::NotSymmetric);
    a << 1.0, 1.5, 1.5, 1.0;
    EXPECT_EQ(code_of([&] { fqc::lee_yang(a); }), ErrorCode::EntryOutOfRange);
}

TEST(Builtins, UnknownNameIsConfigError) {
    EXPECT_EQ(code_of([] { fqc::builtins::by_name("nope"); }), ErrorCode::ConfigInvalid);
    for (const auto& n : fqc::builtins::names()) EXPECT_NO_THROW(fqc::builtins::by_name(n));
}

TEST(Builtins, DefaultFrequenciesAreDistinctSquareRoots) {
    const auto xi = fqc::builtins::default_xi(6);
    ASSERT_EQ(xi.size(), 6u);
    EXPECT_EQ(xi[0], 1.0);
    EXPECT_DOUBLE_EQ(xi[5], std::sqrt(11.0));
}

}  // namespace
