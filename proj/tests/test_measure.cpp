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
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "fqc/builtins.hpp"
#include "fqc/measure.hpp"

namespace {

using fqc::Complex;
using fqc::ErrorCode;
using fqc::FrequencyVec;
using fqc::TestFunction;

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const fqc::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

// Quadrature oracle for hat h(gamma) = int h(t) cos(gamma t) dt (h real, even).
double hat_by_quadrature(const TestFunction& h, double gamma, double support) {
    auto f = [&](double t) { return 2.0 * h.h(t) * std::cos(gamma * t); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, support, 15, 1e-13);
}

const FrequencyVec& lasso_xi() {
    static const FrequencyVec xi({1.0, std::numbers::sqrt2});
    return xi;
}

TEST(TestFunctions, GaussianTransformMatchesQuadrature) {
    for (double sigma : {0.5, 1.0, 2.0}) {
        const auto h = TestFunction::gaussian(sigma);
        for (double g : {0.0, 0.7, 2.3, 5.0})
            EXPECT_NEAR(h.hat(g), hat_by_quadrature(h, g, 40.0 * sigma), 1e-10) << sigma << " " << g;
    }
}

TEST(TestFunctions, CosineWindowTransformMatchesQuadrature) {
    for (double w : {1.0, 3.0}) {
        const auto h = TestFunction::cosine_window(w);
        EXPECT_NEAR(h.hat(0.0), w, 1e-14);
        for (double g : {0.4, kPi / w, 2.0, 9.5, 40.0})
            EXPECT_NEAR(h.hat(g), hat_by_quadrature(h, g, w), 1e-10) << w << " " << g;
    }
}

TEST(TestFunctions, TailBoundsDominateTheTransform) {
    for (const auto& h : {TestFunction::gaussian(1.0), TestFunction::cosine_window(2.0)}) {
        for (double a : {0.0, 1.0, 3.0, 10.0}) {
            double sum = 0.0;
            for (int j = 0; j < 4000; ++j) {
                double m = 0.0;
                for (int s = 0; s <= 20; ++s) m = std::max(m, std::abs(h.hat(a + j + s / 20.0)));
                sum += m;
            }
            EXPECT_LE(sum, h.hat_tail(a) * (1.0 + 1e-9)) << h.describe() << " a=" << a;
        }
    }
}

TEST(TestFunctions, RejectNonPositiveParameters) {
    EXPECT_THROW(TestFunction::gaussian(0.0), fqc::Error);
    EXPECT_THROW(TestFunction::cosine_window(-1.0), fqc::Error);
}

TEST(Summation, PoissonReproducesClassicalFormula) {
    const auto pair = fqc::builtins::poisson();
    const FrequencyVec xi({1.0});
    const auto rep = fqc::verify_summation(pair, xi, TestFunction::gaussian(1.0), 300.0, 20);
    EXPECT_LT(rep.residual, 1e-10);
    // Both sides equal sum_n exp(-n^2 / 2).
    double theta = 0.0;
    for (int n = -40; n <= 40; ++n) theta += std::exp(-0.5 * n * n);
    EXPECT_NEAR(rep.lhs.real(), theta, 1e-12);
    EXPECT_NEAR(rep.rhs.real(), theta, 1e-12);
    EXPECT_FALSE(rep.relaxed_normalization);
}

TEST(Summation, RelaxedPoissonIsFlaggedAndStillHolds) {
    const auto rep = fqc::verify_summation(fqc::builtins::poisson_relaxed(), FrequencyVec({1.0}),
                                           TestFunction::gaussian(1.0), 300.0, 20);
    EXPECT_TRUE(rep.relaxed_normalization);
    EXPECT_LT(rep.residual, 1e-10);
}

TEST(Summation, LassoWithinCertifiedTail) {
    const auto rep = fqc::verify_summation(fqc::builtins::lasso(), lasso_xi(), TestFunction::gaussian(1.0), 100.0, 30);
    EXPECT_LT(rep.tail_estimate, 1e-6);
    EXPECT_LE(rep.residual, rep.tail_estimate + 1e-8);
}

TEST(Summation, CompactTestFunctionNeedsNoCoefficientTail) {
    // Support [-w, w] with w <= D min xi: no coefficient beyond degree D contributes.
    const auto rep = fqc::verify_summation(fqc::builtins::lasso(), lasso_xi(), TestFunction::cosine_window(6.0), 2000.0, 12);
    EXPECT_EQ(rep.coeff_tail, 0.0);
    EXPECT_LE(rep.residual, rep.tail_estimate + 1e-8);
}

TEST(Summation, SpectralAndLeeYangPairs) {
    const auto spectral = fqc::verify_summation(fqc::builtins::spectral(), FrequencyVec({1.0, std::numbers::sqrt2}),
                                                TestFunction::gaussian(1.0), 80.0, 30);
    EXPECT_LE(spectral.residual, spectral.tail_estimate + 1e-8);
    const auto ly = fqc::verify_summation(fqc::builtins::lee_yang3(), FrequencyVec(fqc::builtins::default_xi(3)),
                                          TestFunction::gaussian(1.0), 80.0, 30);
    EXPECT_LE(ly.residual, ly.tail_estimate + 1e-8);
}

TEST(Summation, SymmetricFormAgreesOnSelfDualPairs) {
    for (const char* name : {"poisson", "lasso", "lee-yang"}) {
        const auto pair = fqc::builtins::by_name(name);
        const FrequencyVec xi(fqc::builtins::default_xi(pair.arity()));
        const auto h = TestFunction::gaussian(0.8);
        const auto a = fqc::verify_summation(pair, xi, h, 60.0, 30);
        const auto b = fqc::verify_summation_symmetric(pair, xi, h, 60.0, 30);
        EXPECT_EQ(a.lhs, b.lhs) << name;
        EXPECT_NEAR(std::abs(a.rhs - b.rhs), 0.0, 1e-13) << name;
    }
}

TEST(Summation, SymmetricFormNeedsSelfDualPair) {
    EXPECT_EQ(code_of([] {
                  fqc::verify_summation_symmetric(fqc::builtins::unstable(), FrequencyVec({1.0}),
                                                  TestFunction::gaussian(1.0), 50.0, 20);
              }),
              ErrorCode::NotSelfDual);
}

TEST(Summation, SmallWindowRaisesTailTooLarge) {
    EXPECT_EQ(code_of([] {
                  fqc::verify_summation(fqc::builtins::poisson(), FrequencyVec({1.0}), TestFunction::gaussian(1.0), 2.0, 2);
              }),
              ErrorCode::TailTooLarge);
}

TEST(Spectrum, PoissonAtomsAreUnitMassesAtIntegers) {
    // mu-hat = sum_k delta_k for P = 1 - z with xi = 1.
    const auto spec = fqc::build_spectrum(fqc::builtins::poisson(), FrequencyVec({1.0}), 10.0);
    ASSERT_EQ(spec.atoms.size(), 21u);
    for (std::size_t j = 0; j < spec.atoms.size(); ++j) {
        EXPECT_NEAR(spec.atoms[j].position, static_cast<double>(j) - 10.0, 1e-15);
        EXPECT_NEAR(std::abs(spec.atoms[j].weight - 1.0), 0.0, 1e-14);
    }
}

TEST(Spectrum, RationalFrequenciesMergeWithProvenance) {
    const auto spec = fqc::build_spectrum(fqc::builtins::lasso(), FrequencyVec({1.0, 0.5}), 6.0);
    bool merged = false;
    for (const auto& a : spec.atoms) {
        if (a.provenance.size() > 1) merged = true;
        for (std::size_t j = 1; j < spec.atoms.size(); ++j) EXPECT_GT(spec.atoms[j].position, spec.atoms[j - 1].position);
    }
    EXPECT_TRUE(merged);
    // Position 1 collects k = (1, 0) and (0, 2) from P.
    for (const auto& a : spec.atoms)
        if (std::abs(a.position - 1.0) < 1e-12) {
            EXPECT_EQ(a.provenance.size(), 2u);
            EXPECT_NEAR(std::abs(a.weight - Complex(0.0)), 0.0, 1e-15);  // -1 * (-1/3 + 1/3)
        }
}

TEST(Spectrum, EmptyDegreeRangeKeepsOnlyOrigin) {
    const auto spec = fqc::build_spectrum(fqc::builtins::poisson(), FrequencyVec({1.0}), 0.0);
    ASSERT_EQ(spec.atoms.size(), 1u);
    EXPECT_EQ(spec.atoms[0].weight, Complex(1.0));
}

TEST(Spectrum, GrowthSlopes) {
    const std::vector<double> a{10.0, 20.0, 40.0, 80.0};
    const auto lasso = fqc::spectrum_growth(fqc::build_spectrum(fqc::builtins::lasso(), lasso_xi(), 80.0), a);
    EXPECT_LE(lasso.slope, 3.0);
    const auto poisson = fqc::spectrum_growth(fqc::build_spectrum(fqc::builtins::poisson(), FrequencyVec({1.0}), 80.0), a);
    EXPECT_NEAR(poisson.slope, 1.0, 0.1);
    EXPECT_EQ(code_of([&] {
                  fqc::spectrum_growth(fqc::build_spectrum(fqc::builtins::poisson(), FrequencyVec({1.0}), 30.0), a);
              }),
              ErrorCode::WindowExceeded);
}

TEST(Measure, PoissonTranslationProfile) {
    const auto mu = fqc::build_measure(fqc::builtins::poisson(), FrequencyVec({1.0}), 40.0);
    const std::vector<double> xs{0.0, 1.5, 2.0 * kPi, 3.0 * kPi};
    const auto prof = fqc::translation_bound_profile(mu, xs);
    EXPECT_EQ(prof, (std::vector<double>{1.0, 0.0, 1.0, 0.0}));
    const std::vector<double> outside{39.5};
    EXPECT_EQ(code_of([&] { fqc::translation_bound_profile(mu, outside); }), ErrorCode::WindowExceeded);
}

TEST(Measure, LassoProfileBoundedByDensity) {
    const auto mu = fqc::build_measure(fqc::builtins::lasso(), lasso_xi(), 100.0);
    std::vector<double> xs;
    for (double x = -98.0; x <= 98.0; x += 0.37) xs.push_back(x);
    const double density = std::ceil((1.0 + 2.0 * std::numbers::sqrt2) / kPi) + 1.0;
    for (double v : fqc::translation_bound_profile(mu, xs)) EXPECT_LE(v, 2.0 * density);
    for (int m : mu.weights()) EXPECT_EQ(m, 1);
}

TEST(Measure, EmptyMeasureProfileIsZero) {
    fqc::CrystallineMeasure mu;
    mu.atoms.lo = -5.0;
    mu.atoms.hi = 5.0;
    const std::vector<double> xs{0.0, 2.0};
    EXPECT_EQ(fqc::translation_bound_profile(mu, xs), (std::vector<double>{0.0, 0.0}));
}

}  // namespace
