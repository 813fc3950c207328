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
#include <string>
#include <string_view>
#include <vector>

#include "fqc/polynomial.hpp"

// Named pairs used by the CLI, the acceptance suite and the tests.
namespace fqc::builtins {

/// 1 - z1, paired with itself (ell = 1, eta = -1).
inline StablePair poisson() {
    MultiPoly p(1);
    p.add({0}, Rational(1));
    p.add({1}, Rational(-1));
    return derive_dual(p);
}

/// 1 - z1 paired with z1 - 1 (ell = 1, eta = 1); Q(0) = -1, so only valid
/// under relaxed normalization.
inline StablePair poisson_relaxed() {
    MultiPoly p(1);
    p.add({0}, Rational(1));
    p.add({1}, Rational(-1));
    MultiPoly q(1);
    q.add({0}, Rational(-1));
    q.add({1}, Rational(1));
    return make_stable_pair(p, q, Normalization::Relaxed);
}

/// 1 - z1/3 + z2^2/3 - z1 z2^2: the non-linear part of the lasso graph spectrum.
inline MultiPoly lasso_polynomial() {
    MultiPoly p(2);
    p.add({0, 0}, Rational(1));
    p.add({1, 0}, Rational(-1, 3));
    p.add({0, 2}, Rational(1, 3));
    p.add({1, 2}, Rational(-1));
    return p;
}

inline StablePair lasso() { return derive_dual(lasso_polynomial()); }

inline Eigen::MatrixXd lee_yang_matrix() {
    Eigen::MatrixXd a(3, 3);
    a << 1.0, 0.5, -0.3,
         0.5, 1.0, 0.7,
        -0.3, 0.7, 1.0;
    return a;
}

inline StablePair lee_yang3() { return lee_yang(lee_yang_matrix()); }

/// Scattering matrix of a degree-three vertex with Neumann conditions.
inline UnitaryMatrix neumann_vertex3() {
    Eigen::MatrixXcd s(3, 3);
    s << -1.0, 2.0, 2.0,
          2.0, -1.0, 2.0,
          2.0, 2.0, -1.0;
    return UnitaryMatrix(s / 3.0);
}

/// Monomials z1, z2, z2 (one loop of length xi_1, two bonds of length xi_2).
inline StablePair spectral() {
    return spectral_pair({ExponentVec{1, 0}, ExponentVec{0, 1}, ExponentVec{0, 1}}, neumann_vertex3());
}

/// 1 - 2 z1: a root inside the unit disk.
inline MultiPoly unstable_polynomial() {
    MultiPoly p(1);
    p.add({0}, Rational(1));
    p.add({1}, Rational(-2));
    return p;
}

inline StablePair unstable() { return derive_dual(unstable_polynomial()); }

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> all{"poisson", "poisson-relaxed", "lasso", "lee-yang", "spectral", "unstable"};
    return all;
}

inline StablePair by_name(std::string_view name) {
    if (name == "poisson") return poisson();
    if (name == "poisson-relaxed") return poisson_relaxed();
    if (name == "lasso") return lasso();
    if (name == "lee-yang") return lee_yang3();
    if (name == "spectral") return spectral();
    if (name == "unstable") return unstable();
    throw Error(ErrorCode::ConfigInvalid, "unknown builtin '" + std::string(name) + "'");
}

/// Frequencies used when none are given: 1 followed by square roots of the primes.
inline std::vector<double> default_xi(std::size_t n) {
    std::vector<double> xi{1.0};
    for (int c = 2; xi.size() < n; ++c) {
        bool prime = true;
        for (int d = 2; d * d <= c && prime; ++d) prime = c % d != 0;
        if (prime) xi.push_back(std::sqrt(static_cast<double>(c)));
    }
    xi.resize(n);
    return xi;
}

}  // namespace fqc::builtins
