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
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "fqc/error.hpp"

namespace fqc {

using Complex = std::complex<double>;
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Multi-index k = (k_1, ..., k_n) with non-negative entries.
class ExponentVec {
public:
    ExponentVec() = default;
    explicit ExponentVec(std::size_t n) : e_(n, 0) {}
    ExponentVec(std::initializer_list<int> e) : e_(e) { validate(); }
    explicit ExponentVec(std::vector<int> e) : e_(std::move(e)) { validate(); }

    std::size_t size() const noexcept { return e_.size(); }
    int operator[](std::size_t i) const { return e_.at(i); }
    std::span<const int> entries() const noexcept { return e_; }

    int total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
    }
    bool all_positive() const {
        return !e_.empty() && std::all_of(e_.begin(), e_.end(), [](int v) { return v > 0; });
    }

    /// Componentwise k <= other.
    bool dominated_by(const ExponentVec& other) const {
        check_same_size(other);
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i]) return false;
        return true;
    }

    ExponentVec operator+(const ExponentVec& other) const {
        check_same_size(other);
        std::vector<int> r(e_);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += other.e_[i];
        return ExponentVec(std::move(r));
    }

    // Throws when a component would go negative.
    ExponentVec operator-(const ExponentVec& other) const {
        check_same_size(other);
        std::vector<int> r(e_);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= other.e_[i];
        return ExponentVec(std::move(r));
    }

    auto operator<=>(const ExponentVec&) const = default;
    bool operator==(const ExponentVec&) const = default;

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
        os << ')';
        return os.str();
    }

private:
    void validate() const {
        for (int v : e_)
            if (v < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    }
    void check_same_size(const ExponentVec& other) const {
        if (other.e_.size() != e_.size())
            throw Error(ErrorCode::WrongArity, "exponent vectors of different length");
    }

    std::vector<int> e_;
};

/// All exponent vectors in n variables with total degree exactly d,
/// in lexicographically decreasing order of the first entry.
inline std::vector<ExponentVec> exponents_of_degree(std::size_t n, int d) {
    std::vector<ExponentVec> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos + 1 == n) {
            cur[pos] = left;
            out.emplace_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (n > 0) rec(rec, 0, d);
    return out;
}

/// A coefficient in double precision, optionally backed by an exact rational.
struct Coefficient {
    Complex value;
    std::optional<Rational> exact;
};

/// Sparse polynomial in n variables with complex coefficients.
/// Zero coefficients are never stored.
class MultiPoly {
public:
    explicit MultiPoly(std::size_t n) : n_(n) {
        if (n == 0) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one variable");
    }

    static MultiPoly constant(std::size_t n, Complex c) {
        MultiPoly p(n);
        p.add(ExponentVec(n), c);
        return p;
    }
    static MultiPoly constant(std::size_t n, Rational c) {
        MultiPoly p(n);
        p.add(ExponentVec(n), c);
        return p;
    }
    static MultiPoly monomial(const ExponentVec& e, Complex c = 1.0) {
        MultiPoly p(e.size());
        p.add(e, c);
        return p;
    }

    std::size_t arity() const noexcept { return n_; }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::map<ExponentVec, Coefficient>& terms() const noexcept { return terms_; }

    void add(const ExponentVec& e, Complex c) {
        check_arity(e);
        if (c == Complex{}) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, Coefficient{c, std::nullopt});
            return;
        }
        it->second.value += c;
        it->second.exact.reset();
        if (it->second.value == Complex{}) terms_.erase(it);
    }

    void add(const ExponentVec& e, Rational r) {
        check_arity(e);
        if (r.numerator() == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, Coefficient{to_double(r), r});
            return;
        }
        if (it->second.exact) {
            Rational sum = *it->second.exact + r;
            if (sum.numerator() == 0) {
                terms_.erase(it);
                return;
            }
            it->second = Coefficient{to_double(sum), sum};
            return;
        }
        it->second.value += to_double(r);
        if (it->second.value == Complex{}) terms_.erase(it);
    }

    void add(const ExponentVec& e, const Coefficient& c) {
        if (c.exact)
            add(e, *c.exact);
        else
            add(e, c.value);
    }

    Complex coefficient(const ExponentVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Complex{} : it->second.value;
    }

    std::optional<Rational> exact_coefficient(const ExponentVec& e) const {
        auto it = terms_.find(e);
        if (it == terms_.end()) return Rational(0);
        return it->second.exact;
    }

    bool is_exact() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.second.exact.has_value(); });
    }

    Complex constant_term() const { return coefficient(ExponentVec(n_)); }
    bool is_constant() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_zero(); });
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
        return d;
    }

    /// Per-variable maximum degree.
    ExponentVec max_degrees() const {
        std::vector<int> m(n_, 0);
        for (const auto& [e, c] : terms_)
            for (std::size_t j = 0; j < n_; ++j) m[j] = std::max(m[j], e[j]);
        return ExponentVec(std::move(m));
    }

    Complex operator()(std::span<const Complex> z) const {
        if (z.size() != n_) throw Error(ErrorCode::WrongArity, "evaluation point has wrong length");
        Complex sum{};
        for (const auto& [e, c] : terms_) {
            Complex term = c.value;
            for (std::size_t j = 0; j < n_; ++j)
                if (e[j] != 0) term *= std::pow(z[j], e[j]);
            sum += term;
        }
        return sum;
    }

    /// P(e^{i theta_1}, ..., e^{i theta_n}).
    Complex on_torus(std::span<const double> theta) const {
        if (theta.size() != n_) throw Error(ErrorCode::WrongArity, "torus point has wrong length");
        Complex sum{};
        for (const auto& [e, c] : terms_) {
            double phase = 0.0;
            for (std::size_t j = 0; j < n_; ++j) phase += e[j] * theta[j];
            sum += c.value * std::polar(1.0, phase);
        }
        return sum;
    }

    /// Coefficients (constant first) of the univariate polynomial obtained by
    /// fixing every variable except `var` to the values in z.
    std::vector<Complex> univariate(std::size_t var, std::span<const Complex> z) const {
        if (var >= n_ || z.size() != n_) throw Error(ErrorCode::WrongArity, "bad univariate restriction");
        std::vector<Complex> c(static_cast<std::size_t>(max_degrees()[var]) + 1, Complex{});
        for (const auto& [e, coeff] : terms_) {
            Complex term = coeff.value;
            for (std::size_t j = 0; j < n_; ++j)
                if (j != var && e[j] != 0) term *= std::pow(z[j], e[j]);
            c[static_cast<std::size_t>(e[var])] += term;
        }
        return c;
    }

    MultiPoly operator+(const MultiPoly& other) const {
        check_same(other);
        MultiPoly r(*this);
        for (const auto& [e, c] : other.terms_) r.add(e, c);
        return r;
    }

    MultiPoly operator-(const MultiPoly& other) const { return *this + other.scaled(Rational(-1)); }

    MultiPoly operator*(const MultiPoly& other) const {
        check_same(other);
        MultiPoly r(n_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : other.terms_) {
                if (c1.exact && c2.exact)
                    r.add(e1 + e2, *c1.exact * *c2.exact);
                else
                    r.add(e1 + e2, c1.value * c2.value);
            }
        return r;
    }

    MultiPoly scaled(Complex s) const {
        MultiPoly r(n_);
        for (const auto& [e, c] : terms_) r.add(e, c.value * s);
        return r;
    }

    MultiPoly scaled(Rational s) const {
        MultiPoly r(n_);
        for (const auto& [e, c] : terms_) {
            if (c.exact)
                r.add(e, *c.exact * s);
            else
                r.add(e, c.value * to_double(s));
        }
        return r;
    }

    MultiPoly times_monomial(const ExponentVec& m) const {
        MultiPoly r(n_);
        for (const auto& [e, c] : terms_) r.add(e + m, c);
        return r;
    }

    /// Divides by the constant term so that the result satisfies P(0) = 1.
    MultiPoly normalized() const {
        auto c0 = terms_.find(ExponentVec(n_));
        if (c0 == terms_.end()) throw Error(ErrorCode::NotNormalized, "polynomial has no constant term");
        if (c0->second.exact) return scaled(Rational(1) / *c0->second.exact);
        return scaled(1.0 / c0->second.value);
    }

    /// Removes coefficients with modulus <= tol (never the constant term).
    MultiPoly pruned(double tol) const {
        MultiPoly r(n_);
        for (const auto& [e, c] : terms_)
            if (e.is_zero() || std::abs(c.value) > tol) r.add(e, c);
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (c.exact)
                os << c.exact->numerator() << (c.exact->denominator() != 1
                                                    ? "/" + std::to_string(c.exact->denominator())
                                                    : std::string());
            else
                os << c.value;
            for (std::size_t j = 0; j < n_; ++j)
                if (e[j] != 0) os << "*z" << j + 1 << (e[j] > 1 ? "^" + std::to_string(e[j]) : "");
        }
        return first ? "0" : os.str();
    }

private:
    void check_arity(const ExponentVec& e) const {
        if (e.size() != n_) throw Error(ErrorCode::WrongArity, "exponent length does not match arity");
    }
    void check_same(const MultiPoly& other) const {
        if (other.n_ != n_) throw Error(ErrorCode::WrongArity, "polynomials of different arity");
    }

    std::size_t n_;
    std::map<ExponentVec, Coefficient> terms_;
};

/// max_k |a(k) - b(k)|; exactly zero when both sides are exact and equal.
inline double max_coefficient_distance(const MultiPoly& a, const MultiPoly& b) {
    if (a.arity() != b.arity()) throw Error(ErrorCode::WrongArity, "polynomials of different arity");
    double worst = 0.0;
    auto visit = [&](const ExponentVec& e) {
        auto ea = a.exact_coefficient(e);
        auto eb = b.exact_coefficient(e);
        double d = (ea && eb) ? std::abs(to_double(*ea - *eb)) : std::abs(a.coefficient(e) - b.coefficient(e));
        worst = std::max(worst, d);
    };
    for (const auto& t : a.terms()) visit(t.first);
    for (const auto& t : b.terms()) visit(t.first);
    return worst;
}

/// P^iota in cleared form: `cleared` = z^shift * P(1/z_1, ..., 1/z_n),
/// with `shift` the per-variable maximum degree of P.
struct Involuted {
    MultiPoly cleared;
    ExponentVec shift;
};

inline Involuted involute(const MultiPoly& p) {
    if (p.size() == 0) throw Error(ErrorCode::InvalidArgument, "cannot involute the zero polynomial");
    ExponentVec shift = p.max_degrees();
    MultiPoly out(p.arity());
    for (const auto& [e, c] : p.terms()) out.add(shift - e, c);
    return {std::move(out), std::move(shift)};
}

/// Inverse of involute(): recovers P from its cleared involution.
inline MultiPoly restore(const Involuted& inv) {
    MultiPoly out(inv.cleared.arity());
    for (const auto& [e, c] : inv.cleared.terms()) out.add(inv.shift - e, c);
    return out;
}

enum class Normalization { Strict, Relaxed };

class StablePair;
StablePair make_stable_pair(const MultiPoly& p, const MultiPoly& q, Normalization norm);

/// Validated (P, Q, ell, eta) with Q = eta * z^ell * P^iota coefficient-wise.
/// Under Normalization::Relaxed the constant term of Q may differ from 1.
class StablePair {
public:
    const MultiPoly& P() const noexcept { return p_; }
    const MultiPoly& Q() const noexcept { return q_; }
    const ExponentVec& ell() const noexcept { return ell_; }
    Complex eta() const noexcept { return eta_; }
    std::optional<Rational> exact_eta() const noexcept { return exact_eta_; }
    std::size_t arity() const noexcept { return p_.arity(); }
    double residual() const noexcept { return residual_; }
    Normalization normalization() const noexcept { return norm_; }
    bool relaxed() const noexcept { return q_.constant_term() != Complex(1.0); }

    bool self_dual(double tol = 1e-12) const { return max_coefficient_distance(p_, q_) <= tol; }

private:
    friend StablePair make_stable_pair(const MultiPoly&, const MultiPoly&, Normalization);
    StablePair(MultiPoly p, MultiPoly q, ExponentVec ell, Complex eta, std::optional<Rational> exact_eta,
               Normalization norm, double residual)
        : p_(std::move(p)),
          q_(std::move(q)),
          ell_(std::move(ell)),
          eta_(eta),
          exact_eta_(exact_eta),
          norm_(norm),
          residual_(residual) {}

    MultiPoly p_;
    MultiPoly q_;
    ExponentVec ell_;
    Complex eta_;
    std::optional<Rational> exact_eta_;
    Normalization norm_;
    double residual_;
};

inline constexpr double kFunctionalEquationTol = 1e-12;

/// Solves for the unique (ell, eta) with Q = eta z^ell P^iota and validates it.
inline StablePair make_stable_pair(const MultiPoly& p, const MultiPoly& q, Normalization norm = Normalization::Strict) {
    if (p.arity() != q.arity()) throw Error(ErrorCode::WrongArity, "P and Q have different arity");
    const std::size_t n = p.arity();
    const ExponentVec zero(n);

    if (p.coefficient(zero) != Complex(1.0)) throw Error(ErrorCode::NotNormalized, "P(0) != 1");
    const Complex q0 = q.coefficient(zero);
    if (norm == Normalization::Strict && q0 != Complex(1.0)) throw Error(ErrorCode::NotNormalized, "Q(0) != 1");
    if (q0 == Complex{}) throw Error(ErrorCode::NotNormalized, "Q(0) = 0");

    // Q(0) = eta * a_P(ell) forces ell to be the top exponent of P.
    const ExponentVec ell = p.max_degrees();
    if (!ell.all_positive())
        throw Error(ErrorCode::NoFunctionalEquation, "P does not depend on every variable");
    if (q.max_degrees() != ell)
        throw Error(ErrorCode::NoFunctionalEquation, "degree vectors of P and Q differ");
    const Complex top = p.coefficient(ell);
    if (top == Complex{})
        throw Error(ErrorCode::NoFunctionalEquation, "P has no term at its top exponent " + ell.str());

    const Complex eta = q0 / top;
    std::optional<Rational> exact_eta;
    auto eq0 = q.exact_coefficient(zero);
    auto etop = p.exact_coefficient(ell);
    if (eq0 && etop) exact_eta = *eq0 / *etop;

    const MultiPoly reflected = involute(p).cleared;
    const MultiPoly rhs = exact_eta ? reflected.scaled(*exact_eta) : reflected.scaled(eta);
    const double residual = max_coefficient_distance(q, rhs);
    if (residual > kFunctionalEquationTol)
        throw Error(ErrorCode::NoFunctionalEquation,
                    "functional equation residual " + std::to_string(residual) + " exceeds tolerance");
    return StablePair(p, q, ell, eta, exact_eta, norm, residual);
}

/// Builds Q := eta z^ell P^iota with ell the per-variable maximum degree and eta
/// chosen so that Q(0) = 1.
inline StablePair derive_dual(const MultiPoly& p) {
    const ExponentVec zero(p.arity());
    if (p.coefficient(zero) != Complex(1.0)) throw Error(ErrorCode::NotNormalized, "P(0) != 1");
    const ExponentVec ell = p.max_degrees();
    if (!ell.all_positive()) throw Error(ErrorCode::ZeroTopCoefficient, "degree vector " + ell.str() + " is not positive");
    const Complex top = p.coefficient(ell);
    if (top == Complex{}) throw Error(ErrorCode::ZeroTopCoefficient, "coefficient at " + ell.str() + " vanishes");

    const MultiPoly reflected = involute(p).cleared;
    auto exact_top = p.exact_coefficient(ell);
    MultiPoly q = exact_top ? reflected.scaled(Rational(1) / *exact_top) : reflected.scaled(1.0 / top);
    if (!exact_top) {
        // 1/top * top may round; pin the constant term so the pair is normalized.
        MultiPoly pinned(p.arity());
        for (const auto& [e, c] : q.terms()) pinned.add(e, e.is_zero() ? Complex(1.0) : c.value);
        q = std::move(pinned);
    }
    return make_stable_pair(p, q, Normalization::Strict);
}

/// k x k matrix with ||S S^* - I||_max < 1e-10.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() == 0)
            throw Error(ErrorCode::NotUnitary, "matrix must be square and non-empty");
        const Eigen::MatrixXcd d = m_ * m_.adjoint() - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
        const double err = d.cwiseAbs().maxCoeff();
        if (!(err < 1e-10)) throw Error(ErrorCode::NotUnitary, "||S S* - I||_max = " + std::to_string(err));
    }

    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
    UnitaryMatrix inverse() const { return UnitaryMatrix(m_.adjoint()); }

private:
    Eigen::MatrixXcd m_;
};

namespace detail {

// det(I - diag(z^{a_1}, ..., z^{a_k}) S) expanded over all permutations.
inline MultiPoly secular_determinant(const std::vector<ExponentVec>& monomials, const Eigen::MatrixXcd& s) {
    const std::size_t k = monomials.size();
    const std::size_t n = monomials.front().size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly det(n);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inversions;
        MultiPoly prod = MultiPoly::constant(n, Complex(inversions % 2 ? -1.0 : 1.0));
        bool vanishes = false;
        for (std::size_t i = 0; i < k && !vanishes; ++i) {
            const auto col = static_cast<Eigen::Index>(perm[i]);
            const Complex sij = s(static_cast<Eigen::Index>(i), col);
            MultiPoly entry(n);
            if (perm[i] == i) entry.add(ExponentVec(n), Complex(1.0));
            entry.add(monomials[i], -sij);
            if (entry.size() == 0) {
                vanishes = true;
                break;
            }
            prod = prod * entry;
        }
        if (!vanishes) det = det + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det.pruned(1e-14);
}

}  // namespace detail

inline constexpr std::size_t kMaxSpectralSize = 8;

/// P = det(I - D(z) S), Q = det(I - D(z) S^{-1}) with D = diag of the given monomials.
inline StablePair spectral_pair(const std::vector<ExponentVec>& monomials, const UnitaryMatrix& s) {
    const std::size_t k = s.size();
    if (monomials.size() != k)
        throw Error(ErrorCode::InvalidArgument, "need one monomial per row of S");
    if (k > kMaxSpectralSize)
        throw Error(ErrorCode::Unsupported, "permutation expansion limited to k <= 8");
    const std::size_t n = monomials.front().size();
    std::vector<int> ell(n, 0);
    for (const auto& m : monomials) {
        if (m.size() != n) throw Error(ErrorCode::WrongArity, "monomials of different arity");
        for (std::size_t j = 0; j < n; ++j) ell[j] += m[j];
    }
    for (std::size_t j = 0; j < n; ++j)
        if (ell[j] == 0) throw Error(ErrorCode::ZeroColumnSum, "variable z" + std::to_string(j + 1) + " never appears");

    MultiPoly p = detail::secular_determinant(monomials, s.matrix());
    MultiPoly q = detail::secular_determinant(monomials, s.inverse().matrix());
    StablePair pair = make_stable_pair(p, q, Normalization::Strict);

    const Complex expected_eta = 1.0 / (-s.matrix()).determinant();
    if (std::abs(pair.eta() - expected_eta) > 1e-10 || pair.ell() != ExponentVec(ell))
        throw Error(ErrorCode::NoFunctionalEquation, "spectral pair does not match (ell, eta) of det(-S)");
    return pair;
}

inline constexpr std::size_t kMaxLeeYangSize = 20;

/// P(z) = sum over subsets S of prod_{i in S, j not in S} A_ij z^S.
inline StablePair lee_yang(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw Error(ErrorCode::InvalidArgument, "A must be square");
    const auto n = static_cast<std::size_t>(a.rows());
    if (n > kMaxLeeYangSize) throw Error(ErrorCode::Unsupported, "subset enumeration limited to n <= 20");
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (!(a(i, j) >= -1.0 && a(i, j) <= 1.0))
                throw Error(ErrorCode::EntryOutOfRange, "entries must lie in [-1, 1]");
            if (a(i, j) != a(j, i)) throw Error(ErrorCode::NotSymmetric, "A must be symmetric");
        }

    MultiPoly p(n);
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        double coeff = 1.0;
        for (std::size_t i = 0; i < n && coeff != 0.0; ++i) {
            if (!(mask & (1u << i))) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!(mask & (1u << j))) coeff *= a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        if (coeff == 0.0) continue;
        std::vector<int> e(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = (mask >> i) & 1u;
        p.add(ExponentVec(std::move(e)), Complex(coeff));
    }
    return make_stable_pair(p, p, Normalization::Strict);
}

}  // namespace fqc
