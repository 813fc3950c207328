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
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqc/dirichlet.hpp"
#include "fqc/error.hpp"
#include "fqc/measure.hpp"

namespace fqc {

struct GapStats {
    double min_gap = 0.0;
    double max_gap = 0.0;
    std::size_t count = 0;
    double lo = 0.0;
    double hi = 0.0;
};

inline GapStats gap_stats(const CrystallineMeasure& mu) {
    if (mu.size() < 2) throw Error(ErrorCode::TooFewAtoms, "gap statistics need at least two atoms");
    GapStats g{std::numeric_limits<double>::infinity(), 0.0, mu.size(), mu.lo(), mu.hi()};
    const auto x = mu.positions();
    for (std::size_t j = 1; j < x.size(); ++j) {
        const double d = x[j] - x[j - 1];
        g.min_gap = std::min(g.min_gap, d);
        g.max_gap = std::max(g.max_gap, d);
    }
    return g;
}

/// True iff min_gap >= r and every closed interval of length R inside the window holds an atom.
inline bool delone_check(const CrystallineMeasure& mu, double r, double big_r) {
    if (!(big_r > 0.0) || r < 0.0) throw Error(ErrorCode::InvalidArgument, "need r >= 0 and R > 0");
    if (mu.hi() - mu.lo() < 10.0 * big_r)
        throw Error(ErrorCode::InvalidArgument, "window must be at least 10 R long");
    const GapStats g = gap_stats(mu);
    if (g.min_gap < r) return false;
    const auto x = mu.positions();
    if (x.front() - mu.lo() > big_r || mu.hi() - x.back() > big_r) return false;
    return g.max_gap <= big_r;
}

struct ProgressionHits {
    std::size_t count = 0;
    std::vector<double> hits;
    bool truncated = false;
};

inline constexpr double kProgressionTol = 1e-8;

/// Atoms within 1e-8 of {a + n d : n in Z}, stopping after count_limit hits.
inline ProgressionHits progression_intersection(const CrystallineMeasure& mu, double a, double d,
                                                std::size_t count_limit = std::numeric_limits<std::size_t>::max()) {
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "progression step must be positive");
    ProgressionHits out;
    for (double x : mu.positions()) {
        const double n = std::round((x - a) / d);
        if (std::abs(x - (a + n * d)) <= kProgressionTol) {
            if (out.count == count_limit) {
                out.truncated = true;
                break;
            }
            ++out.count;
            out.hits.push_back(x);
        }
    }
    return out;
}

struct ProgressionGrowth {
    std::vector<double> windows;
    std::vector<std::size_t> counts;

    bool density_non_increasing() const {
        for (std::size_t j = 1; j < counts.size(); ++j)
            if (static_cast<double>(counts[j]) / windows[j] > static_cast<double>(counts[j - 1]) / windows[j - 1] + 1e-12)
                return false;
        return true;
    }
};

/// Hit counts of one progression against the measure over growing symmetric windows.
inline ProgressionGrowth progression_growth(const CrystallineMeasure& mu, double a, double d,
                                            std::span<const double> windows) {
    ProgressionGrowth g;
    for (double w : windows) {
        if (-w < mu.lo() - 1e-12 || w > mu.hi() + 1e-12) throw Error(ErrorCode::WindowExceeded, "window exceeds measure");
        CrystallineMeasure sub;
        sub.atoms.lo = -w;
        sub.atoms.hi = w;
        for (std::size_t j = 0; j < mu.size(); ++j) {
            if (std::abs(mu.atoms.gammas[j]) > w) continue;
            sub.atoms.gammas.push_back(mu.atoms.gammas[j]);
            sub.atoms.multiplicities.push_back(mu.atoms.multiplicities[j]);
            sub.atoms.residuals.push_back(mu.atoms.residuals[j]);
        }
        g.windows.push_back(w);
        g.counts.push_back(progression_intersection(sub, a, d).count);
    }
    return g;
}

/// The smallest T > 0 with xi.m in (2 pi / T) Z for all m, when the frequencies
/// are commensurate with denominators at most max_den.
inline std::optional<double> commensurate_period(const FrequencyVec& freq, long long max_den = 1000) {
    const auto xi = freq.values();
    std::vector<long long> num(xi.size()), den(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) {
        const double r = xi[j] / xi[0];
        bool found = false;
        for (long long q = 1; q <= max_den && !found; ++q) {
            const double p = std::round(r * static_cast<double>(q));
            if (p >= 1.0 && std::abs(r * static_cast<double>(q) - p) <= 1e-12 * static_cast<double>(q) * std::max(1.0, r)) {
                num[j] = static_cast<long long>(p);
                den[j] = q;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    long long l = 1;
    for (long long q : den) l = std::lcm(l, q);
    long long g = 0;
    for (std::size_t j = 0; j < xi.size(); ++j) g = std::gcd(g, num[j] * (l / den[j]));
    const double unit = xi[0] * static_cast<double>(g) / static_cast<double>(l);
    return 2.0 * std::numbers::pi / unit;
}

struct Progression {
    double offset = 0.0;  // in [0, period)
    double step = 0.0;
    std::size_t count = 0;
};

struct ProgressionDecomposition {
    double period = 0.0;
    std::vector<Progression> progressions;
    std::vector<double> residual_atoms;
};

/// Splits the atoms into residue classes mod period. A class that fills every
/// slot a + n T in the window is a full progression; anything else is residual.
inline ProgressionDecomposition decompose_progressions(const CrystallineMeasure& mu, double period) {
    if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "period must be positive");
    ProgressionDecomposition out;
    out.period = period;

    struct Member {
        double residue;
        double x;
    };
    std::vector<Member> members;
    for (double x : mu.positions()) {
        double r = std::fmod(x, period);
        if (r < 0) r += period;
        if (r > period - kProgressionTol) r -= period;
        members.push_back({r, x});
    }
    std::sort(members.begin(), members.end(), [](const Member& a, const Member& b) { return a.residue < b.residue; });

    std::size_t begin = 0;
    while (begin < members.size()) {
        std::size_t end = begin + 1;
        while (end < members.size() && members[end].residue - members[end - 1].residue <= kProgressionTol) ++end;
        const double a = members[begin].residue;
        const double n_lo = std::ceil((mu.lo() - a - kProgressionTol) / period);
        const double n_hi = std::floor((mu.hi() - a + kProgressionTol) / period);
        const auto expected = static_cast<std::size_t>(std::max(0.0, n_hi - n_lo + 1.0));
        if (end - begin == expected && expected >= 2) {
            out.progressions.push_back({a < 0 ? a + period : a, period, expected});
        } else {
            for (std::size_t j = begin; j < end; ++j) out.residual_atoms.push_back(members[j].x);
        }
        begin = end;
    }
    std::sort(out.residual_atoms.begin(), out.residual_atoms.end());
    return out;
}

/// Result of an integer-relation search. Empirical: an empty result at a given
/// precision and coefficient bound says nothing about rational independence.
struct RelationProbe {
    std::vector<double> values;
    int precision = 0;
    long long max_coeff = 0;
    std::optional<std::vector<long long>> found;
    double dot = 0.0;  // |q . values| when found
};

inline constexpr int kMaxRelationPrecision = 14;
inline constexpr double kRelationZeroResidual = 1e-12;

namespace detail {

using Basis = std::vector<std::vector<std::int64_t>>;

inline long double dot_ld(const std::vector<std::int64_t>& a, const std::vector<long double>& b) {
    long double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += static_cast<long double>(a[j]) * b[j];
    return s;
}

inline void gram_schmidt(const Basis& b, std::vector<std::vector<long double>>& star,
                         std::vector<std::vector<long double>>& mu, std::vector<long double>& norms) {
    const std::size_t m = b.size(), dim = b[0].size();
    for (std::size_t i = 0; i < m; ++i) {
        star[i].assign(b[i].begin(), b[i].end());
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = norms[j] > 0 ? dot_ld(b[i], star[j]) / norms[j] : 0;
            for (std::size_t t = 0; t < dim; ++t) star[i][t] -= mu[i][j] * star[j][t];
        }
        norms[i] = 0;
        for (long double v : star[i]) norms[i] += v * v;
    }
}

/// LLL reduction of the rows of b with Lovasz parameter delta.
inline void lll_reduce(Basis& b, double delta = 0.99) {
    const std::size_t m = b.size();
    if (m < 2) return;
    const std::size_t dim = b[0].size();
    std::vector<std::vector<long double>> star(m, std::vector<long double>(dim)), mu(m, std::vector<long double>(m));
    std::vector<long double> norms(m);
    gram_schmidt(b, star, mu, norms);

    std::size_t k = 1;
    for (int guard = 0; k < m && guard < 1000000; ++guard) {
        for (std::size_t jj = k; jj-- > 0;) {
            const long double q = std::round(mu[k][jj]);
            if (q == 0) continue;
            const auto qi = static_cast<std::int64_t>(q);
            for (std::size_t t = 0; t < dim; ++t) b[k][t] -= qi * b[jj][t];
            for (std::size_t t = 0; t < jj; ++t) mu[k][t] -= q * mu[jj][t];
            mu[k][jj] -= q;
        }
        if (norms[k] >= (static_cast<long double>(delta) - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt(b, star, mu, norms);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

}  // namespace detail

/// Searches for q in Z^n, q != 0, with q . values ~ 0 by reducing the lattice
/// spanned by the rows [e_i | round(10^precision values_i)].
inline RelationProbe relation_probe(std::span<const double> values, int precision, long long max_coeff) {
    if (values.size() < 2 || values.size() > 12)
        throw Error(ErrorCode::InvalidArgument, "relation probe takes 2 to 12 values");
    if (precision < 1 || precision > kMaxRelationPrecision)
        throw Error(ErrorCode::PrecisionUnattainable, "precision must lie in [1, 14]");
    if (max_coeff < 1) throw Error(ErrorCode::InvalidArgument, "max_coeff must be positive");
    const long double scale = std::pow(10.0L, precision);
    for (double v : values)
        if (!std::isfinite(v) || std::abs(static_cast<long double>(v)) * scale > 1e18L)
            throw Error(ErrorCode::PrecisionUnattainable, "scaled value does not fit the lattice");

    RelationProbe out{{values.begin(), values.end()}, precision, max_coeff, std::nullopt, 0.0};
    const std::size_t n = values.size();
    detail::Basis b(n, std::vector<std::int64_t>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        b[i][i] = 1;
        b[i][n] = static_cast<std::int64_t>(std::llround(static_cast<long double>(values[i]) * scale));
    }
    detail::lll_reduce(b, 0.99);

    const long double threshold = std::pow(10.0L, -precision + 2);
    long long best_inf = std::numeric_limits<long long>::max();
    for (const auto& row : b) {
        long long inf = 0;
        long double l2 = 0, dot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            inf = std::max<long long>(inf, std::llabs(row[i]));
            l2 += static_cast<long double>(row[i]) * row[i];
            dot += static_cast<long double>(row[i]) * values[i];
        }
        if (inf == 0 || inf > max_coeff) continue;
        if (std::abs(dot) >= threshold * std::sqrt(l2)) continue;
        if (inf < best_inf) {
            best_inf = inf;
            std::vector<long long> q(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
            // Sign convention: first nonzero entry positive.
            const auto first = std::find_if(q.begin(), q.end(), [](long long c) { return c != 0; });
            if (*first < 0)
                for (auto& c : q) c = -c;
            out.found = std::move(q);
            out.dot = static_cast<double>(std::abs(dot));
        }
    }
    return out;
}

/// Relation probe on the first `count` positive zeros; each must carry a Newton
/// residual below min(1e-12, 10^-precision).
inline RelationProbe relation_probe(const ZeroList& zeros, std::size_t count, int precision, long long max_coeff) {
    const double tol = std::min(kRelationZeroResidual, std::pow(10.0, -precision));
    std::vector<double> values;
    for (std::size_t j = 0; j < zeros.size() && values.size() < count; ++j) {
        if (zeros.gammas[j] <= 1e-9) continue;
        if (!(zeros.residuals[j] < tol))
            throw Error(ErrorCode::PrecisionUnattainable,
                        "zero " + std::to_string(zeros.gammas[j]) + " has residual " + std::to_string(zeros.residuals[j]));
        values.push_back(zeros.gammas[j]);
    }
    if (values.size() < count) throw Error(ErrorCode::TooFewAtoms, "not enough positive zeros in the window");
    return relation_probe(values, precision, max_coeff);
}

}  // namespace fqc
