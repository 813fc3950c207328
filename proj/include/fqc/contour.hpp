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

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include "fqc/dirichlet.hpp"
#include "fqc/polynomial.hpp"

namespace fqc {

using CurvePoint = std::array<double, 2>;

/// Zero set of P(e^{ix}, e^{iy}) on [0, 2 pi]^2, as ordered polylines.
struct ZeroCurve {
    std::vector<std::vector<CurvePoint>> components;
    std::vector<bool> closed;

    std::size_t point_count() const {
        std::size_t s = 0;
        for (const auto& c : components) s += c.size();
        return s;
    }
};

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

template <class Fn>
CurvePoint bisect_edge(const Fn& fn, CurvePoint a, CurvePoint b, double fa) {
    for (int it = 0; it < 80; ++it) {
        const CurvePoint m{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
        const double fm = fn(m[0], m[1]);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
}

/// Marching squares for fn = 0 on [0, 2pi]^2. Vertex values with
/// |v| <= snap count as positive so that curves through grid vertices do not
/// spawn degenerate loops.
template <class Fn>
ZeroCurve march(const Fn& fn, int resolution, double snap) {
    const int r = resolution;
    const double h = 2.0 * std::numbers::pi / r;
    auto coord = [&](int i) { return i == r ? 2.0 * std::numbers::pi : i * h; };
    std::vector<double> val(static_cast<std::size_t>((r + 1) * (r + 1)));
    auto at = [&](int i, int j) -> double& { return val[static_cast<std::size_t>(i * (r + 1) + j)]; };
    for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= r; ++j) {
            const double v = fn(coord(i), coord(j));
            at(i, j) = std::abs(v) <= snap ? snap + 1e-300 : v;
        }
    auto pos = [&](int i, int j) { return at(i, j) > 0.0; };

    std::vector<CurvePoint> points;
    std::map<std::array<int, 3>, std::size_t> edge_id;  // (i, j, dir) -> point index
    auto edge_point = [&](int i, int j, int dir) -> std::size_t {
        const std::array<int, 3> key{i, j, dir};
        auto it = edge_id.find(key);
        if (it != edge_id.end()) return it->second;
        const int i2 = dir == 0 ? i + 1 : i, j2 = dir == 0 ? j : j + 1;
        const CurvePoint a{coord(i), coord(j)}, b{coord(i2), coord(j2)};
        points.push_back(bisect_edge(fn, a, b, at(i, j)));
        edge_id.emplace(key, points.size() - 1);
        return points.size() - 1;
    };

    std::vector<std::pair<std::size_t, std::size_t>> segments;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const bool c00 = pos(i, j), c10 = pos(i + 1, j), c11 = pos(i + 1, j + 1), c01 = pos(i, j + 1);
            // Edges: bottom (i,j)-(i+1,j), right (i+1,j)-(i+1,j+1), top (i,j+1)-(i+1,j+1), left (i,j)-(i,j+1).
            std::vector<std::size_t> cut;
            const bool bottom = c00 != c10, right = c10 != c11, top = c01 != c11, left = c00 != c01;
            if (bottom + right + top + left == 0) continue;
            if (bottom && right && top && left) {
                const double centre = fn(coord(i) + h / 2, coord(j) + h / 2);
                const std::size_t b = edge_point(i, j, 0), rt = edge_point(i + 1, j, 1);
                const std::size_t t = edge_point(i, j + 1, 0), l = edge_point(i, j, 1);
                if ((centre > 0.0) == c00) {
                    segments.emplace_back(b, rt);
                    segments.emplace_back(l, t);
                } else {
                    segments.emplace_back(b, l);
                    segments.emplace_back(rt, t);
                }
                continue;
            }
            if (bottom) cut.push_back(edge_point(i, j, 0));
            if (right) cut.push_back(edge_point(i + 1, j, 1));
            if (top) cut.push_back(edge_point(i, j + 1, 0));
            if (left) cut.push_back(edge_point(i, j, 1));
            if (cut.size() == 2) segments.emplace_back(cut[0], cut[1]);
        }

    // Group into components and order each one along its polyline.
    std::vector<std::vector<std::size_t>> adj(points.size());
    DisjointSets sets(points.size());
    for (const auto& [a, b] : segments) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        sets.unite(a, b);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t p = 0; p < points.size(); ++p) groups[sets.find(p)].push_back(p);

    ZeroCurve out;
    std::vector<bool> seen(points.size(), false);
    for (const auto& [root, members] : groups) {
        std::size_t start = members.front();
        for (std::size_t m : members)
            if (adj[m].size() < 2) {
                start = m;
                break;
            }
        const bool closed = adj[start].size() == 2;
        std::vector<CurvePoint> line;
        std::size_t prev = points.size(), cur = start;
        while (cur < points.size() && !seen[cur]) {
            seen[cur] = true;
            const CurvePoint& p = points[cur];
            if (line.empty() || std::hypot(p[0] - line.back()[0], p[1] - line.back()[1]) > 1e-9) line.push_back(p);
            std::size_t next = points.size();
            for (std::size_t nb : adj[cur])
                if (nb != prev && !seen[nb]) {
                    next = nb;
                    break;
                }
            prev = cur;
            cur = next;
        }
        out.components.push_back(std::move(line));
        out.closed.push_back(closed);
    }
    return out;
}

}  // namespace detail

/// Zero curve of P on the torus, parametrized by z = (e^{ix}, e^{iy}).
///
/// When P has the conjugate symmetry of real_phase() the real function
/// Re(omega e^{-i ell.(x,y)/2} P(e^{ix}, e^{iy})) is contoured (for the lasso
/// polynomial this is (2/3) L(x, y)). Otherwise the zero set of the real part
/// is contoured and only the points where the imaginary part also changes
/// sign are kept, each as its own component.
namespace detail {

inline bool same_torus_point(const CurvePoint& a, const CurvePoint& b, double tol) {
    for (int j = 0; j < 2; ++j) {
        const double d = std::remainder(a[j] - b[j], 2.0 * std::numbers::pi);
        if (std::abs(d) > tol) return false;
    }
    return true;
}

// A single-point component that coincides on the torus with the end of an arc
// is a corner contact of that arc, not a separate component.
inline void absorb_corner_contacts(ZeroCurve& curve) {
    ZeroCurve kept;
    for (std::size_t i = 0; i < curve.components.size(); ++i) {
        const auto& c = curve.components[i];
        bool absorbed = false;
        if (c.size() == 1)
            for (const auto& other : curve.components)
                if (other.size() > 1 &&
                    (same_torus_point(c[0], other.front(), 1e-9) || same_torus_point(c[0], other.back(), 1e-9)))
                    absorbed = true;
        if (absorbed) continue;
        kept.components.push_back(c);
        kept.closed.push_back(curve.closed[i]);
    }
    curve = std::move(kept);
}

}  // namespace detail

inline ZeroCurve torus_zero_curve(const MultiPoly& p, int resolution = 512) {
    if (p.arity() != 2) throw Error(ErrorCode::WrongArity, "torus curves need a bivariate polynomial");
    if (resolution < 64) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 64");
    const ExponentVec ell = p.max_degrees();
    const double snap = 1e-13;

    if (const auto omega = real_phase(p, ell)) {
        auto fn = [&](double x, double y) {
            const double th[2] = {x, y};
            return std::real(*omega * std::polar(1.0, -(ell[0] * x + ell[1] * y) / 2) * p.on_torus(th));
        };
        ZeroCurve curve = detail::march(fn, resolution, snap);
        detail::absorb_corner_contacts(curve);
        return curve;
    }

    auto re = [&](double x, double y) {
        const double th[2] = {x, y};
        return std::real(p.on_torus(th));
    };
    auto im = [&](double x, double y) {
        const double th[2] = {x, y};
        return std::imag(p.on_torus(th));
    };
    const ZeroCurve real_zero = detail::march(re, resolution, snap);
    ZeroCurve out;
    for (const auto& line : real_zero.components)
        for (std::size_t k = 0; k + 1 < line.size(); ++k) {
            CurvePoint a = line[k], b = line[k + 1];
            double fa = im(a[0], a[1]);
            const double fb = im(b[0], b[1]);
            if (fa == 0.0) {
                out.components.push_back({a});
                out.closed.push_back(false);
                continue;
            }
            if ((fa > 0.0) == (fb > 0.0) || fb == 0.0) continue;
            for (int it = 0; it < 60; ++it) {
                const CurvePoint m{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
                const double fm = im(m[0], m[1]);
                if ((fm > 0.0) == (fa > 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.components.push_back({CurvePoint{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])}});
            out.closed.push_back(false);
        }
    return out;
}

}  // namespace fqc
