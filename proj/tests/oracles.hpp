#pragma once

// Test-only oracles, kept independent of the library's LP / min-norm paths.
//
//  - oracle_hull_distance_exact: exhaustive enumeration. l2 goes through
//    Caratheodory subsets of the difference polytope (affine least-norm per
//    subset, nonnegative-weight filter); l1/linf solve the dual program
//    max { min_i <phi, D_i> : ||phi||_* <= 1 } by enumerating basic points of
//    the constraint system.
//  - oracle_hull_distance_grid: brute force over a convex-combination grid,
//    then pairwise-exchange descent with shrinking steps.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "swclab/body.hpp"

namespace swclab::testing {

inline std::vector<Vec> difference_points(const PointSet& a, const PointSet& b) {
    std::vector<Vec> d;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) d.push_back(sub(a[i], b[j]));
    return d;
}

// Solves the (n x n) system m x = rhs by Gaussian elimination; false if singular.
inline bool dense_solve(std::vector<double> m, std::vector<double> rhs, int n, std::vector<double>& x) {
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(m[size_t(r) * n + col]) > std::fabs(m[size_t(best) * n + col])) best = r;
        if (std::fabs(m[size_t(best) * n + col]) < 1e-12) return false;
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(m[size_t(best) * n + j], m[size_t(col) * n + j]);
            std::swap(rhs[size_t(best)], rhs[size_t(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = m[size_t(r) * n + col] / m[size_t(col) * n + col];
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m[size_t(r) * n + j] -= f * m[size_t(col) * n + j];
            rhs[size_t(r)] -= f * rhs[size_t(col)];
        }
    }
    x.assign(size_t(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[size_t(r)];
        for (int j = r + 1; j < n; ++j) s -= m[size_t(r) * n + j] * x[size_t(j)];
        x[size_t(r)] = s / m[size_t(r) * n + r];
    }
    return true;
}

// min ||z||_2 over conv(points): every candidate is the affine least-norm
// point of a subset of size <= d+1 whose weights come out nonnegative.
inline double min_norm_l2_enum(const std::vector<Vec>& pts) {
    const int d = int(pts.front().size());
    const int n = int(pts.size());
    double best = kInf;
    for (const Vec& p : pts) best = std::min(best, norm_value(p, AmbientNorm::l2()));

    std::vector<int> subset;
    std::function<void(int)> rec = [&](int from) {
        const int k = int(subset.size());
        if (k >= 2) {
            // [G 1; 1' 0] [alpha; nu] = [0; 1]
            const int m = k + 1;
            std::vector<double> sys(size_t(m) * m, 0.0), rhs(size_t(m), 0.0), sol;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    sys[size_t(i) * m + j] = dot(pts[size_t(subset[size_t(i)])], pts[size_t(subset[size_t(j)])]);
            for (int i = 0; i < k; ++i) sys[size_t(i) * m + k] = sys[size_t(k) * m + i] = 1.0;
            rhs[size_t(k)] = 1.0;
            if (dense_solve(sys, rhs, m, sol)) {
                bool ok = true;
                for (int i = 0; i < k; ++i)
                    if (sol[size_t(i)] < -1e-9) ok = false;
                if (ok) {
                    Vec z = zeros(d);
                    for (int i = 0; i < k; ++i) z = axpy(z, sol[size_t(i)], pts[size_t(subset[size_t(i)])]);
                    best = std::min(best, norm_value(z, AmbientNorm::l2()));
                }
            }
        }
        if (k == d + 1) return;
        for (int i = from; i < n; ++i) {
            subset.push_back(i);
            rec(i + 1);
            subset.pop_back();
        }
    };
    rec(0);
    return best;
}

// max { min_i <phi, D_i> : ||phi||_* <= 1 } by basic-point enumeration; the
// value clamps at 0 when the hulls meet.
inline double min_norm_polyhedral_dual_enum(const std::vector<Vec>& pts, const AmbientNorm& norm) {
    const int d = int(pts.front().size());
    const int nv = d + 1;  // variables: phi, s

    // rows: <D_i, phi> - s >= 0 and the dual-ball facets
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (const Vec& p : pts) {
        std::vector<double> r(p.begin(), p.end());
        r.push_back(-1.0);
        rows.push_back(std::move(r));
        rhs.push_back(0.0);
    }
    if (norm.kind == NormKind::LINF) {  // dual ball: sum |phi_i| <= 1
        for (int mask = 0; mask < (1 << d); ++mask) {
            std::vector<double> r(size_t(nv), 0.0);
            for (int i = 0; i < d; ++i) r[size_t(i)] = -(((mask >> i) & 1) ? 1.0 : -1.0);
            rows.push_back(std::move(r));
            rhs.push_back(-1.0);  // -(sum sgn_i phi_i) >= -1
        }
    } else {  // l1 ambient: dual ball max |phi_i| <= 1
        for (int i = 0; i < d; ++i)
            for (double sgn : {1.0, -1.0}) {
                std::vector<double> r(size_t(nv), 0.0);
                r[size_t(i)] = -sgn;
                rows.push_back(std::move(r));
                rhs.push_back(-1.0);
            }
    }

    const int m = int(rows.size());
    double best = 0.0;
    std::vector<int> active;
    std::function<void(int)> rec = [&](int from) {
        if (int(active.size()) == nv) {
            std::vector<double> sys(size_t(nv) * nv, 0.0), r2(size_t(nv), 0.0), sol;
            for (int i = 0; i < nv; ++i) {
                for (int j = 0; j < nv; ++j) sys[size_t(i) * nv + j] = rows[size_t(active[size_t(i)])][size_t(j)];
                r2[size_t(i)] = rhs[size_t(active[size_t(i)])];
            }
            if (dense_solve(sys, r2, nv, sol)) {
                bool feas = true;
                for (int i = 0; i < m && feas; ++i) {
                    double lhs = 0.0;
                    for (int j = 0; j < nv; ++j) lhs += rows[size_t(i)][size_t(j)] * sol[size_t(j)];
                    if (lhs < rhs[size_t(i)] - 1e-9) feas = false;
                }
                if (feas) best = std::max(best, sol[size_t(nv - 1)]);
            }
            return;
        }
        for (int i = from; i < m; ++i) {
            active.push_back(i);
            rec(i + 1);
            active.pop_back();
        }
    };
    rec(0);
    return best;
}

inline double oracle_hull_distance_exact(const PointSet& a, const PointSet& b) {
    const auto d = difference_points(a, b);
    if (a.norm.kind == NormKind::L2) return min_norm_l2_enum(d);
    return min_norm_polyhedral_dual_enum(d, a.norm);
}

// Coarse simplex grid followed by pairwise-exchange descent.
inline double oracle_hull_distance_grid(const PointSet& a, const PointSet& b, int grid = 6,
                                        int descent_rounds = 60) {
    const int na = a.size(), nb = b.size();
    const AmbientNorm nrm = a.norm;

    auto combine = [&](const std::vector<double>& wa, const std::vector<double>& wb) {
        Vec pa = zeros(a.dim), pb = zeros(a.dim);
        for (int i = 0; i < na; ++i) pa = axpy(pa, wa[size_t(i)], a[i]);
        for (int j = 0; j < nb; ++j) pb = axpy(pb, wb[size_t(j)], b[j]);
        return norm_dist(pa, pb, nrm);
    };

    std::vector<std::vector<double>> wa_grid, wb_grid;
    std::vector<double> scratch;
    std::function<void(int, int, int, std::vector<std::vector<double>>&)> comps =
        [&](int k, int left, int parts, std::vector<std::vector<double>>& out) {
            if (k == parts - 1) {
                scratch.push_back(double(left) / grid);
                out.push_back(scratch);
                scratch.pop_back();
                return;
            }
            for (int take = 0; take <= left; ++take) {
                scratch.push_back(double(take) / grid);
                comps(k + 1, left - take, parts, out);
                scratch.pop_back();
            }
        };
    comps(0, grid, na, wa_grid);
    comps(0, grid, nb, wb_grid);

    double best = kInf;
    std::vector<double> wa_best, wb_best;
    for (const auto& wa : wa_grid)
        for (const auto& wb : wb_grid) {
            const double v = combine(wa, wb);
            if (v < best) {
                best = v;
                wa_best = wa;
                wb_best = wb;
            }
        }

    double step = 1.0 / grid;
    for (int round = 0; round < descent_rounds; ++round) {
        bool improved = false;
        auto sweep = [&](std::vector<double>& w) {
            const int k = int(w.size());
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    if (i == j) continue;
                    const double t = std::min(step, w[size_t(j)]);
                    if (t <= 0.0) continue;
                    w[size_t(i)] += t;
                    w[size_t(j)] -= t;
                    const double v = combine(wa_best, wb_best);
                    if (v < best - 1e-15) {
                        best = v;
                        improved = true;
                    } else {
                        w[size_t(i)] -= t;
                        w[size_t(j)] += t;
                    }
                }
        };
        sweep(wa_best);
        sweep(wb_best);
        if (!improved) step *= 0.5;
        if (step < 1e-7) break;
    }
    return best;
}

}  // namespace swclab::testing
