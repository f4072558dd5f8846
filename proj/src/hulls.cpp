#include "swclab/hulls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swclab/linprog.hpp"

namespace swclab {

namespace {

void check_pair(const PointSet& a, const PointSet& b, const char* who) {
    if (a.empty() || b.empty()) throw std::invalid_argument(std::string(who) + ": empty point set");
    if (a.dim != b.dim) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    if (!(a.norm == b.norm)) throw std::invalid_argument(std::string(who) + ": ambient norm mismatch");
}

// ---- exact LP distance for polyhedral norms ----

HullDistanceResult hull_distance_lp(const PointSet& a, const PointSet& b) {
    const int na = a.size(), nb = b.size(), d = a.dim;
    const bool linf = a.norm.kind == NormKind::LINF;
    const int n_aux = linf ? 1 : d;
    const int n = na + nb + n_aux;

    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    std::vector<int> rel;

    // +-(sum lam a - sum mu b)_r <= aux
    for (int r = 0; r < d; ++r) {
        for (int sign : {+1, -1}) {
            std::vector<double> row(size_t(n), 0.0);
            for (int i = 0; i < na; ++i) row[size_t(i)] = sign * a[i][size_t(r)];
            for (int j = 0; j < nb; ++j) row[size_t(na + j)] = -sign * b[j][size_t(r)];
            row[size_t(na + nb + (linf ? 0 : r))] = -1.0;
            A.push_back(std::move(row));
            rhs.push_back(0.0);
            rel.push_back(-1);
        }
    }
    // convex-combination constraints
    for (int block = 0; block < 2; ++block) {
        std::vector<double> row(size_t(n), 0.0);
        const int off = block == 0 ? 0 : na;
        const int cnt = block == 0 ? na : nb;
        for (int i = 0; i < cnt; ++i) row[size_t(off + i)] = 1.0;
        A.push_back(std::move(row));
        rhs.push_back(1.0);
        rel.push_back(0);
    }

    std::vector<double> c(size_t(n), 0.0);
    for (int k = 0; k < n_aux; ++k) c[size_t(na + nb + k)] = 1.0;

    auto res = lp::solve(A, rhs, rel, c);
    if (res.status != lp::Status::Optimal) throw std::runtime_error("hull_distance: LP failed");

    HullDistanceResult out;
    out.distance = res.objective;
    out.witness_a = zeros(d);
    out.witness_b = zeros(d);
    for (int i = 0; i < na; ++i) out.witness_a = axpy(out.witness_a, res.x[size_t(i)], a[i]);
    for (int j = 0; j < nb; ++j) out.witness_b = axpy(out.witness_b, res.x[size_t(na + j)], b[j]);
    return out;
}

// ---- Wolfe-style min-norm point over the difference polytope (l2) ----

struct DiffPoly {
    std::vector<Vec> q;                    // a_i - b_j
    std::vector<std::pair<int, int>> idx;  // originating pair
};

// Affine least-norm over the corral: solve [G 1; 1' 0] [alpha; nu] = [0; 1].
bool affine_min_norm(const std::vector<Vec>& pts, std::vector<double>& alpha) {
    const int k = int(pts.size());
    const int n = k + 1;
    std::vector<double> m(size_t(n) * n, 0.0), rhs(size_t(n), 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[size_t(i) * n + j] = dot(pts[size_t(i)], pts[size_t(j)]);
    for (int i = 0; i < k; ++i) {
        m[size_t(i) * n + k] = 1.0;
        m[size_t(k) * n + i] = 1.0;
    }
    rhs[size_t(k)] = 1.0;

    // Gaussian elimination with partial pivoting.
    std::vector<int> piv(size_t(n), 0);
    for (int i = 0; i < n; ++i) piv[size_t(i)] = i;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(m[size_t(r) * n + col]) > std::fabs(m[size_t(best) * n + col])) best = r;
        if (std::fabs(m[size_t(best) * n + col]) < 1e-13) return false;
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
    std::vector<double> sol(size_t(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[size_t(r)];
        for (int j = r + 1; j < n; ++j) s -= m[size_t(r) * n + j] * sol[size_t(j)];
        sol[size_t(r)] = s / m[size_t(r) * n + r];
    }
    alpha.assign(sol.begin(), sol.begin() + k);
    return true;
}

HullDistanceResult hull_distance_wolfe(const PointSet& a, const PointSet& b, double tol, int max_iters) {
    DiffPoly dp;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            dp.q.push_back(sub(a[i], b[j]));
            dp.idx.emplace_back(i, j);
        }
    const int mq = int(dp.q.size());

    int start = 0;
    for (int i = 1; i < mq; ++i)
        if (norm_value(dp.q[size_t(i)], AmbientNorm::l2()) < norm_value(dp.q[size_t(start)], AmbientNorm::l2()))
            start = i;

    std::vector<int> corral{start};
    std::vector<double> w{1.0};
    Vec x = dp.q[size_t(start)];

    auto rebuild_x = [&]() {
        x = zeros(int(x.size()));
        for (size_t k = 0; k < corral.size(); ++k) x = axpy(x, w[k], dp.q[size_t(corral[k])]);
    };

    double gap = kInf;
    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
        const double nx = norm_value(x, AmbientNorm::l2());
        int best = 0;
        double bestv = dot(x, dp.q[0]);
        for (int i = 1; i < mq; ++i) {
            const double v = dot(x, dp.q[size_t(i)]);
            if (v < bestv - 1e-15) {
                bestv = v;
                best = i;
            }
        }
        const double lower = nx > 0.0 ? std::max(0.0, bestv / nx) : 0.0;
        gap = nx - lower;
        if (gap <= tol) {
            converged = true;
            break;
        }
        if (std::find(corral.begin(), corral.end(), best) == corral.end()) {
            corral.push_back(best);
            w.push_back(0.0);
        }

        // Minor cycles: move toward the affine least-norm point of the corral,
        // dropping points whose weight hits zero.
        for (int minor = 0; minor < int(corral.size()) + 2; ++minor) {
            std::vector<Vec> pts;
            pts.reserve(corral.size());
            for (int id : corral) pts.push_back(dp.q[size_t(id)]);
            std::vector<double> alpha;
            if (!affine_min_norm(pts, alpha)) {
                // Affinely dependent corral: drop the smallest-weight member.
                size_t drop = 0;
                for (size_t k = 1; k < w.size(); ++k)
                    if (w[k] < w[drop]) drop = k;
                corral.erase(corral.begin() + long(drop));
                w.erase(w.begin() + long(drop));
                double s = 0.0;
                for (double v : w) s += v;
                if (s <= 0.0) { w.assign(w.size(), 1.0 / double(w.size())); }
                else { for (double& v : w) v /= s; }
                continue;
            }
            bool interior = true;
            for (double v : alpha)
                if (v < 1e-12) { interior = false; break; }
            if (interior) {
                w = alpha;
                break;
            }
            double theta = 1.0;
            for (size_t k = 0; k < w.size(); ++k)
                if (alpha[k] < 1e-12) theta = std::min(theta, w[k] / (w[k] - alpha[k]));
            std::vector<int> keep_idx;
            std::vector<double> keep_w;
            for (size_t k = 0; k < w.size(); ++k) {
                const double nw = (1.0 - theta) * w[k] + theta * alpha[k];
                if (nw > 1e-12) {
                    keep_idx.push_back(corral[k]);
                    keep_w.push_back(nw);
                }
            }
            corral = std::move(keep_idx);
            w = std::move(keep_w);
            double s = 0.0;
            for (double v : w) s += v;
            for (double& v : w) v /= s;
        }
        rebuild_x();
    }

    HullDistanceResult out;
    out.distance = norm_value(x, AmbientNorm::l2());
    out.converged = converged;
    out.gap = converged ? std::min(gap, tol) : gap;
    out.witness_a = zeros(a.dim);
    out.witness_b = zeros(a.dim);
    std::vector<double> wa(size_t(a.size()), 0.0), wb(size_t(b.size()), 0.0);
    for (size_t k = 0; k < corral.size(); ++k) {
        wa[size_t(dp.idx[size_t(corral[k])].first)] += w[k];
        wb[size_t(dp.idx[size_t(corral[k])].second)] += w[k];
    }
    for (int i = 0; i < a.size(); ++i) out.witness_a = axpy(out.witness_a, wa[size_t(i)], a[i]);
    for (int j = 0; j < b.size(); ++j) out.witness_b = axpy(out.witness_b, wb[size_t(j)], b[j]);
    return out;
}

// ---- Frank-Wolfe fallback for lp(p) ambients ----

HullDistanceResult hull_distance_fw(const PointSet& a, const PointSet& b, double tol, int max_iters) {
    DiffPoly dp;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            dp.q.push_back(sub(a[i], b[j]));
            dp.idx.emplace_back(i, j);
        }
    const int mq = int(dp.q.size());
    const AmbientNorm n = a.norm;

    int start = 0;
    for (int i = 1; i < mq; ++i)
        if (norm_value(dp.q[size_t(i)], n) < norm_value(dp.q[size_t(start)], n)) start = i;
    std::vector<double> w(size_t(mq), 0.0);
    w[size_t(start)] = 1.0;
    Vec z = dp.q[size_t(start)];

    double gap = kInf;
    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
        const double nz = norm_value(z, n);
        if (nz <= tol) {
            gap = nz;
            converged = true;
            break;
        }
        // gradient of ||z||_p
        Vec g(z.size());
        for (size_t r = 0; r < z.size(); ++r) {
            const double t = std::fabs(z[r]) / nz;
            g[r] = (z[r] >= 0 ? 1.0 : -1.0) * std::pow(t, n.p - 1.0);
        }
        int best = 0;
        double bestv = dot(g, dp.q[0]);
        for (int i = 1; i < mq; ++i) {
            const double v = dot(g, dp.q[size_t(i)]);
            if (v < bestv - 1e-15) {
                bestv = v;
                best = i;
            }
        }
        gap = dot(g, z) - bestv;  // convexity: ||z|| - min <= gap
        if (gap <= tol) {
            converged = true;
            break;
        }
        // golden-section line search on t -> ||z + t(s - z)||_p
        const Vec dir = sub(dp.q[size_t(best)], z);
        double lo = 0.0, hi = 1.0;
        const double phi = 0.6180339887498949;
        double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
        double f1 = norm_value(axpy(z, m1, dir), n), f2 = norm_value(axpy(z, m2, dir), n);
        for (int ls = 0; ls < 80; ++ls) {
            if (f1 <= f2) {
                hi = m2; m2 = m1; f2 = f1;
                m1 = hi - phi * (hi - lo);
                f1 = norm_value(axpy(z, m1, dir), n);
            } else {
                lo = m1; m1 = m2; f1 = f2;
                m2 = lo + phi * (hi - lo);
                f2 = norm_value(axpy(z, m2, dir), n);
            }
        }
        const double t = 0.5 * (lo + hi);
        if (t <= 1e-16) { converged = gap <= tol; break; }
        for (double& v : w) v *= (1.0 - t);
        w[size_t(best)] += t;
        z = axpy(z, t, dir);
        for (size_t r = 0; r < z.size(); ++r) if (std::fabs(z[r]) < 1e-300) z[r] = 0.0;
        z = [&]() {  // re-synthesize to control drift
            Vec s = zeros(int(z.size()));
            for (int i = 0; i < mq; ++i)
                if (w[size_t(i)] > 0.0) s = axpy(s, w[size_t(i)], dp.q[size_t(i)]);
            return s;
        }();
    }

    HullDistanceResult out;
    out.distance = norm_value(z, n);
    out.converged = converged;
    out.gap = gap;
    out.witness_a = zeros(a.dim);
    out.witness_b = zeros(a.dim);
    std::vector<double> wa(size_t(a.size()), 0.0), wb(size_t(b.size()), 0.0);
    for (int k = 0; k < mq; ++k) {
        wa[size_t(dp.idx[size_t(k)].first)] += w[size_t(k)];
        wb[size_t(dp.idx[size_t(k)].second)] += w[size_t(k)];
    }
    for (int i = 0; i < a.size(); ++i) out.witness_a = axpy(out.witness_a, wa[size_t(i)], a[i]);
    for (int j = 0; j < b.size(); ++j) out.witness_b = axpy(out.witness_b, wb[size_t(j)], b[j]);
    return out;
}

}  // namespace

HullDistanceResult hull_distance(const PointSet& a, const PointSet& b, double tol, int max_iters) {
    check_pair(a, b, "hull_distance");
    switch (a.norm.kind) {
        case NormKind::L1:
        case NormKind::LINF: return hull_distance_lp(a, b);
        case NormKind::L2: return hull_distance_wolfe(a, b, tol, max_iters);
        case NormKind::LP: return hull_distance_fw(a, b, tol, max_iters);
    }
    throw std::logic_error("hull_distance: unknown norm");
}

std::optional<HalfSpace> separability(const PointSet& s, const PointSet& t, const Config& cfg) {
    if (s.empty()) throw std::invalid_argument("separability: S must be nonempty");
    if (!t.empty()) {
        if (s.dim != t.dim) throw std::invalid_argument("separability: dimension mismatch");
        for (int i = 0; i < s.size(); ++i)
            for (int j = 0; j < t.size(); ++j)
                if (norm_dist(s[i], t[j], s.norm) <= cfg.dedup_tol)
                    throw std::invalid_argument("separability: S and T are not disjoint");
    }

    // Variables: c = u - w (2d), alpha = ap - am (2). Margin >= 1 on S.
    const int d = s.dim;
    const int n = 2 * d + 2;
    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    std::vector<int> rel;

    auto row_for = [&](const Vec& p) {
        std::vector<double> row(size_t(n), 0.0);
        for (int r = 0; r < d; ++r) {
            row[size_t(r)] = p[size_t(r)];
            row[size_t(d + r)] = -p[size_t(r)];
        }
        row[size_t(2 * d)] = -1.0;      // -alpha
        row[size_t(2 * d + 1)] = 1.0;
        return row;
    };
    for (int i = 0; i < s.size(); ++i) {
        A.push_back(row_for(s[i]));
        rhs.push_back(1.0);
        rel.push_back(+1);  // <c,x> - alpha >= 1
    }
    for (int j = 0; j < t.size(); ++j) {
        A.push_back(row_for(t[j]));
        rhs.push_back(0.0);
        rel.push_back(-1);  // <c,y> - alpha <= 0
    }

    std::vector<double> c(size_t(n), 1.0);  // keep the certificate small
    auto res = lp::solve(A, rhs, rel, c);
    if (res.status == lp::Status::Infeasible) return std::nullopt;
    if (res.status != lp::Status::Optimal) throw std::runtime_error("separability: LP did not converge");

    HalfSpace h;
    h.c = zeros(d);
    for (int r = 0; r < d; ++r) h.c[size_t(r)] = res.x[size_t(r)] - res.x[size_t(d + r)];
    const double alpha = res.x[size_t(2 * d)] - res.x[size_t(2 * d + 1)];
    h.alpha = alpha + 0.5;  // center the threshold inside the unit margin
    return h;
}

bool halfspace_selects(const HalfSpace& h, const std::vector<Vec>& all, const std::vector<int>& selected) {
    std::vector<char> mark(all.size(), 0);
    for (int i : selected) {
        if (i < 0 || i >= int(all.size())) return false;
        mark[size_t(i)] = 1;
    }
    for (size_t i = 0; i < all.size(); ++i) {
        const bool in = dot(h.c, all[i]) > h.alpha;
        if (in != bool(mark[i])) return false;
    }
    return true;
}

}  // namespace swclab
