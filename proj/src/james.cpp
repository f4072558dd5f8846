#include "swclab/james.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swclab/linprog.hpp"

namespace swclab {

namespace {

void check_points(const std::vector<Vec>& pts, const char* who, size_t min_count) {
    if (pts.size() < min_count) throw std::invalid_argument(std::string(who) + ": too few points");
    for (const Vec& p : pts) {
        if (p.size() != pts.front().size()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
        if (!all_finite(p)) throw std::invalid_argument(std::string(who) + ": non-finite coordinate");
    }
}

// min dual-norm(c) subject to <c, x_k> = rhs_k; exact for l1/linf ambients.
// Feasible functional exists iff the minimum is <= 1.
std::optional<Vec> min_dual_norm_functional_lp(const std::vector<Vec>& pts,
                                               const std::vector<double>& rhs,
                                               const AmbientNorm& ambient) {
    const int d = int(pts.front().size());
    const int m = int(pts.size());
    const bool linf_ambient = ambient.kind == NormKind::LINF;  // dual norm is l1
    const int n_aux = linf_ambient ? 0 : 1;                    // l1 ambient: dual linf needs a cap var
    const int n = 2 * d + n_aux;

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<int> rel;
    for (int i = 0; i < m; ++i) {
        std::vector<double> row(size_t(n), 0.0);
        for (int r = 0; r < d; ++r) {
            row[size_t(r)] = pts[size_t(i)][size_t(r)];
            row[size_t(d + r)] = -pts[size_t(i)][size_t(r)];
        }
        A.push_back(std::move(row));
        b.push_back(rhs[size_t(i)]);
        rel.push_back(0);
    }
    std::vector<double> c(size_t(n), 0.0);
    if (linf_ambient) {
        for (int r = 0; r < 2 * d; ++r) c[size_t(r)] = 1.0;  // sum(u+w) = l1 norm
    } else {
        for (int r = 0; r < d; ++r) {  // u_r + w_r <= t
            std::vector<double> row(size_t(n), 0.0);
            row[size_t(r)] = 1.0;
            row[size_t(d + r)] = 1.0;
            row[size_t(2 * d)] = -1.0;
            A.push_back(std::move(row));
            b.push_back(0.0);
            rel.push_back(-1);
        }
        c[size_t(2 * d)] = 1.0;  // minimize t = linf norm
    }

    auto res = lp::solve(A, b, rel, c);
    if (res.status == lp::Status::Infeasible) return std::nullopt;
    if (res.status != lp::Status::Optimal) throw std::runtime_error("find_functionals: LP did not converge");
    if (res.objective > 1.0 + 1e-9) return std::nullopt;

    Vec out = zeros(d);
    for (int r = 0; r < d; ++r) out[size_t(r)] = res.x[size_t(r)] - res.x[size_t(d + r)];
    return out;
}

// Orthonormalized constraint rows for the affine set {c : <x_k, c> = rhs_k}.
struct AffineSet {
    std::vector<Vec> q;      // orthonormal basis of the row space
    std::vector<double> beta;  // transformed right-hand side
    bool consistent = true;

    Vec particular() const {
        Vec c = q.empty() ? Vec{} : zeros(int(q.front().size()));
        for (size_t r = 0; r < q.size(); ++r) c = axpy(c, beta[r], q[r]);
        return c;
    }
    Vec project(const Vec& y) const {
        Vec out = y;
        for (size_t r = 0; r < q.size(); ++r) out = axpy(out, beta[r] - dot(q[r], y), q[r]);
        return out;
    }
};

AffineSet build_affine(const std::vector<Vec>& rows, const std::vector<double>& rhs) {
    AffineSet s;
    for (size_t i = 0; i < rows.size(); ++i) {
        Vec v = rows[i];
        double b = rhs[i];
        for (size_t r = 0; r < s.q.size(); ++r) {
            const double pr = dot(s.q[r], v);
            v = axpy(v, -pr, s.q[r]);
            b -= pr * s.beta[r];
        }
        const double nv = norm_value(v, AmbientNorm::l2());
        if (nv <= 1e-11) {
            if (std::fabs(b) > 1e-9) s.consistent = false;  // contradictory row
            continue;
        }
        s.q.push_back(scale(v, 1.0 / nv));
        s.beta.push_back(b / nv);
    }
    return s;
}

std::optional<Vec> l2_functional(const std::vector<Vec>& pts, const std::vector<double>& rhs,
                                 double tol, int iter_cap) {
    AffineSet aff = build_affine(pts, rhs);
    if (!aff.consistent) return std::nullopt;

    Vec c = aff.particular();
    for (int it = 0; it < iter_cap; ++it) {
        const double nc = norm_value(c, AmbientNorm::l2());
        if (nc > 1.0) c = scale(c, 1.0 / nc);
        const Vec back = aff.project(c);
        double residual = 0.0;
        for (size_t i = 0; i < pts.size(); ++i)
            residual = std::max(residual, std::fabs(dot(pts[i], back) - rhs[i]));
        const double moved = norm_dist(back, c, AmbientNorm::l2());
        c = back;
        if (residual <= tol && norm_value(c, AmbientNorm::l2()) <= 1.0 + tol) return c;
        if (moved <= 1e-15) break;  // cycle: affine set and ball do not meet
    }
    return std::nullopt;
}

}  // namespace

SeparationCertificate separation_value(const std::vector<Vec>& points, const AmbientNorm& norm,
                                       double tol, int jobs) {
    check_points(points, "separation_value", 2);
    const int n = int(points.size());
    const int dim = int(points.front().size());

    SeparationCertificate cert;
    cert.norm = norm;
    cert.points = points;
    cert.per_split.resize(size_t(n - 1));

    parallel_for(n - 1, jobs, [&](int i) {
        const int k = i + 1;
        std::vector<Vec> pre(points.begin(), points.begin() + k);
        std::vector<Vec> suf(points.begin() + k, points.end());
        auto hd = hull_distance(PointSet(dim, norm, pre), PointSet(dim, norm, suf), tol);
        SplitRecord rec;
        rec.k = k;
        rec.distance = hd.distance;
        rec.witness_a = std::move(hd.witness_a);
        rec.witness_b = std::move(hd.witness_b);
        rec.converged = hd.converged;
        rec.gap = hd.gap;
        cert.per_split[size_t(i)] = std::move(rec);
    });

    cert.theta = kInf;
    for (const auto& r : cert.per_split) cert.theta = std::min(cert.theta, r.distance);
    return cert;
}

JamesVerifyReport verify_james_system(const JamesSystem& sys, double tol) {
    if (sys.points.size() != sys.functionals.size())
        throw std::invalid_argument("verify_james_system: points/functionals count mismatch");
    check_points(sys.points, "verify_james_system", 1);
    check_points(sys.functionals, "verify_james_system", 1);
    if (sys.points.front().size() != sys.functionals.front().size())
        throw std::invalid_argument("verify_james_system: dimension mismatch");

    JamesVerifyReport rep;
    const int n = int(sys.points.size());
    for (int fn = 1; fn <= n; ++fn)
        for (int k = 1; k <= n; ++k) {
            const double expected = fn > k ? 0.0 : sys.theta;
            const double got = dot(sys.functionals[size_t(fn - 1)], sys.points[size_t(k - 1)]);
            rep.max_pattern_residual = std::max(rep.max_pattern_residual, std::fabs(got - expected));
        }
    for (const Vec& f : sys.functionals) {
        const double dn = dual_norm_value(f, sys.ambient);
        rep.max_dual_norm_excess = std::max(rep.max_dual_norm_excess, std::max(0.0, dn - sys.dual_norm_bound));
    }
    rep.theta_is_zero = std::fabs(sys.theta) <= 1e-15;
    rep.passes = rep.max_pattern_residual <= tol && rep.max_dual_norm_excess <= tol;
    return rep;
}

FunctionalSearch find_functionals(const std::vector<Vec>& points, double theta,
                                  const AmbientNorm& ambient, double l2_tol, int l2_iter_cap) {
    check_points(points, "find_functionals", 1);
    if (ambient.kind == NormKind::LP)
        throw std::invalid_argument("find_functionals: ambient must be l1, l2 or linf");

    FunctionalSearch out;
    const int n = int(points.size());
    for (int fn = 1; fn <= n; ++fn) {
        std::vector<double> rhs(size_t(n), 0.0);
        for (int k = 1; k <= n; ++k) rhs[size_t(k - 1)] = fn > k ? 0.0 : theta;
        std::optional<Vec> c;
        if (ambient.kind == NormKind::L2)
            c = l2_functional(points, rhs, l2_tol, l2_iter_cap);
        else
            c = min_dual_norm_functional_lp(points, rhs, ambient);
        if (!c) {
            out.found = false;
            out.failed_index = fn;
            out.functionals.clear();
            return out;
        }
        out.functionals.push_back(std::move(*c));
    }
    out.found = true;
    return out;
}

CubeCertificate verify_cube(const std::vector<Vec>& f, double theta, const AmbientNorm& norm,
                            int n_cap, int jobs) {
    check_points(f, "verify_cube", 1);
    int n = 0;
    while ((size_t(1) << (n + 1)) <= f.size()) ++n;
    if ((size_t(1) << n) != f.size())
        throw std::invalid_argument("verify_cube: the map must list 2^n images");
    if (n > n_cap) throw BudgetError("verify_cube: split enumeration budget exceeded", n, n_cap);
    const int dim = int(f.front().size());

    CubeCertificate cert;
    cert.n = n;
    cert.theta = theta;

    struct Task {
        std::vector<int> prefix;
        int k;
        size_t base, half;
    };
    std::vector<Task> tasks;
    for (int k = 2; k <= n; ++k) {
        const int n_pref = 1 << (k - 1);
        const size_t half = size_t(1) << (n - k);
        for (int p = 0; p < n_pref; ++p) {
            Task t;
            t.k = k;
            t.prefix.resize(size_t(k - 1));
            for (int b = 0; b < k - 1; ++b) t.prefix[size_t(b)] = (p >> (k - 2 - b)) & 1;
            t.base = size_t(p) << (n - k + 1);
            t.half = half;
            tasks.push_back(std::move(t));
        }
    }

    cert.splits.resize(tasks.size());
    parallel_for(int(tasks.size()), jobs, [&](int ti) {
        const Task& t = tasks[size_t(ti)];
        std::vector<Vec> a0(f.begin() + long(t.base), f.begin() + long(t.base + t.half));
        std::vector<Vec> a1(f.begin() + long(t.base + t.half), f.begin() + long(t.base + 2 * t.half));
        auto hd = hull_distance(PointSet(dim, norm, a0), PointSet(dim, norm, a1));
        CubeSplit cs;
        cs.prefix = t.prefix;
        cs.k = t.k;
        cs.distance = hd.distance;
        cert.splits[size_t(ti)] = std::move(cs);
    });

    cert.certified = true;
    for (const auto& cs : cert.splits) {
        if (!cert.worst || cs.distance < cert.worst->distance) cert.worst = cs;
        if (cs.distance < theta - 1e-9) cert.certified = false;
    }
    return cert;  // n == 1 has no admissible split and is vacuously certified
}

int DyadicTree::level_of(int i) {
    int lvl = 0;
    while (((i + 1) >> (lvl + 1)) > 0) ++lvl;
    return lvl;
}

DyadicTree tree_from_points(const std::vector<Vec>& points) {
    check_points(points, "tree_from_points", 1);
    int n = 0;
    while ((size_t(1) << (n + 1)) <= points.size()) ++n;
    if ((size_t(1) << n) != points.size())
        throw std::invalid_argument("tree_from_points: point count is not a power of two");

    DyadicTree t;
    t.height = n;
    const int total = (1 << (n + 1)) - 1;
    t.nodes.resize(size_t(total));
    const int first_leaf = (1 << n) - 1;
    for (size_t i = 0; i < points.size(); ++i) t.nodes[size_t(first_leaf) + i] = points[i];
    for (int i = first_leaf - 1; i >= 0; --i)
        t.nodes[size_t(i)] = scale(add(t.nodes[size_t(2 * i + 1)], t.nodes[size_t(2 * i + 2)]), 0.5);
    return t;
}

RestrictedSeparation restrict_and_separate(const PointSet& points, const std::vector<Vec>& constraints,
                                           double membership_tol, double tol) {
    for (const Vec& c : constraints)
        if (int(c.size()) != points.dim)
            throw std::invalid_argument("restrict_and_separate: constraint dimension mismatch");

    RestrictedSeparation out;
    for (int i = 0; i < points.size(); ++i) {
        bool in = true;
        for (const Vec& c : constraints)
            if (std::fabs(dot(c, points[i])) > membership_tol) {
                in = false;
                break;
            }
        if (in) out.surviving.push_back(i);
    }
    if (out.surviving.size() < 2) return out;  // insufficient points in the subspace

    std::vector<Vec> sel;
    sel.reserve(out.surviving.size());
    for (int i : out.surviving) sel.push_back(points[i]);
    out.cert = separation_value(sel, points.norm, tol);
    return out;
}

}  // namespace swclab
