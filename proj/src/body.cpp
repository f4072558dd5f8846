#include "swclab/body.hpp"

#include <cmath>
#include <stdexcept>

#include "swclab/linprog.hpp"

namespace swclab {

namespace detail {

bool HullFactorization::solve(const Vec& v, std::vector<double>& lambda) const {
    std::vector<double> y(size_t(d), 0.0);
    for (int r = 0; r < d; ++r) y[size_t(r)] = v[size_t(perm[size_t(r)])];
    for (int k = 0; k < m; ++k)
        for (int r = k + 1; r < d; ++r) y[size_t(r)] -= lu[size_t(r) * m + k] * y[size_t(k)];

    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::fabs(x));
    for (int r = m; r < d; ++r)
        if (std::fabs(y[size_t(r)]) > 1e-9 * scale) return false;  // outside the span

    lambda.assign(size_t(m), 0.0);
    for (int k = m - 1; k >= 0; --k) {
        double s = y[size_t(k)];
        for (int j = k + 1; j < m; ++j) s -= lu[size_t(k) * m + j] * lambda[size_t(j)];
        lambda[size_t(k)] = s / lu[size_t(k) * m + k];
    }
    return true;
}

// Eliminates P (columns = generators); flags independence so gauge queries can
// use the O(d*m) triangular path instead of an LP.
std::shared_ptr<const HullFactorization> factor_generators(const PointSet& gens) {
    auto f = std::make_shared<HullFactorization>();
    f->d = gens.dim;
    f->m = gens.size();
    if (f->m == 0 || f->m > f->d) return f;  // dependent for sure (or empty)

    f->lu.assign(size_t(f->d) * f->m, 0.0);
    f->perm.resize(size_t(f->d));
    for (int r = 0; r < f->d; ++r) f->perm[size_t(r)] = r;
    double scale = 0.0;
    for (int j = 0; j < f->m; ++j)
        for (int r = 0; r < f->d; ++r) {
            f->lu[size_t(r) * f->m + j] = gens[j][size_t(r)];
            scale = std::max(scale, std::fabs(gens[j][size_t(r)]));
        }
    if (scale == 0.0) return f;

    auto& a = f->lu;
    const int m = f->m, d = f->d;
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int r = k + 1; r < d; ++r)
            if (std::fabs(a[size_t(r) * m + k]) > std::fabs(a[size_t(piv) * m + k])) piv = r;
        if (std::fabs(a[size_t(piv) * m + k]) < 1e-9 * scale) return f;  // rank-deficient: LP path
        if (piv != k) {
            for (int j = 0; j < m; ++j) std::swap(a[size_t(piv) * m + j], a[size_t(k) * m + j]);
            std::swap(f->perm[size_t(piv)], f->perm[size_t(k)]);
        }
        for (int r = k + 1; r < d; ++r) {
            const double mult = a[size_t(r) * m + k] / a[size_t(k) * m + k];
            a[size_t(r) * m + k] = mult;
            for (int j = k + 1; j < m; ++j) a[size_t(r) * m + j] -= mult * a[size_t(k) * m + j];
        }
    }
    f->independent = true;
    return f;
}

}  // namespace detail

AbsHullBody::AbsHullBody(PointSet gens) : generators(std::move(gens)) {
    if (generators.empty()) throw std::invalid_argument("AbsHullBody: no generators");
    fact = detail::factor_generators(generators);
}

EllipsoidBody::EllipsoidBody(std::vector<Vec> a) : A(std::move(a)) {
    const int d = int(A.size());
    if (d < 1) throw std::invalid_argument("EllipsoidBody: empty matrix");
    for (const auto& row : A)
        if (int(row.size()) != d) throw std::invalid_argument("EllipsoidBody: matrix not square");
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::fabs(A[size_t(i)][size_t(j)] - A[size_t(j)][size_t(i)]) > 1e-12)
                throw std::invalid_argument("EllipsoidBody: matrix not symmetric");
    // Cholesky as the positive-definiteness check.
    std::vector<Vec> L(size_t(d), Vec(size_t(d), 0.0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = A[size_t(i)][size_t(j)];
            for (int k = 0; k < j; ++k) s -= L[size_t(i)][size_t(k)] * L[size_t(j)][size_t(k)];
            if (i == j) {
                if (s <= 0.0) throw std::invalid_argument("EllipsoidBody: matrix not positive definite");
                L[size_t(i)][size_t(i)] = std::sqrt(s);
            } else {
                L[size_t(i)][size_t(j)] = s / L[size_t(j)][size_t(j)];
            }
        }
    }
}

ConvexBody ConvexBody::lp_ball(int dim, double p, double radius) {
    if (dim < 1) throw std::invalid_argument("lp_ball: dimension must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("lp_ball: radius must be > 0");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_ball: p must be >= 1 (kInf for the sup ball)");
    return {LpBallBody{dim, p, radius}};
}

int ConvexBody::dim() const {
    return std::visit(
        [](const auto& b) -> int {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, AbsHullBody>) return b.generators.dim;
            else if constexpr (std::is_same_v<T, LpBallBody>) return b.dim;
            else return b.dim();
        },
        v);
}

const char* ConvexBody::variant_name() const {
    if (std::holds_alternative<AbsHullBody>(v)) return "abs_hull";
    if (std::holds_alternative<LpBallBody>(v)) return "lp_ball";
    return "ellipsoid";
}

namespace {

double gauge_abs_hull(const AbsHullBody& k, const Vec& x) {
    const int m = k.generators.size();
    bool zero = true;
    for (double c : x)
        if (c != 0.0) { zero = false; break; }
    if (zero) return 0.0;

    if (k.fact && k.fact->independent) {
        std::vector<double> lambda;
        if (!k.fact->solve(x, lambda)) return kInf;
        double s = 0.0;
        for (double l : lambda) s += std::fabs(l);
        return s;
    }

    // min sum(u+w)  s.t.  sum (u_i - w_i) p_i = x,  u, w >= 0
    const int d = k.generators.dim;
    std::vector<std::vector<double>> A(size_t(d), std::vector<double>(size_t(2 * m), 0.0));
    std::vector<double> b(size_t(d), 0.0), c(size_t(2 * m), 1.0);
    std::vector<int> rel(size_t(d), 0);
    for (int r = 0; r < d; ++r) {
        for (int j = 0; j < m; ++j) {
            A[size_t(r)][size_t(j)] = k.generators[j][size_t(r)];
            A[size_t(r)][size_t(m + j)] = -k.generators[j][size_t(r)];
        }
        b[size_t(r)] = x[size_t(r)];
    }
    auto res = lp::solve(A, b, rel, c);
    if (res.status == lp::Status::Infeasible) return kInf;
    if (res.status != lp::Status::Optimal) throw std::runtime_error("gauge: LP did not converge");
    return res.objective;
}

}  // namespace

double gauge(const ConvexBody& k, const Vec& x) {
    if (int(x.size()) != k.dim()) throw std::invalid_argument("gauge: dimension mismatch");
    if (const auto* h = std::get_if<AbsHullBody>(&k.v)) return gauge_abs_hull(*h, x);
    if (const auto* b = std::get_if<LpBallBody>(&k.v)) {
        AmbientNorm n = b->p == kInf  ? AmbientNorm::linf()
                        : b->p == 1.0 ? AmbientNorm::l1()
                        : b->p == 2.0 ? AmbientNorm::l2()
                                      : AmbientNorm::lp(b->p);
        return norm_value(x, n) / b->radius;
    }
    const auto& e = std::get<EllipsoidBody>(k.v);
    double q = 0.0;
    for (size_t i = 0; i < x.size(); ++i) q += x[i] * dot(e.A[i], x);
    return std::sqrt(std::max(0.0, q));
}

double sym_min_eigenvalue(const std::vector<Vec>& a) {
    const int d = int(a.size());
    std::vector<Vec> m = a;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off += m[size_t(i)][size_t(j)] * m[size_t(i)][size_t(j)];
        if (off < 1e-24) break;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                const double apq = m[size_t(p)][size_t(q)];
                if (std::fabs(apq) < 1e-15) continue;
                const double theta = (m[size_t(q)][size_t(q)] - m[size_t(p)][size_t(p)]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = m[size_t(k)][size_t(p)], akq = m[size_t(k)][size_t(q)];
                    m[size_t(k)][size_t(p)] = c * akp - s * akq;
                    m[size_t(k)][size_t(q)] = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = m[size_t(p)][size_t(k)], aqk = m[size_t(q)][size_t(k)];
                    m[size_t(p)][size_t(k)] = c * apk - s * aqk;
                    m[size_t(q)][size_t(k)] = s * apk + c * aqk;
                }
            }
    }
    double mn = m[0][0];
    for (int i = 1; i < d; ++i) mn = std::min(mn, m[size_t(i)][size_t(i)]);
    return mn;
}

}  // namespace swclab
