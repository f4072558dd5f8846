#include "swclab/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace swclab {

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Vec& a, double s) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Vec axpy(const Vec& a, double s, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("axpy: dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

Vec zeros(int d) { return Vec(size_t(d), 0.0); }

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

AmbientNorm AmbientNorm::lp(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("AmbientNorm::lp requires finite p > 1");
    return {NormKind::LP, p};
}

std::string AmbientNorm::name() const {
    switch (kind) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::LINF: return "linf";
        case NormKind::LP: return "lp(" + std::to_string(p) + ")";
    }
    return "?";
}

double norm_value(const Vec& v, const AmbientNorm& n) {
    switch (n.kind) {
        case NormKind::L1: {
            double s = 0.0;
            for (double x : v) s += std::fabs(x);
            return s;
        }
        case NormKind::L2: {
            double s = 0.0;
            for (double x : v) s += x * x;
            return std::sqrt(s);
        }
        case NormKind::LINF: {
            double m = 0.0;
            for (double x : v) m = std::max(m, std::fabs(x));
            return m;
        }
        case NormKind::LP: {
            double s = 0.0;
            for (double x : v) s += std::pow(std::fabs(x), n.p);
            return std::pow(s, 1.0 / n.p);
        }
    }
    return 0.0;
}

double dual_norm_value(const Vec& v, const AmbientNorm& n) {
    switch (n.kind) {
        case NormKind::L1: return norm_value(v, AmbientNorm::linf());
        case NormKind::L2: return norm_value(v, AmbientNorm::l2());
        case NormKind::LINF: return norm_value(v, AmbientNorm::l1());
        case NormKind::LP: return norm_value(v, AmbientNorm::lp(n.p / (n.p - 1.0)));
    }
    return 0.0;
}

double norm_dist(const Vec& a, const Vec& b, const AmbientNorm& n) { return norm_value(sub(a, b), n); }

PointSet::PointSet(int dim_, AmbientNorm norm_, std::vector<Vec> pts) : dim(dim_), norm(norm_), points(std::move(pts)) {
    if (dim < 1) throw std::invalid_argument("PointSet: dimension must be >= 1");
    for (const Vec& p : points) {
        if (int(p.size()) != dim) throw std::invalid_argument("PointSet: point dimension mismatch");
        if (!all_finite(p)) throw std::invalid_argument("PointSet: non-finite coordinate");
    }
}

PointSet PointSet::deduplicated(double tol) const {
    PointSet out;
    out.dim = dim;
    out.norm = norm;
    for (const Vec& p : points) {
        bool dup = false;
        for (const Vec& q : out.points)
            if (norm_dist(p, q, norm) <= tol) {
                dup = true;
                break;
            }
        if (!dup) out.points.push_back(p);
    }
    return out;
}

double diameter(const std::vector<Vec>& pts, const AmbientNorm& n) {
    double d = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, norm_dist(pts[i], pts[j], n));
    return d;
}

double diameter(const PointSet& s) {
    if (s.empty()) throw std::invalid_argument("diameter: empty point set");
    return diameter(s.points, s.norm);
}

}  // namespace swclab
