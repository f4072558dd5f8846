#pragma once

// Vectors in R^d, the ambient lp norms and point sets. These are the
// primitives every other module builds on.

#include <optional>
#include <string>
#include <vector>

#include "swclab/common.hpp"

namespace swclab {

using Vec = std::vector<double>;

// ---- elementwise helpers ----

double dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double s);
// a + s*b
Vec axpy(const Vec& a, double s, const Vec& b);
Vec zeros(int d);
bool all_finite(const Vec& v);

// ---- ambient norms ----

enum class NormKind { L1, L2, LINF, LP };

struct AmbientNorm {
    NormKind kind = NormKind::L2;
    double p = 2.0;  // only meaningful for LP; requires 1 < p < inf

    static AmbientNorm l1() { return {NormKind::L1, 1.0}; }
    static AmbientNorm l2() { return {NormKind::L2, 2.0}; }
    static AmbientNorm linf() { return {NormKind::LINF, 0.0}; }
    static AmbientNorm lp(double p);

    bool operator==(const AmbientNorm& o) const { return kind == o.kind && (kind != NormKind::LP || p == o.p); }
    std::string name() const;
};

double norm_value(const Vec& v, const AmbientNorm& n);
// Norm of the dual space: l1 for LINF, linf for L1, l2 for L2, lq for LP.
double dual_norm_value(const Vec& v, const AmbientNorm& n);
double norm_dist(const Vec& a, const Vec& b, const AmbientNorm& n);

// ---- point sets ----

// An ordered list of points of common dimension under an ambient norm.
// The order is meaningful (James chains are ordered); call deduplicated()
// where distinctness is required.
struct PointSet {
    int dim = 0;
    AmbientNorm norm;
    std::vector<Vec> points;

    PointSet() = default;
    PointSet(int dim, AmbientNorm norm, std::vector<Vec> pts);

    int size() const { return int(points.size()); }
    bool empty() const { return points.empty(); }
    const Vec& operator[](int i) const { return points[size_t(i)]; }

    // removes near-duplicates (pairwise distance <= tol), keeping first occurrences
    PointSet deduplicated(double tol = Config{}.dedup_tol) const;
};

// max pairwise distance, exhaustive over pairs; 0 for singletons
double diameter(const PointSet& s);
double diameter(const std::vector<Vec>& pts, const AmbientNorm& n);

}  // namespace swclab
