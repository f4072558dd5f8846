#pragma once

// Gauge-evaluable convex bodies: absolute convex hulls of finite point sets,
// lp balls and ellipsoids. gauge(K, v) = min{ t >= 0 : v in tK }, +infinity
// when v lies outside the span of an AbsHull (a value, not an error).

#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "swclab/geometry.hpp"

namespace swclab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Open halfspace {x : <c,x> > alpha}.
struct HalfSpace {
    Vec c;
    double alpha = 0.0;
};

namespace detail {
// Row-pivoted elimination of the d x m generator matrix. When the generators
// are linearly independent the representation v = P*lambda is unique and the
// gauge is just sum |lambda_i|; otherwise the caller solves an LP.
struct HullFactorization {
    int d = 0, m = 0;
    bool independent = false;
    std::vector<double> lu;     // d x m, multipliers below the diagonal
    std::vector<int> perm;      // row permutation
    // returns lambda, or empty if v is outside the span
    bool solve(const Vec& v, std::vector<double>& lambda) const;
};
}  // namespace detail

struct AbsHullBody {
    PointSet generators;
    explicit AbsHullBody(PointSet gens);
    std::shared_ptr<const detail::HullFactorization> fact;  // immutable after construction
};

struct LpBallBody {
    int dim = 0;
    double p = 2.0;      // in [1, inf]; kInf means the sup norm ball
    double radius = 1.0;
};

struct EllipsoidBody {
    // {x : x^T A x <= 1}, A symmetric positive definite
    std::vector<Vec> A;
    explicit EllipsoidBody(std::vector<Vec> a);
    int dim() const { return int(A.size()); }
};

struct ConvexBody {
    std::variant<AbsHullBody, LpBallBody, EllipsoidBody> v;

    static ConvexBody abs_hull(PointSet gens) { return {AbsHullBody(std::move(gens))}; }
    static ConvexBody lp_ball(int dim, double p, double radius = 1.0);
    static ConvexBody ellipsoid(std::vector<Vec> a) { return {EllipsoidBody(std::move(a))}; }

    int dim() const;
    const char* variant_name() const;
};

double gauge(const ConvexBody& k, const Vec& x);

// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi; d stays small here).
double sym_min_eigenvalue(const std::vector<Vec>& a);

}  // namespace swclab
