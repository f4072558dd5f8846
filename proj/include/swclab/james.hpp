#pragma once

// Finite separation certificates: prefix/suffix hull-separation chains, the
// 0/theta functional systems that witness them, cube-map certificates, the
// dyadic averaging tree, and subspace-restricted variants.

#include <optional>

#include "swclab/hulls.hpp"

namespace swclab {

struct SplitRecord {
    int k = 0;  // split after the k-th point (1-based)
    double distance = 0.0;
    Vec witness_a, witness_b;
    bool converged = true;
    double gap = 0.0;
};

struct SeparationCertificate {
    AmbientNorm norm;
    double theta = 0.0;  // min over splits of the hull distance
    std::vector<Vec> points;
    std::vector<SplitRecord> per_split;
};

// dist(conv{x_j : j <= k}, conv{x_j : j > k}) for every 1 <= k < n.
SeparationCertificate separation_value(const std::vector<Vec>& points, const AmbientNorm& norm,
                                       double tol = 1e-8, int jobs = 1);

struct JamesSystem {
    double theta = 0.0;
    AmbientNorm ambient;
    std::vector<Vec> points;
    std::vector<Vec> functionals;
    double dual_norm_bound = 1.0;
};

struct JamesVerifyReport {
    double max_pattern_residual = 0.0;  // worst |<x*_n, x_k> - expected|
    double max_dual_norm_excess = 0.0;
    bool passes = false;
    bool theta_is_zero = false;  // degenerate certificate, flagged
};

// Checks <x*_n, x_k> = 0 (n > k) and = theta (n <= k), and the dual-norm cap.
JamesVerifyReport verify_james_system(const JamesSystem& sys, double tol);

struct FunctionalSearch {
    bool found = false;
    std::vector<Vec> functionals;
    int failed_index = -1;  // 1-based index of the first infeasible subproblem
};

// For each n solves <c, x_k> = 0 (k < n), = theta (k >= n) with dual norm <= 1.
// Polyhedral ambients go through an exact LP; l2 alternates projections
// between the affine pattern set and the unit ball.
FunctionalSearch find_functionals(const std::vector<Vec>& points, double theta,
                                  const AmbientNorm& ambient, double l2_tol = 1e-6,
                                  int l2_iter_cap = 100000);

struct CubeSplit {
    std::vector<int> prefix;  // a_1 .. a_{k-1}
    int k = 0;
    double distance = 0.0;
};

struct CubeCertificate {
    int n = 0;
    double theta = 0.0;
    bool certified = false;
    std::optional<CubeSplit> worst;
    std::vector<CubeSplit> splits;
};

// f lists the images of {0,1}^n in binary order (most significant bit first).
// Every split A0 = (a_1..a_{k-1},0) x {0,1}^{n-k} vs A1 = (...,1) x {0,1}^{n-k}
// with 1 < k <= n is checked by hull distance; n = 1 is vacuously certified.
CubeCertificate verify_cube(const std::vector<Vec>& f, double theta, const AmbientNorm& norm,
                            int n_cap = 12, int jobs = 1);

// Dyadic averaging tree in heap order (root at 0, children of i at 2i+1/2i+2);
// the last 2^n slots are the input points and every internal node is exactly
// the midpoint of its children.
struct DyadicTree {
    int height = 0;
    std::vector<Vec> nodes;

    int node_count() const { return int(nodes.size()); }
    static int parent(int i) { return (i - 1) / 2; }
    static int level_of(int i);
};

DyadicTree tree_from_points(const std::vector<Vec>& points);

struct RestrictedSeparation {
    std::vector<int> surviving;  // indices into the input order
    std::optional<SeparationCertificate> cert;  // absent when < 2 points survive
};

// Keeps the points lying in the intersection of the constraint kernels
// (|<y*, x>| <= membership_tol) and runs separation_value on what remains.
RestrictedSeparation restrict_and_separate(const PointSet& points,
                                           const std::vector<Vec>& constraints,
                                           double membership_tol = 1e-9, double tol = 1e-8);

}  // namespace swclab
