#pragma once

// Convexity modulus delta_K(eps) = inf{ 1 - |(x+y)/2|_K : x,y in K,
// ||x-y|| >= eps } and the checks built on it. Sampling can only produce
// upper bounds for the infimum, so sampled values are labelled as such and
// verdict-giving checks insist on a closed form (or are marked advisory).

#include <cstdint>
#include <optional>
#include <utility>

#include "swclab/body.hpp"
#include "swclab/dentability.hpp"

namespace swclab {

enum class ModulusMethod { ClosedForm, SampledUpperBound };

struct ModulusEstimate {
    double eps = 0.0;
    double value = 0.0;
    ModulusMethod method = ModulusMethod::ClosedForm;
    int samples = 0;
    uint64_t seed = 0;
};

// Closed forms: l2 ball (1 - sqrt(1 - (eps/2r)^2)), lp ball with p >= 2 under
// the matching ambient, ellipsoids under l2 (change of variables), and 0 for
// the flat-faced l1/linf balls. Absent otherwise.
std::optional<double> closed_form_modulus(const ConvexBody& k, const AmbientNorm& ambient, double eps);

ModulusEstimate modulus(const ConvexBody& k, const AmbientNorm& ambient, double eps,
                        ModulusMethod method, int samples = 2000, uint64_t seed = 0);

struct MidpointReport {
    double max_violation = 0.0;  // worst |mid|_K - (max gauge - delta(||x-y||))
    int pairs_checked = 0;
    bool passes = false;
    bool advisory = false;  // no closed form; a sampled upper bound stood in
};

MidpointReport check_midpoint_inequality(const ConvexBody& k, const AmbientNorm& ambient,
                                         const std::vector<std::pair<Vec, Vec>>& pairs,
                                         double tol = 1e-9, uint64_t seed = 0);

struct SignSumReport {
    bool hypothesis_ok = false;  // every sign combination stays in K
    double max_sign_sum_gauge = 0.0;
    double delta_sum = 0.0;  // sum of delta_K(2 ||x_n||)
    bool bound_holds = false;
    int patterns_checked = 0;
    bool advisory = false;
};

// Enumerates all 2^n sign patterns (n <= 20), verifies the hypothesis
// gauge(sum e_n x_n) <= 1, then checks sum delta_K(2||x_n||) <= 1.
SignSumReport check_sign_sum_bound(const ConvexBody& k, const AmbientNorm& ambient,
                                   const std::vector<Vec>& xs, uint64_t seed = 0);

struct ShrinkReport {
    double delta = 0.0;
    double bound = 0.0;  // 1 - delta + mesh + 1e-6
    double max_survivor_gauge = 0.0;
    int survivors = 0;
    bool vacuous = false;  // delta = 0: no shrink guaranteed
    bool passes = false;
};

// Prop-style shrink check: exact-mode survivors of one derivation of the net
// must have gauge <= 1 - delta_K(eps) + mesh + 1e-6.
ShrinkReport check_derivation_shrink(const ConvexBody& k, const PointSet& net, double eps,
                                     double mesh, const DeriveOptions& opt = {});

// Covering radius of the body by the net (how fine the net is), estimated on
// a deterministic sample of the body.
double net_mesh(const PointSet& net, const ConvexBody& k, int resolution = 96, uint64_t seed = 7);

}  // namespace swclab
