#pragma once

// Tree embeddings and their two-norm distortion statistics: the summed-system
// map with a depth-first labelling, the barycentric glued map over
// block-diagonal systems, and the fork-pruning self-improvement round that a
// uniformly convex gauge forces on separated tree embeddings.

#include <functional>

#include "swclab/graphs.hpp"
#include "swclab/james.hpp"

namespace swclab {

struct Embedding {
    MetricGraph graph;
    std::vector<Vec> map;  // aligned with graph vertices
    AmbientNorm ambient;
    ConvexBody body;
};

struct PairWitness {
    int i = -1, j = -1;
    double value = 0.0;
};

struct DistortionReport {
    double lip_gauge = 0.0;      // max over pairs of gauge(f(s)-f(t)) / d(s,t)
    double sep_norm = 0.0;       // min over pairs of ||f(s)-f(t)|| / d(s,t)
    double ave_range_max_gauge = 0.0;  // = lip_gauge: the gauge bound on ave(f)
    bool lip_infinite = false;   // some difference left the body's span
    PairWitness lip_witness, sep_witness;
};

DistortionReport distortion_report(const Embedding& e, int jobs = 1);

// f(s) = sum of x_{sigma(t)} over t on the root path, sigma the depth-first
// preorder that visits the 0-subtree first; the body is the absolute hull of
// the system points.
Embedding bourgain_embedding(const JamesSystem& sys, int n);

// Barycentric gluing over block systems with pairwise-disjoint coordinate
// supports: on 2^n <= |s| <= 2^{n+1}, f = lambda f_n + (1-lambda) f_{n+1}
// with lambda = (2^{n+1} - |s|) / 2^n, each f_n a root-free summed map.
Embedding baudier_embedding(const std::vector<JamesSystem>& blocks, int depth);

struct PruneRound {
    int height = 0;
    double lip_gauge = 0.0;
    double sep_norm = 0.0;
};

struct PruneSelection {
    std::string parent, route, grandchild;  // labels in the pruned tree's source
};

struct PruneTrace {
    std::vector<PruneRound> rounds;  // before and after, heights halving
    std::vector<PruneSelection> selections;
    double edge_gauge_bound = 0.0;    // 2 (C - delta(theta))
    double max_kept_edge_gauge = 0.0; // measured over the selected grandchild edges
    double theta = 0.0;
};

// One pruning round: keep the even-depth nodes, route through both children,
// select per route the grandchild of smallest gauge distance, and halve the
// map so the result is an embedding of T_{N/2} that is still theta-separated.
std::pair<Embedding, PruneTrace> kloeckner_prune(const Embedding& e, double theta,
                                                 const std::function<double(double)>& delta_of,
                                                 int jobs = 1);

}  // namespace swclab
