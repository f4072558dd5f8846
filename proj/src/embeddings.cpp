#include "swclab/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace swclab {

namespace {

// Depth-first preorder labels over T_n, 0-subtree before 1-subtree; labels
// are 1-based and indexed by heap position.
std::vector<int> dfs_preorder_labels(int n) {
    const int total = (1 << (n + 1)) - 1;
    std::vector<int> label(size_t(total), 0);
    int next = 0;
    std::function<void(int, int)> visit = [&](int idx, int depth) {
        label[size_t(idx)] = ++next;
        if (depth == n) return;
        visit(2 * idx + 1, depth + 1);
        visit(2 * idx + 2, depth + 1);
    };
    visit(0, 0);
    return label;
}

std::vector<int> root_path(int idx) {
    std::vector<int> path{idx};
    while (idx > 0) {
        idx = (idx - 1) / 2;
        path.push_back(idx);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::set<int> support_of(const JamesSystem& sys) {
    std::set<int> sup;
    for (const Vec& p : sys.points)
        for (size_t r = 0; r < p.size(); ++r)
            if (p[r] != 0.0) sup.insert(int(r));
    return sup;
}

}  // namespace

DistortionReport distortion_report(const Embedding& e, int jobs) {
    const int n = e.graph.vertex_count();
    if (n < 2) throw std::invalid_argument("distortion_report: need at least 2 vertices");
    if (int(e.map.size()) != n) throw std::invalid_argument("distortion_report: map/vertex mismatch");

    struct RowStat {
        double lip = 0.0, sep = kInf;
        bool inf = false;
        PairWitness lw, sw;
    };
    std::vector<RowStat> rows(static_cast<size_t>(n));
    parallel_for(n, jobs, [&](int i) {
        RowStat& st = rows[size_t(i)];
        for (int j = i + 1; j < n; ++j) {
            const double d = double(e.graph.dist[size_t(i)][size_t(j)]);
            if (d <= 0.0) continue;
            const Vec diff = sub(e.map[size_t(i)], e.map[size_t(j)]);
            const double g = gauge(e.body, diff) / d;
            const double nv = norm_value(diff, e.ambient) / d;
            if (!std::isfinite(g)) {
                if (!st.inf) {
                    st.inf = true;
                    st.lw = {i, j, kInf};
                }
            } else if (g > st.lip) {
                st.lip = g;
                st.lw = {i, j, g};
            }
            if (nv < st.sep) {
                st.sep = nv;
                st.sw = {i, j, nv};
            }
        }
    });

    DistortionReport rep;
    rep.sep_norm = kInf;
    for (const auto& st : rows) {
        if (st.inf && !rep.lip_infinite) {
            rep.lip_infinite = true;
            rep.lip_witness = st.lw;
        }
        if (!rep.lip_infinite && st.lip > rep.lip_gauge) {
            rep.lip_gauge = st.lip;
            rep.lip_witness = st.lw;
        }
        if (st.sep < rep.sep_norm) {
            rep.sep_norm = st.sep;
            rep.sep_witness = st.sw;
        }
    }
    if (rep.lip_infinite) rep.lip_gauge = kInf;
    rep.ave_range_max_gauge = rep.lip_gauge;
    return rep;
}

Embedding bourgain_embedding(const JamesSystem& sys, int n) {
    const int need = (1 << (n + 1)) - 1;
    if (int(sys.points.size()) < need)
        throw std::invalid_argument("bourgain_embedding: system has too few points");
    const int dim = int(sys.points.front().size());

    MetricGraph g = binary_tree(n);
    const auto labels = dfs_preorder_labels(n);

    std::vector<Vec> map(size_t(g.vertex_count()), zeros(dim));
    for (int idx = 0; idx < g.vertex_count(); ++idx) {
        Vec f = zeros(dim);
        for (int t : root_path(idx)) f = add(f, sys.points[size_t(labels[size_t(t)] - 1)]);
        map[size_t(idx)] = std::move(f);
    }

    std::vector<Vec> gens(sys.points.begin(), sys.points.begin() + need);
    return Embedding{std::move(g), std::move(map), sys.ambient,
                     ConvexBody::abs_hull(PointSet(dim, sys.ambient, std::move(gens)))};
}

Embedding baudier_embedding(const std::vector<JamesSystem>& blocks, int depth) {
    if (depth < 1) throw std::invalid_argument("baudier_embedding: depth must be >= 1");
    if (blocks.empty()) throw std::invalid_argument("baudier_embedding: no block systems");
    const int dim = int(blocks.front().points.front().size());
    const AmbientNorm amb = blocks.front().ambient;
    for (const auto& b : blocks) {
        if (b.points.empty() || int(b.points.front().size()) != dim)
            throw std::invalid_argument("baudier_embedding: blocks must share one ambient space");
        if (!(b.ambient == amb)) throw std::invalid_argument("baudier_embedding: ambient norm mismatch");
    }
    for (size_t a = 0; a < blocks.size(); ++a) {
        const auto sa = support_of(blocks[a]);
        for (size_t b = a + 1; b < blocks.size(); ++b)
            for (int r : support_of(blocks[b]))
                if (sa.count(r))
                    throw std::invalid_argument("baudier_embedding: overlapping block supports");
    }

    // Region of depth l: the smallest n with 2^{n+1} >= l, so lambda < 1 only
    // ever pulls in block n+1.
    auto region = [](int l) {
        int n = 0;
        while ((1 << (n + 1)) < l) ++n;
        return n;
    };
    int max_block = 0;
    for (int l = 1; l <= depth; ++l) {
        const int n = region(l);
        const double lambda = double((1 << (n + 1)) - l) / double(1 << n);
        max_block = std::max(max_block, lambda < 1.0 ? n + 1 : n);
    }
    if (int(blocks.size()) <= max_block)
        throw std::invalid_argument("baudier_embedding: insufficient blocks for this depth");
    for (int n = 0; n <= max_block; ++n) {
        const int tree_h = std::min(1 << (n + 1), depth);
        (void)tree_h;
        const int need = (1 << ((1 << (n + 1)) + 1)) - 1;
        if (int(blocks[size_t(n)].points.size()) < need)
            throw std::invalid_argument("baudier_embedding: block " + std::to_string(n) +
                                        " is too small for T_" + std::to_string(1 << (n + 1)));
    }

    MetricGraph g = binary_tree(depth);

    // Root-free summed map of block n, evaluated on a node of T_depth via its
    // label inside T_{2^{n+1}}.
    std::vector<std::vector<int>> block_labels(size_t(max_block) + 1);
    for (int n = 0; n <= max_block; ++n) block_labels[size_t(n)] = dfs_preorder_labels(1 << (n + 1));
    auto f_block = [&](int n, int idx) {
        Vec f = zeros(dim);
        for (int t : root_path(idx)) {
            if (t == 0) continue;  // f_n(root) = 0
            f = add(f, blocks[size_t(n)].points[size_t(block_labels[size_t(n)][size_t(t)] - 1)]);
        }
        return f;
    };

    std::vector<Vec> map(size_t(g.vertex_count()), zeros(dim));
    for (int idx = 1; idx < g.vertex_count(); ++idx) {
        const int l = tree_vertex_node(idx).depth();
        const int n = region(l);
        const double lambda = double((1 << (n + 1)) - l) / double(1 << n);
        Vec f = scale(f_block(n, idx), lambda);
        if (lambda < 1.0) f = axpy(f, 1.0 - lambda, f_block(n + 1, idx));
        map[size_t(idx)] = std::move(f);
    }

    std::vector<Vec> gens;
    for (const auto& b : blocks) gens.insert(gens.end(), b.points.begin(), b.points.end());
    return Embedding{std::move(g), std::move(map), amb,
                     ConvexBody::abs_hull(PointSet(dim, amb, std::move(gens)))};
}

std::pair<Embedding, PruneTrace> kloeckner_prune(const Embedding& e, double theta,
                                                 const std::function<double(double)>& delta_of,
                                                 int jobs) {
    if (e.graph.family != MetricGraph::Family::Tree)
        throw std::invalid_argument("kloeckner_prune: embedding must be over a dyadic tree");
    const int n = e.graph.level;
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("kloeckner_prune: tree height must be even and >= 2");

    const DistortionReport before = distortion_report(e, jobs);
    if (!(before.sep_norm >= theta - 1e-12))
        throw std::invalid_argument("kloeckner_prune: embedding is not theta-separated");
    if (before.lip_infinite) throw std::invalid_argument("kloeckner_prune: infinite gauge Lipschitz constant");

    PruneTrace trace;
    trace.theta = theta;
    trace.rounds.push_back({n, before.lip_gauge, before.sep_norm});
    trace.edge_gauge_bound = 2.0 * (before.lip_gauge - delta_of(theta));

    MetricGraph half = binary_tree(n / 2);
    std::vector<int> nu(size_t(half.vertex_count()), -1);  // new heap idx -> old heap idx
    nu[0] = 0;
    std::vector<Vec> map(size_t(half.vertex_count()));
    map[0] = scale(e.map[0], 0.5);

    for (int s = 0; s < half.vertex_count(); ++s) {
        const int child0 = 2 * s + 1;
        if (child0 >= half.vertex_count()) break;
        const int old_s = nu[size_t(s)];
        for (int route = 0; route < 2; ++route) {
            const int old_child = 2 * old_s + 1 + route;
            int best_g = -1;
            double best_val = kInf;
            for (int gc = 0; gc < 2; ++gc) {
                const int cand = 2 * old_child + 1 + gc;
                const double v = gauge(e.body, sub(e.map[size_t(old_s)], e.map[size_t(cand)]));
                if (v < best_val - 1e-15) {
                    best_val = v;
                    best_g = cand;
                }
            }
            const int ns = child0 + route;
            nu[size_t(ns)] = best_g;
            map[size_t(ns)] = scale(e.map[size_t(best_g)], 0.5);
            trace.selections.push_back({e.graph.labels[size_t(old_s)], e.graph.labels[size_t(old_child)],
                                        e.graph.labels[size_t(best_g)]});
            trace.max_kept_edge_gauge = std::max(trace.max_kept_edge_gauge, best_val);
        }
    }

    Embedding pruned{std::move(half), std::move(map), e.ambient, e.body};
    const DistortionReport after = distortion_report(pruned, jobs);
    trace.rounds.push_back({n / 2, after.lip_gauge, after.sep_norm});
    return {std::move(pruned), std::move(trace)};
}

}  // namespace swclab
