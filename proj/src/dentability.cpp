#include "swclab/dentability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>

namespace swclab {

namespace {

constexpr double kGapTol = 1e-9;  // strict-gap threshold for sweep prefixes

PointSet subset_ps(const PointSet& k, const std::vector<int>& idx) {
    PointSet out;
    out.dim = k.dim;
    out.norm = k.norm;
    out.points.reserve(idx.size());
    for (int i : idx) out.points.push_back(k[i]);
    return out;
}

double slice_diam(const std::vector<int>& slice, const std::function<double(int, int)>& dis) {
    double d = 0.0;
    for (size_t a = 0; a < slice.size(); ++a)
        for (size_t b = a + 1; b < slice.size(); ++b) d = std::max(d, dis(slice[a], slice[b]));
    return d;
}

// Canonical search for a separable slice of dissimilarity-diameter <= eps
// containing active[pos]. Candidates are the cliques of the eps-dissimilarity
// graph inside the eps-window of the point, visited in lexicographic DFS
// order, so singleton slices are tried first.
std::optional<SliceWitness> find_slice_for_point(const PointSet& k, const std::vector<int>& active,
                                                 int pos, const std::function<double(int, int)>& dis,
                                                 double eps, std::atomic<long long>& spent,
                                                 long long cap) {
    const int n = int(active.size());
    const int xi = active[size_t(pos)];

    std::vector<int> window;  // positions in `active`, excluding pos
    std::vector<int> faraway;
    for (int q = 0; q < n; ++q) {
        if (q == pos) continue;
        (dis(xi, active[size_t(q)]) <= eps ? window : faraway).push_back(q);
    }

    // A slice containing x must avoid every far point, so x has to be strictly
    // separable from them on its own; if not, x survives without enumeration.
    if (!faraway.empty()) {
        std::vector<int> far_idx;
        far_idx.reserve(faraway.size());
        for (int q : faraway) far_idx.push_back(active[size_t(q)]);
        PointSet sx = subset_ps(k, {xi});
        PointSet tf = subset_ps(k, far_idx);
        if (!separability(sx, tf)) return std::nullopt;
    }

    const int w = int(window.size());
    std::vector<char> adj(size_t(w) * size_t(w), 0);
    for (int a = 0; a < w; ++a)
        for (int b = a + 1; b < w; ++b) {
            const char ok = dis(active[size_t(window[size_t(a)])], active[size_t(window[size_t(b)])]) <= eps;
            adj[size_t(a) * w + b] = ok;
            adj[size_t(b) * w + a] = ok;
        }

    std::vector<int> chosen;  // window positions
    std::optional<SliceWitness> found;

    std::function<bool()> test_current = [&]() {
        if (spent.fetch_add(1) + 1 > cap)
            throw BudgetError("derivation: combinatorial budget exceeded", spent.load(), cap);
        std::vector<int> slice_idx{xi};
        for (int c : chosen) slice_idx.push_back(active[size_t(window[size_t(c)])]);
        std::sort(slice_idx.begin(), slice_idx.end());
        std::vector<int> rest;
        for (int q = 0; q < n; ++q) {
            const int oi = active[size_t(q)];
            if (!std::binary_search(slice_idx.begin(), slice_idx.end(), oi)) rest.push_back(oi);
        }
        PointSet sp = subset_ps(k, slice_idx);
        auto h = rest.empty() ? separability(sp, PointSet(k.dim, k.norm, {}))
                              : separability(sp, subset_ps(k, rest));
        if (!h) return false;

        // re-verify before recording the removal
        std::vector<Vec> level_pts;
        level_pts.reserve(active.size());
        for (int oi : active) level_pts.push_back(k[oi]);
        std::vector<int> sel_pos;
        for (size_t q = 0; q < active.size(); ++q)
            if (std::binary_search(slice_idx.begin(), slice_idx.end(), active[q])) sel_pos.push_back(int(q));
        if (!halfspace_selects(*h, level_pts, sel_pos)) return false;

        SliceWitness wtn;
        wtn.removed_index = xi;
        wtn.removed_point = k[xi];
        wtn.halfspace = *h;
        wtn.slice = slice_idx;
        wtn.slice_diameter = slice_diam(slice_idx, dis);
        found = std::move(wtn);
        return true;
    };

    std::function<bool(int)> dfs = [&](int from) -> bool {
        if (test_current()) return true;
        for (int c = from; c < w; ++c) {
            bool compatible = true;
            for (int s : chosen)
                if (!adj[size_t(s) * w + c]) {
                    compatible = false;
                    break;
                }
            if (!compatible) continue;
            chosen.push_back(c);
            if (dfs(c + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };

    dfs(0);
    return found;
}

std::vector<Vec> sweep_directions_for(const PointSet& k, const std::vector<int>& active,
                                      const DeriveOptions& opt) {
    std::vector<Vec> dirs;
    auto push_unique = [&](Vec v) {
        const double nv = norm_value(v, AmbientNorm::l2());
        if (nv <= 1e-14) return;
        for (double& x : v) x /= nv;
        for (const Vec& u : dirs) {
            double dmax = 0.0;
            for (size_t r = 0; r < u.size(); ++r) dmax = std::max(dmax, std::fabs(u[r] - v[r]));
            if (dmax <= 1e-12) return;
        }
        dirs.push_back(std::move(v));
    };

    for (const Vec& v : opt.directions) push_unique(v);
    if (!opt.directions.empty()) return dirs;

    if (opt.sweep_coordinate_directions) {
        for (int r = 0; r < k.dim; ++r) {
            Vec e = zeros(k.dim);
            e[size_t(r)] = 1.0;
            push_unique(e);
            e[size_t(r)] = -1.0;
            push_unique(e);
        }
    }
    if (opt.sweep_difference_directions) {
        for (size_t a = 0; a < active.size(); ++a)
            for (size_t b = a + 1; b < active.size(); ++b) {
                Vec d = sub(k[active[a]], k[active[b]]);
                push_unique(d);
                push_unique(scale(d, -1.0));
            }
    }
    return dirs;
}

// Prefix slices along one direction: every maximal group above a strict value
// gap is a verified slice; small-diameter ones remove their members.
std::vector<SliceWitness> sweep_one_direction(const PointSet& k, const std::vector<int>& active,
                                              const Vec& dir,
                                              const std::function<double(int, int)>& dis, double eps) {
    const int n = int(active.size());
    std::vector<std::pair<double, int>> vals(static_cast<size_t>(n));  // (value, original index)
    for (int q = 0; q < n; ++q) vals[size_t(q)] = {dot(dir, k[active[size_t(q)]]), active[size_t(q)]};
    std::stable_sort(vals.begin(), vals.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<Vec> level_pts;
    level_pts.reserve(active.size());
    for (int oi : active) level_pts.push_back(k[oi]);

    std::vector<SliceWitness> out;
    std::vector<int> prefix;
    int q = 0;
    while (q < n) {
        int g = q;
        while (g + 1 < n && vals[size_t(g)].first - vals[size_t(g + 1)].first <= kGapTol) ++g;
        for (int t = q; t <= g; ++t) prefix.push_back(vals[size_t(t)].second);
        if (g + 1 >= n) break;  // full set needs no defining gap; exact mode covers it
        const double gap_mid = 0.5 * (vals[size_t(g)].first + vals[size_t(g + 1)].first);

        if (slice_diam(prefix, dis) > eps) break;  // diameters only grow with the prefix

        HalfSpace h{dir, gap_mid};
        std::vector<int> sorted_slice = prefix;
        std::sort(sorted_slice.begin(), sorted_slice.end());
        std::vector<int> sel_pos;
        for (size_t p = 0; p < active.size(); ++p)
            if (std::binary_search(sorted_slice.begin(), sorted_slice.end(), active[p]))
                sel_pos.push_back(int(p));
        if (halfspace_selects(h, level_pts, sel_pos)) {
            for (int oi : sorted_slice) {
                SliceWitness wtn;
                wtn.removed_index = oi;
                wtn.removed_point = k[oi];
                wtn.halfspace = h;
                wtn.slice = sorted_slice;
                wtn.slice_diameter = slice_diam(sorted_slice, dis);
                out.push_back(std::move(wtn));
            }
        }
        q = g + 1;
    }
    return out;
}

DeriveStep derive_step(const PointSet& k, const std::vector<int>& active,
                       const std::function<double(int, int)>& dis, double eps,
                       const DeriveOptions& opt) {
    DeriveStep step;
    const int n = int(active.size());
    if (n == 0) return step;

    if (opt.mode == DeriveMode::Exact) {
        std::atomic<long long> spent{0};
        std::vector<std::optional<SliceWitness>> res(static_cast<size_t>(n));
        parallel_for(n, opt.jobs, [&](int pos) {
            res[size_t(pos)] = find_slice_for_point(k, active, pos, dis, eps, spent, opt.budget_cap);
        });
        step.candidates_tested = spent.load();
        for (int pos = 0; pos < n; ++pos) {
            if (res[size_t(pos)])
                step.witnesses.push_back(std::move(*res[size_t(pos)]));
            else
                step.survivors.push_back(active[size_t(pos)]);
        }
        return step;
    }

    // sweep: a level whose whole diameter is <= eps is a slice of itself
    if (slice_diam(active, dis) <= eps) {
        Vec c = zeros(k.dim);
        c[0] = 1.0;
        double lo = kInf;
        for (int oi : active) lo = std::min(lo, dot(c, k[oi]));
        HalfSpace h{c, lo - 1.0};
        std::vector<int> sorted_slice = active;
        std::sort(sorted_slice.begin(), sorted_slice.end());
        for (int oi : sorted_slice) {
            SliceWitness wtn;
            wtn.removed_index = oi;
            wtn.removed_point = k[oi];
            wtn.halfspace = h;
            wtn.slice = sorted_slice;
            wtn.slice_diameter = slice_diam(sorted_slice, dis);
            step.witnesses.push_back(std::move(wtn));
        }
        step.candidates_tested = 1;
        return step;
    }

    const auto dirs = sweep_directions_for(k, active, opt);
    std::vector<std::vector<SliceWitness>> per_dir(dirs.size());
    parallel_for(int(dirs.size()), opt.jobs, [&](int di) {
        per_dir[size_t(di)] = sweep_one_direction(k, active, dirs[size_t(di)], dis, eps);
    });
    std::map<int, SliceWitness> first_witness;  // original index -> first removal
    for (auto& lst : per_dir)
        for (auto& w : lst) first_witness.emplace(w.removed_index, std::move(w));
    for (int oi : active) {
        auto it = first_witness.find(oi);
        if (it == first_witness.end())
            step.survivors.push_back(oi);
        else
            step.witnesses.push_back(std::move(it->second));
    }
    step.candidates_tested = static_cast<long long>(dirs.size());
    return step;
}

std::function<double(int, int)> norm_dissimilarity(const PointSet& k) {
    return [&k](int i, int j) { return norm_dist(k[i], k[j], k.norm); };
}

void require_distinct(const PointSet& k, const char* who) {
    Config cfg;
    for (int i = 0; i < k.size(); ++i)
        for (int j = i + 1; j < k.size(); ++j)
            if (norm_dist(k[i], k[j], k.norm) <= cfg.dedup_tol)
                throw std::invalid_argument(std::string(who) + ": duplicate points; deduplicate first");
}

DerivationTrace run_trace(const PointSet& k, const std::function<double(int, int)>& dis, double eps,
                          int max_steps, const DeriveOptions& opt) {
    if (!(eps > 0.0)) throw std::invalid_argument("derivation: eps must be > 0");
    if (max_steps < 1) throw std::invalid_argument("derivation: max_steps must be >= 1");
    if (k.empty()) throw std::invalid_argument("derivation: empty point set");
    require_distinct(k, "derivation");

    DerivationTrace tr;
    tr.eps = eps;
    std::vector<int> all(size_t(k.size()));
    for (int i = 0; i < k.size(); ++i) all[size_t(i)] = i;
    tr.levels.push_back(all);

    for (int s = 1; s <= max_steps; ++s) {
        const std::vector<int> active = tr.levels.back();  // copy: push_back below reallocates
        DeriveStep step = derive_step(k, active, dis, eps, opt);
        tr.witnesses.push_back(std::move(step.witnesses));
        tr.levels.push_back(step.survivors);
        if (step.survivors.empty()) {
            tr.index = s;
            return tr;
        }
        if (step.survivors.size() == active.size()) {
            tr.stagnated = true;  // not finitely dentable at this scale/mode
            return tr;
        }
    }
    tr.truncated = true;
    return tr;
}

}  // namespace

DeriveStep derive_once_metric(const PointSet& k, const std::vector<int>& active,
                              const std::function<double(int, int)>& dissimilarity, double eps,
                              const DeriveOptions& opt) {
    if (!(eps > 0.0)) throw std::invalid_argument("derive_once: eps must be > 0");
    return derive_step(k, active, dissimilarity, eps, opt);
}

DeriveStep derive_once(const PointSet& k, double eps, const DeriveOptions& opt) {
    if (k.empty()) throw std::invalid_argument("derive_once: empty point set");
    require_distinct(k, "derive_once");
    std::vector<int> all(size_t(k.size()));
    for (int i = 0; i < k.size(); ++i) all[size_t(i)] = i;
    return derive_once_metric(k, all, norm_dissimilarity(k), eps, opt);
}

DerivationTrace dz_index(const PointSet& k, double eps, int max_steps, const DeriveOptions& opt) {
    return run_trace(k, norm_dissimilarity(k), eps, max_steps, opt);
}

DerivationTrace derive_function(const PointSet& k, const std::vector<double>& f, double eps,
                                int max_steps, const DeriveOptions& opt) {
    if (int(f.size()) != k.size())
        throw std::invalid_argument("derive_function: f must be defined on all of K");
    auto dis = [&f](int i, int j) { return std::fabs(f[size_t(i)] - f[size_t(j)]); };
    return run_trace(k, dis, eps, max_steps, opt);
}

std::vector<double> distance_to_set_function(const PointSet& k, const PointSet& f) {
    if (f.empty()) throw std::invalid_argument("distance_to_set_function: F must be nonempty");
    if (f.dim != k.dim) throw std::invalid_argument("distance_to_set_function: dimension mismatch");
    std::vector<double> vals(size_t(k.size()), kInf);
    for (int i = 0; i < k.size(); ++i)
        for (int j = 0; j < f.size(); ++j)
            vals[size_t(i)] = std::min(vals[size_t(i)], norm_dist(k[i], f[j], k.norm));
    // 1-Lipschitz by the triangle inequality; check all pairs anyway.
    for (int i = 0; i < k.size(); ++i)
        for (int j = i + 1; j < k.size(); ++j) {
            const double lhs = std::fabs(vals[size_t(i)] - vals[size_t(j)]);
            const double rhs = norm_dist(k[i], k[j], k.norm);
            if (lhs > rhs + 1e-9)
                throw std::logic_error("distance_to_set_function: Lipschitz check failed");
        }
    return vals;
}

bool verify_witness(const PointSet& k, const std::vector<int>& level, const SliceWitness& w,
                    const std::function<double(int, int)>& dissimilarity, double eps) {
    if (!std::binary_search(w.slice.begin(), w.slice.end(), w.removed_index)) return false;
    if (slice_diam(w.slice, dissimilarity) > eps) return false;
    std::vector<Vec> pts;
    pts.reserve(level.size());
    for (int oi : level) pts.push_back(k[oi]);
    std::vector<int> sel;
    for (size_t p = 0; p < level.size(); ++p)
        if (std::binary_search(w.slice.begin(), w.slice.end(), level[p])) sel.push_back(int(p));
    if (int(sel.size()) != int(w.slice.size())) return false;
    return halfspace_selects(w.halfspace, pts, sel);
}

}  // namespace swclab
