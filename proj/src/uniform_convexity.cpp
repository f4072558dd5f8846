#include "swclab/uniform_convexity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swclab {

namespace {

bool matching_lp_ambient(const LpBallBody& b, const AmbientNorm& n) {
    if (b.p == 2.0) return n.kind == NormKind::L2;
    if (b.p == kInf) return n.kind == NormKind::LINF;
    if (b.p == 1.0) return n.kind == NormKind::L1;
    return n.kind == NormKind::LP && n.p == b.p;
}

Vec random_span_direction(const ConvexBody& k, SplitMix64& rng) {
    if (const auto* h = std::get_if<AbsHullBody>(&k.v)) {
        Vec y = zeros(h->generators.dim);
        for (int i = 0; i < h->generators.size(); ++i) y = axpy(y, rng.normal(), h->generators[i]);
        return y;
    }
    Vec y(size_t(k.dim()));
    for (double& c : y) c = rng.normal();
    return y;
}

// radial scaling onto the body; empty when the direction degenerates
std::optional<Vec> to_boundary(const ConvexBody& k, const Vec& y) {
    const double g = gauge(k, y);
    if (!(g > 1e-12) || !std::isfinite(g)) return std::nullopt;
    return scale(y, 1.0 / g);
}

struct Pair {
    Vec x, y;
    double value = kInf;  // 1 - |mid|_K
};

double pair_value(const ConvexBody& k, const Vec& x, const Vec& y) {
    return 1.0 - gauge(k, scale(add(x, y), 0.5));
}

bool feasible(const ConvexBody& k, const AmbientNorm& amb, const Vec& x, const Vec& y, double eps) {
    return gauge(k, x) <= 1.0 + 1e-12 && gauge(k, y) <= 1.0 + 1e-12 &&
           norm_dist(x, y, amb) >= eps - 1e-12;
}

// Chord-shrink: keep the midpoint direction, set the half-chord to eps/2 and
// push the midpoint back out to the boundary.
std::optional<Pair> chord_move(const ConvexBody& k, const AmbientNorm& amb, const Pair& p, double eps,
                               bool perpendicular) {
    Vec m = scale(add(p.x, p.y), 0.5);
    Vec h = scale(sub(p.x, p.y), 0.5);
    if (perpendicular) {
        const double mm = dot(m, m);
        if (mm > 1e-18) h = axpy(h, -dot(h, m) / mm, m);
    }
    const double hn = norm_value(h, amb);
    if (hn <= 1e-14) return std::nullopt;
    h = scale(h, 0.5 * eps / hn);

    // largest t with max(gauge(t m + h), gauge(t m - h)) <= 1
    auto worst = [&](double t) {
        return std::max(gauge(k, axpy(h, t, m)), gauge(k, axpy(scale(h, -1.0), t, m)));
    };
    if (worst(0.0) > 1.0 + 1e-12) return std::nullopt;
    double lo = 0.0, hi = 1.0;
    while (worst(hi) <= 1.0 && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (worst(mid) <= 1.0 ? lo : hi) = mid;
    }
    Pair out;
    out.x = axpy(h, lo, m);
    out.y = axpy(scale(h, -1.0), lo, m);
    if (!feasible(k, amb, out.x, out.y, eps)) return std::nullopt;
    out.value = pair_value(k, out.x, out.y);
    return out;
}

Pair refine_pair(const ConvexBody& k, const AmbientNorm& amb, Pair p, double eps) {
    const int d = k.dim();
    double step = 0.15;
    for (int it = 0; it < 200; ++it) {
        for (bool perp : {true, false}) {
            auto c = chord_move(k, amb, p, eps, perp);
            if (c && c->value < p.value) p = *c;
        }
        const int coord = it % d;
        for (int side = 0; side < 2; ++side)
            for (double s : {step, -step}) {
                Pair q = p;
                Vec& target = side == 0 ? q.x : q.y;
                target[size_t(coord)] += s;
                const double g = gauge(k, target);
                if (std::isfinite(g) && g > 1.0) target = scale(target, 1.0 / g);
                if (!feasible(k, amb, q.x, q.y, eps)) continue;
                q.value = pair_value(k, q.x, q.y);
                if (q.value < p.value) p = q;
            }
        if ((it + 1) % 25 == 0) step *= 0.5;
    }
    return p;
}

double eval_delta(const ConvexBody& k, const AmbientNorm& amb, double eps, uint64_t seed,
                  bool& advisory) {
    if (eps <= 0.0) return 0.0;
    if (auto cf = closed_form_modulus(k, amb, eps)) return *cf;
    advisory = true;
    return modulus(k, amb, eps, ModulusMethod::SampledUpperBound, 1200, seed).value;
}

}  // namespace

std::optional<double> closed_form_modulus(const ConvexBody& k, const AmbientNorm& ambient, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("modulus: eps must be > 0");
    if (const auto* b = std::get_if<LpBallBody>(&k.v)) {
        const double diam = 2.0 * b->radius;
        if (eps > diam + 1e-12) throw std::invalid_argument("modulus: eps exceeds the body diameter");
        if (!matching_lp_ambient(*b, ambient)) return std::nullopt;
        const double u = std::min(1.0, eps / diam);
        if (b->p == 1.0 || b->p == kInf) return 0.0;
        if (b->p == 2.0) return 1.0 - std::sqrt(std::max(0.0, 1.0 - u * u));
        if (b->p > 2.0) return 1.0 - std::pow(std::max(0.0, 1.0 - std::pow(u, b->p)), 1.0 / b->p);
        return std::nullopt;  // 1 < p < 2: sampled upper bounds only
    }
    if (const auto* e = std::get_if<EllipsoidBody>(&k.v)) {
        if (ambient.kind != NormKind::L2) return std::nullopt;
        const double lmin = sym_min_eigenvalue(e->A);
        const double u = std::min(1.0, 0.5 * eps * std::sqrt(std::max(0.0, lmin)));
        return 1.0 - std::sqrt(std::max(0.0, 1.0 - u * u));
    }
    return std::nullopt;  // polytopes: no certified closed form (0 for small eps anyway)
}

ModulusEstimate modulus(const ConvexBody& k, const AmbientNorm& ambient, double eps,
                        ModulusMethod method, int samples, uint64_t seed) {
    if (!(eps > 0.0)) throw std::invalid_argument("modulus: eps must be > 0");

    ModulusEstimate est;
    est.eps = eps;
    est.method = method;
    if (method == ModulusMethod::ClosedForm) {
        auto cf = closed_form_modulus(k, ambient, eps);
        if (!cf) throw std::invalid_argument("modulus: no closed form for this body/ambient");
        est.value = *cf;
        return est;
    }

    est.samples = samples;
    est.seed = seed;
    SplitMix64 rng(seed);
    Pair best;
    int refined = 0;
    for (int s = 0; s < samples; ++s) {
        auto bx = to_boundary(k, random_span_direction(k, rng));
        auto by = to_boundary(k, random_span_direction(k, rng));
        if (!bx || !by) continue;
        if (norm_dist(*bx, *by, ambient) < eps) continue;  // rejection step
        Pair p{*bx, *by, pair_value(k, *bx, *by)};
        if (refined < 12 || p.value < best.value) {  // refine only promising pairs
            p = refine_pair(k, ambient, p, eps);
            ++refined;
        }
        if (p.value < best.value) best = p;
    }
    if (!std::isfinite(best.value)) {
        // Nothing sampled (tiny bodies / tight eps): report the trivial bound.
        best.value = 1.0;
    }
    est.value = std::clamp(best.value, 0.0, 1.0);
    return est;
}

MidpointReport check_midpoint_inequality(const ConvexBody& k, const AmbientNorm& ambient,
                                         const std::vector<std::pair<Vec, Vec>>& pairs, double tol,
                                         uint64_t seed) {
    MidpointReport rep;
    for (const auto& [x, y] : pairs) {
        if (gauge(k, x) > 1.0 + 1e-9 || gauge(k, y) > 1.0 + 1e-9)
            throw std::invalid_argument("check_midpoint_inequality: points must lie in K");
        const double mid = gauge(k, scale(add(x, y), 0.5));
        const double mx = std::max(gauge(k, x), gauge(k, y));
        const double dist = norm_dist(x, y, ambient);
        const double delta = dist > 0.0 ? eval_delta(k, ambient, dist, seed, rep.advisory) : 0.0;
        rep.max_violation = std::max(rep.max_violation, mid - (mx - delta));
        ++rep.pairs_checked;
    }
    rep.passes = rep.max_violation <= tol;
    return rep;
}

SignSumReport check_sign_sum_bound(const ConvexBody& k, const AmbientNorm& ambient,
                                   const std::vector<Vec>& xs, uint64_t seed) {
    const int n = int(xs.size());
    if (n > 20) throw BudgetError("check_sign_sum_bound: too many vectors", n, 20);
    if (n == 0) throw std::invalid_argument("check_sign_sum_bound: empty list");

    SignSumReport rep;
    rep.patterns_checked = 1 << n;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
        Vec s = zeros(k.dim());
        for (int i = 0; i < n; ++i) s = axpy(s, (mask >> i) & 1 ? 1.0 : -1.0, xs[size_t(i)]);
        rep.max_sign_sum_gauge = std::max(rep.max_sign_sum_gauge, gauge(k, s));
    }
    rep.hypothesis_ok = rep.max_sign_sum_gauge <= 1.0 + 1e-9;

    rep.delta_sum = 0.0;
    for (const Vec& x : xs) {
        const double nx = norm_value(x, ambient);
        if (nx <= 0.0) continue;
        rep.delta_sum += eval_delta(k, ambient, 2.0 * nx, seed, rep.advisory);
    }
    rep.bound_holds = rep.delta_sum <= 1.0 + 1e-9;
    return rep;
}

ShrinkReport check_derivation_shrink(const ConvexBody& k, const PointSet& net, double eps,
                                     double mesh, const DeriveOptions& opt) {
    for (int i = 0; i < net.size(); ++i)
        if (gauge(k, net[i]) > 1.0 + 1e-9)
            throw std::invalid_argument("check_derivation_shrink: net must lie in K");

    ShrinkReport rep;
    bool advisory = false;
    rep.delta = eval_delta(k, net.norm, eps, 0, advisory);
    rep.vacuous = rep.delta <= 1e-15;  // no shrink guaranteed
    rep.bound = 1.0 - rep.delta + mesh + 1e-6;

    auto step = derive_once(net, eps, opt);
    rep.survivors = int(step.survivors.size());
    for (int idx : step.survivors)
        rep.max_survivor_gauge = std::max(rep.max_survivor_gauge, gauge(k, net[idx]));
    rep.passes = rep.max_survivor_gauge <= rep.bound;
    return rep;
}

double net_mesh(const PointSet& net, const ConvexBody& k, int resolution, uint64_t seed) {
    if (net.empty()) throw std::invalid_argument("net_mesh: empty net");
    const int d = net.dim;

    auto dist_to_net = [&](const Vec& p) {
        double best = kInf;
        for (int i = 0; i < net.size(); ++i) best = std::min(best, norm_dist(p, net[i], net.norm));
        return best;
    };

    double mesh = 0.0;
    if (d == 2) {
        // polar grid over the gauge ball
        for (int a = 0; a < resolution; ++a) {
            const double ang = 6.283185307179586 * (double(a) + 0.5) / double(resolution);
            Vec u{std::cos(ang), std::sin(ang)};
            const double g = gauge(k, u);
            if (!(g > 0.0) || !std::isfinite(g)) continue;
            for (int r = 0; r <= resolution; ++r) {
                const double t = double(r) / double(resolution);
                mesh = std::max(mesh, dist_to_net(scale(u, t / g)));
            }
        }
        return mesh;
    }
    SplitMix64 rng(seed);
    const long long samples = 1LL * resolution * resolution * std::max(1, d);
    for (long long s = 0; s < samples; ++s) {
        Vec y(size_t(d), 0.0);
        for (double& c : y) c = rng.normal();
        const double g = gauge(k, y);
        if (!(g > 0.0) || !std::isfinite(g)) continue;
        const double t = std::pow(rng.uniform(), 1.0 / double(d));
        mesh = std::max(mesh, dist_to_net(scale(y, t / g)));
    }
    return mesh;
}

}  // namespace swclab
