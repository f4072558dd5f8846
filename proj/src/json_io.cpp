#include "swclab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace swclab::io {

std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Json num(double v) { return Json(fmt_num(v)); }

double to_double(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        if (s == "nan") return std::nan("");
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("not a numeric string: " + s);
        return v;
    }
    throw std::invalid_argument("expected a number or numeric string");
}

Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of numbers");
    Vec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(to_double(x));
    return v;
}

Json norm_to_json(const AmbientNorm& n) {
    switch (n.kind) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::LINF: return "linf";
        case NormKind::LP: return Json{{"lp", num(n.p)}};
    }
    return "l2";
}

AmbientNorm norm_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "l1") return AmbientNorm::l1();
        if (s == "l2") return AmbientNorm::l2();
        if (s == "linf") return AmbientNorm::linf();
        throw std::invalid_argument("unknown norm: " + s);
    }
    if (j.is_object() && j.contains("lp")) return AmbientNorm::lp(to_double(j.at("lp")));
    throw std::invalid_argument("unknown norm encoding");
}

Json pointset_to_json(const PointSet& ps) {
    Json j;
    j["dim"] = ps.dim;
    j["norm"] = norm_to_json(ps.norm);
    Json pts = Json::array();
    for (const Vec& p : ps.points) pts.push_back(vec_to_json(p));
    j["points"] = std::move(pts);
    return j;
}

PointSet pointset_from_json(const Json& j) {
    const int dim = j.at("dim").get<int>();
    const AmbientNorm n = norm_from_json(j.at("norm"));
    std::vector<Vec> pts;
    for (const auto& p : j.at("points")) pts.push_back(vec_from_json(p));
    return PointSet(dim, n, std::move(pts));
}

Json body_to_json(const ConvexBody& k) {
    Json j;
    if (const auto* h = std::get_if<AbsHullBody>(&k.v)) {
        j["abs_hull"] = pointset_to_json(h->generators);
    } else if (const auto* b = std::get_if<LpBallBody>(&k.v)) {
        Json inner;
        inner["dim"] = b->dim;
        inner["p"] = b->p == kInf ? Json("inf") : num(b->p);
        inner["r"] = num(b->radius);
        j["lp_ball"] = std::move(inner);
    } else {
        const auto& e = std::get<EllipsoidBody>(k.v);
        Json rows = Json::array();
        for (const Vec& r : e.A) rows.push_back(vec_to_json(r));
        j["ellipsoid"] = Json{{"matrix", std::move(rows)}};
    }
    return j;
}

ConvexBody body_from_json(const Json& j) {
    if (j.contains("abs_hull")) return ConvexBody::abs_hull(pointset_from_json(j.at("abs_hull")));
    if (j.contains("lp_ball")) {
        const auto& b = j.at("lp_ball");
        double p = b.at("p").is_string() && b.at("p").get<std::string>() == "inf" ? kInf : to_double(b.at("p"));
        return ConvexBody::lp_ball(b.at("dim").get<int>(), p, to_double(b.at("r")));
    }
    if (j.contains("ellipsoid")) {
        std::vector<Vec> rows;
        for (const auto& r : j.at("ellipsoid").at("matrix")) rows.push_back(vec_from_json(r));
        return ConvexBody::ellipsoid(std::move(rows));
    }
    throw std::invalid_argument("unknown convex body encoding");
}

Json halfspace_to_json(const HalfSpace& h) {
    Json j;
    j["functional"] = vec_to_json(h.c);
    j["alpha"] = num(h.alpha);
    return j;
}

Json trace_to_json(const DerivationTrace& t) {
    Json j;
    j["eps"] = num(t.eps);
    j["index"] = t.index ? Json(*t.index) : Json(nullptr);
    j["stagnated"] = t.stagnated;
    j["truncated"] = t.truncated;
    Json levels = Json::array();
    for (const auto& lvl : t.levels) levels.push_back(lvl);
    j["levels"] = std::move(levels);
    Json wit = Json::array();
    for (const auto& lvl : t.witnesses) {
        Json one = Json::array();
        for (const auto& w : lvl) {
            Json wj;
            wj["removed"] = w.removed_index;
            wj["functional"] = vec_to_json(w.halfspace.c);
            wj["alpha"] = num(w.halfspace.alpha);
            wj["slice"] = w.slice;
            wj["diameter"] = num(w.slice_diameter);
            one.push_back(std::move(wj));
        }
        wit.push_back(std::move(one));
    }
    j["witnesses"] = std::move(wit);
    return j;
}

Json certificate_to_json(const SeparationCertificate& c) {
    Json j;
    j["norm"] = norm_to_json(c.norm);
    j["theta"] = num(c.theta);
    Json pts = Json::array();
    for (const Vec& p : c.points) pts.push_back(vec_to_json(p));
    j["points"] = std::move(pts);
    Json splits = Json::array();
    for (const auto& s : c.per_split) {
        Json sj;
        sj["k"] = s.k;
        sj["distance"] = num(s.distance);
        sj["witness_a"] = vec_to_json(s.witness_a);
        sj["witness_b"] = vec_to_json(s.witness_b);
        sj["converged"] = s.converged;
        sj["gap"] = num(s.gap);
        splits.push_back(std::move(sj));
    }
    j["splits"] = std::move(splits);
    return j;
}

Json james_to_json(const JamesSystem& s) {
    Json j;
    j["theta"] = num(s.theta);
    j["norm"] = norm_to_json(s.ambient);
    Json pts = Json::array();
    for (const Vec& p : s.points) pts.push_back(vec_to_json(p));
    j["points"] = std::move(pts);
    Json fns = Json::array();
    for (const Vec& f : s.functionals) fns.push_back(vec_to_json(f));
    j["functionals"] = std::move(fns);
    j["dual_norm_bound"] = num(s.dual_norm_bound);
    return j;
}

JamesSystem james_from_json(const Json& j) {
    JamesSystem s;
    s.theta = to_double(j.at("theta"));
    s.ambient = norm_from_json(j.at("norm"));
    for (const auto& p : j.at("points")) s.points.push_back(vec_from_json(p));
    if (j.contains("functionals"))
        for (const auto& f : j.at("functionals")) s.functionals.push_back(vec_from_json(f));
    if (j.contains("dual_norm_bound")) s.dual_norm_bound = to_double(j.at("dual_norm_bound"));
    return s;
}

Json cube_to_json(const CubeCertificate& c) {
    auto split_json = [](const CubeSplit& s) {
        Json sj;
        sj["prefix"] = s.prefix;
        sj["k"] = s.k;
        sj["distance"] = num(s.distance);
        return sj;
    };
    Json j;
    j["n"] = c.n;
    j["theta"] = num(c.theta);
    j["certified"] = c.certified;
    j["worst"] = c.worst ? split_json(*c.worst) : Json(nullptr);
    Json splits = Json::array();
    for (const auto& s : c.splits) splits.push_back(split_json(s));
    j["splits"] = std::move(splits);
    return j;
}

Json graph_to_json(const MetricGraph& g, bool include_structure) {
    Json j;
    j["family"] = g.family_name();
    j["level"] = g.level;
    if (include_structure) {
        j["vertices"] = g.labels;
        Json es = Json::array();
        for (auto [u, v] : g.edges) es.push_back(Json::array({u, v}));
        j["edges"] = std::move(es);
    } else {
        j["vertices"] = g.vertex_count();
        j["edges"] = g.edge_count();
    }
    return j;
}

Json embedding_to_json(const Embedding& e) {
    Json j;
    j["graph"] = graph_to_json(e.graph, true);
    Json m = Json::object();
    for (int i = 0; i < e.graph.vertex_count(); ++i) m[e.graph.labels[size_t(i)]] = vec_to_json(e.map[size_t(i)]);
    j["map"] = std::move(m);
    j["norm"] = norm_to_json(e.ambient);
    j["body"] = body_to_json(e.body);
    return j;
}

Embedding embedding_from_json(const Json& j) {
    const auto& gj = j.at("graph");
    const std::string fam = gj.at("family").get<std::string>();
    const int level = gj.at("level").get<int>();
    MetricGraph g;
    if (fam == "tree") g = binary_tree(level);
    else if (fam == "diamond") g = diamond(level);
    else if (fam == "laakso") g = laakso(level);
    else throw std::invalid_argument("embedding: unknown graph family " + fam);

    const auto& mj = j.at("map");
    std::vector<Vec> map;
    map.reserve(size_t(g.vertex_count()));
    for (const auto& label : g.labels) {
        if (!mj.contains(label)) throw std::invalid_argument("embedding: vertex '" + label + "' is unmapped");
        map.push_back(vec_from_json(mj.at(label)));
    }
    return Embedding{std::move(g), std::move(map), norm_from_json(j.at("norm")), body_from_json(j.at("body"))};
}

Json family_to_json(const SetFamily& f) {
    Json j;
    j["N"] = f.universe;
    j["sets"] = f.sets;
    return j;
}

SetFamily family_from_json(const Json& j) {
    SetFamily f;
    f.universe = j.at("N").get<int>();
    for (const auto& s : j.at("sets")) {
        std::vector<int> one;
        for (const auto& e : s) one.push_back(e.get<int>());
        f.sets.push_back(std::move(one));
    }
    return f;
}

Json distortion_to_json(const DistortionReport& r) {
    auto wit = [](const PairWitness& w) {
        Json j;
        j["i"] = w.i;
        j["j"] = w.j;
        j["value"] = num(w.value);
        return j;
    };
    Json j;
    j["lip_gauge"] = num(r.lip_gauge);
    j["sep_norm"] = num(r.sep_norm);
    j["ave_range_max_gauge"] = num(r.ave_range_max_gauge);
    j["lip_infinite"] = r.lip_infinite;
    j["lip_witness"] = wit(r.lip_witness);
    j["sep_witness"] = wit(r.sep_witness);
    return j;
}

Json prune_trace_to_json(const PruneTrace& t) {
    Json j;
    j["theta"] = num(t.theta);
    j["edge_gauge_bound"] = num(t.edge_gauge_bound);
    j["max_kept_edge_gauge"] = num(t.max_kept_edge_gauge);
    Json rounds = Json::array();
    for (const auto& r : t.rounds) {
        Json rj;
        rj["height"] = r.height;
        rj["lip_gauge"] = num(r.lip_gauge);
        rj["sep_norm"] = num(r.sep_norm);
        rounds.push_back(std::move(rj));
    }
    j["rounds"] = std::move(rounds);
    Json sel = Json::array();
    for (const auto& s : t.selections) {
        Json sj;
        sj["parent"] = s.parent;
        sj["route"] = s.route;
        sj["grandchild"] = s.grandchild;
        sel.push_back(std::move(sj));
    }
    j["selections"] = std::move(sel);
    return j;
}

std::string dist_matrix_csv(const MetricGraph& g) {
    std::string out;
    for (int i = 0; i < g.vertex_count(); ++i) {
        for (int j = 0; j < g.vertex_count(); ++j) {
            if (j) out.push_back(',');
            out += std::to_string(g.dist[size_t(i)][size_t(j)]);
        }
        out.push_back('\n');
    }
    return out;
}

std::string modulus_table_csv(const std::vector<ModulusEstimate>& rows) {
    std::string out = "eps,value,method,samples,seed\n";
    for (const auto& r : rows) {
        out += fmt_num(r.eps);
        out.push_back(',');
        out += fmt_num(r.value);
        out.push_back(',');
        out += r.method == ModulusMethod::ClosedForm ? "closed_form" : "sampled_upper_bound";
        out.push_back(',');
        out += std::to_string(r.samples);
        out.push_back(',');
        out += std::to_string(r.seed);
        out.push_back('\n');
    }
    return out;
}

}  // namespace swclab::io
