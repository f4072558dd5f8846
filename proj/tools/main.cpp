// swclab command-line front end. Every command prints one JSON envelope to
// stdout: {tool, command, config, tolerances, result}. Floats are rendered as
// 12-significant-digit decimal strings, so identical configurations (and
// seeds) produce byte-identical output. Exit codes: 0 ok, 2 invalid input,
// 3 infeasible or budget exceeded (machine-readable reason in the envelope).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "swclab/fixtures.hpp"
#include "swclab/json_io.hpp"

using namespace swclab;
using io::Json;
using io::num;

namespace {

struct CliError {
    int exit_code;
    std::string code;
    std::string message;
    Json detail = Json::object();
};

Json g_config = Json::object();
std::string g_command;

void set_command(const std::string& cmd) { g_command = cmd; }

Json envelope() {
    Json j;
    j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    j["command"] = g_command;
    j["config"] = g_config;
    Config defaults;
    j["tolerances"] = Json{{"numeric", num(defaults.numeric_tol)}, {"dedup", num(defaults.dedup_tol)}};
    return j;
}

void emit_result(Json result) {
    Json j = envelope();
    j["result"] = std::move(result);
    std::cout << j.dump(2) << "\n";
}

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message,
                       Json detail = Json::object()) {
    throw CliError{code, kind, message, std::move(detail)};
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(2, "invalid_input", "cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        fail(2, "invalid_input", "cannot parse JSON from " + path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(2, "invalid_input", "cannot write file: " + path);
    out << text;
}

PointSet load_pointset(const std::string& path) {
    Json j = load_json(path);
    if (j.contains("points") || j.contains("dim")) return io::pointset_from_json(j);
    if (j.contains("result") && j["result"].contains("pointset"))
        return io::pointset_from_json(j["result"]["pointset"]);
    fail(2, "invalid_input", "no point set found in " + path);
}

JamesSystem load_system(const std::string& path) {
    Json j = load_json(path);
    if (j.contains("theta") && j.contains("points")) return io::james_from_json(j);
    if (j.contains("result") && j["result"].contains("system"))
        return io::james_from_json(j["result"]["system"]);
    fail(2, "invalid_input", "no James system found in " + path);
}

Embedding load_embedding(const std::string& path) {
    Json j = load_json(path);
    if (j.contains("map") && j.contains("graph")) return io::embedding_from_json(j);
    if (j.contains("result") && j["result"].contains("embedding"))
        return io::embedding_from_json(j["result"]["embedding"]);
    fail(2, "invalid_input", "no embedding found in " + path);
}

SetFamily load_family(const std::string& path) {
    Json j = load_json(path);
    if (j.contains("sets")) return io::family_from_json(j);
    if (j.contains("result") && j["result"].contains("family"))
        return io::family_from_json(j["result"]["family"]);
    fail(2, "invalid_input", "no set family found in " + path);
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        out.push_back(std::stoi(part));
    }
    return out;
}

long long default_budget() {
    if (const char* env = std::getenv("SWCLAB_BUDGET_CAP")) return std::atoll(env);
    return Config{}.budget_cap;
}

AmbientNorm parse_norm(const std::string& s) {
    if (s == "l1") return AmbientNorm::l1();
    if (s == "l2") return AmbientNorm::l2();
    if (s == "linf") return AmbientNorm::linf();
    if (s.rfind("lp:", 0) == 0) return AmbientNorm::lp(std::stod(s.substr(3)));
    fail(2, "invalid_input", "unknown norm: " + s + " (use l1|l2|linf|lp:<p>)");
}

// ---- derivations ----

struct DzArgs {
    std::string input;
    double eps = 0.5;
    int max_steps = 64;
    std::string mode = "exact";
    std::string sweep_dirs = "coords+diffs";
    std::string dirs_path;  // user-supplied sweep directions
    long long budget = -1;
    int jobs = 1;
    std::string values_path;  // derive-fn only
    std::string dist_to;      // derive-fn only
};

DeriveOptions derive_options(const DzArgs& a) {
    DeriveOptions opt;
    if (a.mode == "exact") opt.mode = DeriveMode::Exact;
    else if (a.mode == "sweep") opt.mode = DeriveMode::Sweep;
    else fail(2, "invalid_input", "mode must be exact or sweep");
    opt.budget_cap = a.budget > 0 ? a.budget : default_budget();
    opt.jobs = a.jobs;
    if (a.sweep_dirs == "coords") opt.sweep_difference_directions = false;
    else if (a.sweep_dirs != "coords+diffs") fail(2, "invalid_input", "sweep-dirs must be coords or coords+diffs");
    if (!a.dirs_path.empty()) {
        Json j = load_json(a.dirs_path);
        const Json& arr = j.is_array() ? j : j.at("directions");
        for (const auto& d : arr) opt.directions.push_back(io::vec_from_json(d));
        if (opt.directions.empty()) fail(2, "invalid_input", "empty direction list");
    }
    return opt;
}

Json trace_result(const DerivationTrace& tr) {
    Json r = io::trace_to_json(tr);
    Json sizes = Json::array();
    for (const auto& lvl : tr.levels) sizes.push_back(int(lvl.size()));
    r["level_sizes"] = std::move(sizes);
    return r;
}

void run_dz(const DzArgs& a) {
    auto k = load_pointset(a.input).deduplicated();
    auto tr = dz_index(k, a.eps, a.max_steps, derive_options(a));
    emit_result(trace_result(tr));
}

void run_derive_fn(const DzArgs& a) {
    auto k = load_pointset(a.input).deduplicated();
    std::vector<double> f;
    if (!a.values_path.empty()) {
        Json j = load_json(a.values_path);
        const Json& arr = j.is_array() ? j : j.at("values");
        for (const auto& v : arr) f.push_back(io::to_double(v));
    } else if (!a.dist_to.empty()) {
        std::vector<Vec> fpts;
        for (int idx : parse_int_list(a.dist_to)) {
            if (idx < 0 || idx >= k.size()) fail(2, "invalid_input", "dist-to index out of range");
            fpts.push_back(k[idx]);
        }
        f = distance_to_set_function(k, PointSet(k.dim, k.norm, fpts));
    } else {
        fail(2, "invalid_input", "derive-fn needs --values or --dist-to");
    }
    auto tr = derive_function(k, f, a.eps, a.max_steps, derive_options(a));
    Json r = trace_result(tr);
    r["f"] = io::vec_to_json(f);
    emit_result(std::move(r));
}

// ---- james ----

void run_james_verify(const std::string& input, double tol) {
    auto sys = load_system(input);
    auto rep = verify_james_system(sys, tol);
    Json r;
    r["passes"] = rep.passes;
    r["max_pattern_residual"] = num(rep.max_pattern_residual);
    r["max_dual_norm_excess"] = num(rep.max_dual_norm_excess);
    r["theta_is_zero"] = rep.theta_is_zero;
    emit_result(std::move(r));
}

void run_james_search(const std::string& input, double theta) {
    auto k = load_pointset(input);
    auto search = find_functionals(k.points, theta, k.norm);
    if (!search.found)
        fail(3, "infeasible", "no functional system at this theta",
             Json{{"failed_index", search.failed_index}});
    JamesSystem sys{theta, k.norm, k.points, search.functionals, 1.0};
    auto rep = verify_james_system(sys, 1e-6);
    Json r;
    r["system"] = io::james_to_json(sys);
    r["verify"] = Json{{"passes", rep.passes},
                       {"max_pattern_residual", num(rep.max_pattern_residual)},
                       {"max_dual_norm_excess", num(rep.max_dual_norm_excess)}};
    emit_result(std::move(r));
}

void run_james_separate(const std::string& input, int jobs) {
    auto k = load_pointset(input);
    auto cert = separation_value(k.points, k.norm, 1e-8, jobs);
    emit_result(Json{{"theta", num(cert.theta)}, {"certificate", io::certificate_to_json(cert)}});
}

void run_james_cube(const std::string& input, double theta, int jobs) {
    auto k = load_pointset(input);
    auto cert = verify_cube(k.points, theta, k.norm, 12, jobs);
    emit_result(Json{{"certified", cert.certified}, {"certificate", io::cube_to_json(cert)}});
}

void run_james_subspace(const std::string& input, const std::string& constraints_path) {
    auto k = load_pointset(input);
    std::vector<Vec> constraints;
    Json cj = load_json(constraints_path);
    const Json& arr = cj.is_array() ? cj : cj.at("constraints");
    for (const auto& c : arr) constraints.push_back(io::vec_from_json(c));
    auto r = restrict_and_separate(k, constraints);
    if (!r.cert)
        fail(3, "infeasible", "insufficient points in subspace",
             Json{{"surviving", int(r.surviving.size())}});
    Json out;
    out["surviving"] = r.surviving;
    out["theta"] = num(r.cert->theta);
    out["certificate"] = io::certificate_to_json(*r.cert);
    emit_result(std::move(out));
}

// ---- uniform convexity ----

struct ModArgs {
    std::string body_path;
    std::string ambient = "l2";
    double eps = 1.0;
    std::string method = "closed";
    int samples = 2000;
    uint64_t seed = 0;
    std::string grid;  // "a:b:n"
    std::string csv;
};

void run_modulus(const ModArgs& a) {
    auto body = io::body_from_json(load_json(a.body_path));
    auto ambient = parse_norm(a.ambient);
    const ModulusMethod method = a.method == "closed"    ? ModulusMethod::ClosedForm
                                 : a.method == "sampled" ? ModulusMethod::SampledUpperBound
                                                         : throw CliError{2, "invalid_input",
                                                                          "method must be closed or sampled"};
    std::vector<double> eps_list;
    if (!a.grid.empty()) {
        double lo, hi;
        int n;
        if (std::sscanf(a.grid.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
            fail(2, "invalid_input", "grid must be lo:hi:count");
        for (int i = 0; i < n; ++i) eps_list.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    } else {
        eps_list.push_back(a.eps);
    }
    std::vector<ModulusEstimate> rows;
    for (double e : eps_list) rows.push_back(modulus(body, ambient, e, method, a.samples, a.seed));
    Json table = Json::array();
    for (const auto& r : rows)
        table.push_back(Json{{"eps", num(r.eps)},
                             {"value", num(r.value)},
                             {"method", r.method == ModulusMethod::ClosedForm ? "closed_form" : "sampled_upper_bound"},
                             {"samples", r.samples},
                             {"seed", r.seed}});
    if (!a.csv.empty()) write_file(a.csv, io::modulus_table_csv(rows));
    emit_result(Json{{"table", std::move(table)}});
}

void run_uc_midpoint(const std::string& body_path, const std::string& ambient_s,
                     const std::string& pairs_path, int random_pairs, uint64_t seed, double tol) {
    auto body = io::body_from_json(load_json(body_path));
    auto ambient = parse_norm(ambient_s);
    std::vector<std::pair<Vec, Vec>> pairs;
    if (!pairs_path.empty()) {
        Json j = load_json(pairs_path);
        const Json& arr = j.is_array() ? j : j.at("pairs");
        for (const auto& p : arr) pairs.emplace_back(io::vec_from_json(p.at(0)), io::vec_from_json(p.at(1)));
    } else {
        SplitMix64 rng(seed);
        const int d = body.dim();
        while (int(pairs.size()) < random_pairs) {
            Vec x(size_t(d), 0.0), y(size_t(d), 0.0);
            for (double& c : x) c = rng.normal();
            for (double& c : y) c = rng.normal();
            const double gx = gauge(body, x), gy = gauge(body, y);
            if (!(gx > 0) || !(gy > 0) || !std::isfinite(gx) || !std::isfinite(gy)) continue;
            pairs.emplace_back(scale(x, std::sqrt(rng.uniform()) / gx), scale(y, std::sqrt(rng.uniform()) / gy));
        }
    }
    auto rep = check_midpoint_inequality(body, ambient, pairs, tol, seed);
    emit_result(Json{{"passes", rep.passes},
                     {"max_violation", num(rep.max_violation)},
                     {"pairs_checked", rep.pairs_checked},
                     {"advisory", rep.advisory}});
}

void run_uc_signsum(const std::string& body_path, const std::string& ambient_s, const std::string& xs_path) {
    auto body = io::body_from_json(load_json(body_path));
    auto ambient = parse_norm(ambient_s);
    Json j = load_json(xs_path);
    std::vector<Vec> xs;
    const Json& arr = j.is_array() ? j : j.at("xs");
    for (const auto& x : arr) xs.push_back(io::vec_from_json(x));
    auto rep = check_sign_sum_bound(body, ambient, xs);
    emit_result(Json{{"hypothesis_ok", rep.hypothesis_ok},
                     {"max_sign_sum_gauge", num(rep.max_sign_sum_gauge)},
                     {"delta_sum", num(rep.delta_sum)},
                     {"bound_holds", rep.bound_holds},
                     {"patterns_checked", rep.patterns_checked},
                     {"advisory", rep.advisory}});
}

void run_uc_shrink(const std::string& body_path, const std::string& net_path, double eps,
                   double mesh_arg, long long budget, int jobs) {
    auto body = io::body_from_json(load_json(body_path));
    auto net = load_pointset(net_path).deduplicated();
    const double mesh = mesh_arg >= 0.0 ? mesh_arg : net_mesh(net, body);
    DeriveOptions opt;
    opt.budget_cap = budget > 0 ? budget : default_budget();
    opt.jobs = jobs;
    auto rep = check_derivation_shrink(body, net, eps, mesh, opt);
    emit_result(Json{{"passes", rep.passes},
                     {"delta", num(rep.delta)},
                     {"mesh", num(mesh)},
                     {"bound", num(rep.bound)},
                     {"max_survivor_gauge", num(rep.max_survivor_gauge)},
                     {"survivors", rep.survivors},
                     {"vacuous_no_shrink_guaranteed", rep.vacuous}});
}

// ---- graphs ----

void run_graph(const std::string& family, int level, bool check_formula, bool full,
               const std::string& dist_csv) {
    MetricGraph g;
    if (family == "tree") g = binary_tree(level);
    else if (family == "diamond") g = diamond(level);
    else if (family == "laakso") g = laakso(level);
    else fail(2, "invalid_input", "unknown graph family");

    Json r;
    r["family"] = g.family_name();
    r["level"] = g.level;
    r["vertices"] = g.vertex_count();
    r["edges"] = g.edge_count();
    if (check_formula) {
        if (family != "tree") fail(2, "invalid_input", "--check-formula applies to trees");
        bool ok = true;
        for (int i = 0; i < g.vertex_count() && ok; ++i)
            for (int j = 0; j < g.vertex_count() && ok; ++j)
                if (g.dist[size_t(i)][size_t(j)] != tree_distance(tree_vertex_node(i), tree_vertex_node(j)))
                    ok = false;
        r["formula_ok"] = ok;
    }
    if (full) r["graph"] = io::graph_to_json(g, true);
    if (!dist_csv.empty()) write_file(dist_csv, io::dist_matrix_csv(g));
    emit_result(std::move(r));
}

// ---- embeddings ----

void emit_embedding_result(const Embedding& e, Json extra, const std::string& out_path) {
    Json r = std::move(extra);
    if (e.graph.vertex_count() >= 2) r["report"] = io::distortion_to_json(distortion_report(e));
    Json ejson = io::embedding_to_json(e);
    if (!out_path.empty()) write_file(out_path, ejson.dump(2) + "\n");
    r["embedding"] = std::move(ejson);
    emit_result(std::move(r));
}

void run_embed_bourgain(const std::string& system_path, int n, const std::string& out_path) {
    auto sys = load_system(system_path);
    emit_embedding_result(bourgain_embedding(sys, n), Json::object(), out_path);
}

void run_embed_baudier(const std::string& blocks_path, int depth, const std::string& out_path) {
    Json j = load_json(blocks_path);
    std::vector<JamesSystem> blocks;
    const Json& arr = j.is_array() ? j : j.at("systems");
    for (const auto& b : arr) blocks.push_back(io::james_from_json(b));
    emit_embedding_result(baudier_embedding(blocks, depth), Json::object(), out_path);
}

void run_embed_prune(const std::string& embedding_path, double theta, int rounds,
                     const std::string& out_path, int jobs) {
    Embedding e = load_embedding(embedding_path);
    auto delta_of = [&e](double t) {
        auto cf = closed_form_modulus(e.body, e.ambient, t);
        if (!cf) fail(2, "invalid_input", "prune needs a body with a closed-form modulus");
        return *cf;
    };
    Json rounds_json = Json::array();
    Embedding cur = std::move(e);
    for (int r = 0; r < rounds; ++r) {
        if (cur.graph.level < 2 || cur.graph.level % 2 != 0)
            fail(2, "invalid_input", "tree height must be even and >= 2 to prune");
        auto [next, trace] = kloeckner_prune(cur, theta, delta_of, jobs);
        rounds_json.push_back(io::prune_trace_to_json(trace));
        cur = std::move(next);
    }
    emit_embedding_result(cur, Json{{"prune_rounds", std::move(rounds_json)}}, out_path);
}

void run_embed_report(const std::string& embedding_path, int jobs) {
    Embedding e = load_embedding(embedding_path);
    emit_result(Json{{"report", io::distortion_to_json(distortion_report(e, jobs))}});
}

// ---- families ----

void emit_family(const SetFamily& fam) {
    emit_result(Json{{"count", fam.size()}, {"family", io::family_to_json(fam)}});
}

void run_family_trace(const SetFamily& fam, const std::string& a_csv) {
    auto a = parse_int_list(a_csv);
    std::sort(a.begin(), a.end());
    auto r = trace_count(fam, a);
    emit_result(Json{{"count", r.count}, {"A", a}, {"traces", r.traces}});
}

void run_family_vctest(const SetFamily& fam, double p, double c, int max_size) {
    std::vector<std::vector<int>> samples;
    const int probe = std::min(fam.universe, 16);
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        samples.push_back(cur);
        if (int(cur.size()) == max_size) return;
        for (int x = from; x <= probe; ++x) {
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(1);
    auto r = polynomial_trace_test(fam, p, c, samples);
    Json out;
    out["pass"] = r.pass;
    out["samples"] = int(samples.size());
    if (!r.pass) {
        out["worst_A"] = r.worst_a;
        out["worst_count"] = r.worst_count;
        out["worst_bound"] = num(r.worst_bound);
    }
    emit_result(std::move(out));
}

void run_family_vcextract(const SetFamily& fam, const std::string& a_csv, long long budget) {
    auto a = parse_int_list(a_csv);
    std::sort(a.begin(), a.end());
    auto r = vc_extract(fam, a, budget > 0 ? budget : default_budget());
    Json out;
    out["shattered"] = r.witness.s;
    out["size"] = int(r.witness.s.size());
    out["witnesses"] = r.witness.witness_family_index;
    out["chain_family_indices"] = r.chain_family_indices;
    out["chain_points"] = io::pointset_to_json(r.chain_points);
    out["subsets_examined"] = r.subsets_examined;
    emit_result(std::move(out));
}

void run_family_slice(int n, int m, int n_max) {
    auto s = slicing_functional(n, m, n_max);
    emit_result(Json{{"functional", io::vec_to_json(s.a)},
                     {"level", num(s.level)},
                     {"target_index", s.target},
                     {"verified", s.verified}});
}

void run_family_points(const SetFamily& fam, const std::string& norm_s) {
    emit_result(Json{{"pointset", io::pointset_to_json(to_points(fam, parse_norm(norm_s)))}});
}

// ---- fixtures ----

void run_fixtures(const std::string& name, std::string out_path) {
    std::string kind;
    std::vector<std::string> args;
    const auto open = name.find('(');
    if (open == std::string::npos || name.back() != ')') fail(2, "invalid_input", "fixture name must look like sb(3)");
    kind = name.substr(0, open);
    std::stringstream ss(name.substr(open + 1, name.size() - open - 2));
    std::string part;
    while (std::getline(ss, part, ',')) args.push_back(part);

    Json content;
    std::string stem;
    if (kind == "sb" && args.size() == 1) {
        content = io::pointset_to_json(fixtures::summing_basis_points(std::stoi(args[0])));
        stem = "sb" + args[0];
    } else if (kind == "blocks" && args.size() == 1) {
        content = io::pointset_to_json(fixtures::block_family_points(std::stoi(args[0])));
        stem = "blocks" + args[0];
    } else if (kind == "schreier" && args.size() == 1) {
        content = io::family_to_json(schreier(std::stoi(args[0])));
        stem = "schreier" + args[0];
    } else if (kind == "l2ball-net" && args.size() == 3) {
        content = io::pointset_to_json(
            fixtures::l2_ball_net(std::stoi(args[0]), std::stoi(args[1]), std::stoull(args[2])));
        stem = "l2ball-net-" + args[0] + "-" + args[1] + "-" + args[2];
    } else {
        fail(2, "invalid_input", "unknown fixture: " + name +
                                     " (use sb(n), blocks(n_max), schreier(N), l2ball-net(d,count,seed))");
    }
    if (out_path.empty()) out_path = stem + ".json";
    write_file(out_path, content.dump(2) + "\n");
    emit_result(Json{{"written", out_path}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-scale lab for slice derivations, separation certificates, convexity "
                 "moduli, metric graphs, tree embeddings and set-family combinatorics"};
    app.require_subcommand(1);
    app.fallthrough();

    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for pair scans and per-point tests");

    // dz
    DzArgs dz_args;
    auto* dz_cmd = app.add_subcommand("dz", "dentability index of a point set");
    dz_cmd->add_option("--input", dz_args.input, "PointSet JSON")->required();
    dz_cmd->add_option("--eps", dz_args.eps, "slice diameter threshold")->required();
    dz_cmd->add_option("--mode", dz_args.mode, "exact|sweep");
    dz_cmd->add_option("--max-steps", dz_args.max_steps, "derivation step cap");
    dz_cmd->add_option("--budget", dz_args.budget, "candidate-subset cap (env SWCLAB_BUDGET_CAP)");
    dz_cmd->add_option("--sweep-dirs", dz_args.sweep_dirs, "coords|coords+diffs");
    dz_cmd->add_option("--dirs", dz_args.dirs_path, "JSON list of sweep directions");

    // derive-fn
    DzArgs fn_args;
    auto* fn_cmd = app.add_subcommand("derive-fn", "function-oscillation derivation");
    fn_cmd->add_option("--input", fn_args.input, "PointSet JSON")->required();
    fn_cmd->add_option("--eps", fn_args.eps, "oscillation threshold")->required();
    fn_cmd->add_option("--values", fn_args.values_path, "per-point values JSON");
    fn_cmd->add_option("--dist-to", fn_args.dist_to, "build f as distance to these point indices");
    fn_cmd->add_option("--mode", fn_args.mode, "exact|sweep");
    fn_cmd->add_option("--max-steps", fn_args.max_steps, "derivation step cap");
    fn_cmd->add_option("--budget", fn_args.budget, "candidate-subset cap");
    fn_cmd->add_option("--sweep-dirs", fn_args.sweep_dirs, "coords|coords+diffs");
    fn_cmd->add_option("--dirs", fn_args.dirs_path, "JSON list of sweep directions");

    // james
    auto* james_cmd = app.add_subcommand("james", "separation certificates and functional systems");
    james_cmd->require_subcommand(1);
    std::string jv_input;
    double jv_tol = 1e-8;
    auto* jv = james_cmd->add_subcommand("verify", "check a 0/theta functional system");
    jv->add_option("--input", jv_input, "JamesSystem JSON")->required();
    jv->add_option("--tol", jv_tol, "residual tolerance");

    std::string js_input;
    double js_theta = 1.0;
    auto* js = james_cmd->add_subcommand("search", "find functionals for an ordered point list");
    js->add_option("--input", js_input, "PointSet JSON (order matters)")->required();
    js->add_option("--theta", js_theta, "pattern value")->required();

    std::string jsep_input;
    auto* jsep = james_cmd->add_subcommand("separate", "prefix/suffix hull separation values");
    jsep->add_option("--input", jsep_input, "PointSet JSON (order matters)")->required();

    std::string jc_input;
    double jc_theta = 1.0;
    auto* jc = james_cmd->add_subcommand("cube", "verify a cube map given 2^n images in binary order");
    jc->add_option("--input", jc_input, "PointSet JSON with 2^n points")->required();
    jc->add_option("--theta", jc_theta, "required split separation")->required();

    std::string jsub_input, jsub_constraints;
    auto* jsub = james_cmd->add_subcommand("subspace", "separation after kernel restriction");
    jsub->add_option("--input", jsub_input, "PointSet JSON")->required();
    jsub->add_option("--constraints", jsub_constraints, "JSON list of functionals")->required();

    // modulus
    ModArgs mod_args;
    auto* mod_cmd = app.add_subcommand("modulus", "convexity modulus of a body");
    mod_cmd->add_option("--body", mod_args.body_path, "ConvexBody JSON")->required();
    mod_cmd->add_option("--ambient", mod_args.ambient, "separation norm (l1|l2|linf|lp:<p>)");
    mod_cmd->add_option("--eps", mod_args.eps, "separation threshold");
    mod_cmd->add_option("--method", mod_args.method, "closed|sampled");
    mod_cmd->add_option("--samples", mod_args.samples, "sample count for the upper bound");
    mod_cmd->add_option("--seed", mod_args.seed, "sampling seed");
    mod_cmd->add_option("--grid", mod_args.grid, "eps grid lo:hi:count");
    mod_cmd->add_option("--csv", mod_args.csv, "write the table as CSV");

    // uc-check
    auto* uc_cmd = app.add_subcommand("uc-check", "uniform convexity checks");
    uc_cmd->require_subcommand(1);
    std::string ucm_body, ucm_ambient = "l2", ucm_pairs;
    int ucm_random = 10000;
    uint64_t ucm_seed = 0;
    double ucm_tol = 1e-9;
    auto* ucm = uc_cmd->add_subcommand("midpoint", "midpoint gauge inequality over point pairs");
    ucm->add_option("--body", ucm_body, "ConvexBody JSON")->required();
    ucm->add_option("--ambient", ucm_ambient, "separation norm");
    ucm->add_option("--pairs", ucm_pairs, "pairs JSON [[x,y],...]");
    ucm->add_option("--random", ucm_random, "number of random pairs when --pairs absent");
    ucm->add_option("--seed", ucm_seed, "pair-sampling seed");
    ucm->add_option("--tol", ucm_tol, "violation tolerance");

    std::string ucs_body, ucs_ambient = "l2", ucs_xs;
    auto* ucs = uc_cmd->add_subcommand("signsum", "sign-sum modulus bound");
    ucs->add_option("--body", ucs_body, "ConvexBody JSON")->required();
    ucs->add_option("--ambient", ucs_ambient, "norm for ||x_n||");
    ucs->add_option("--xs", ucs_xs, "JSON list of vectors")->required();

    std::string uck_body, uck_net;
    double uck_eps = 0.5, uck_mesh = -1.0;
    long long uck_budget = -1;
    auto* uck = uc_cmd->add_subcommand("shrink", "derivation shrink bound on a net");
    uck->add_option("--body", uck_body, "ConvexBody JSON")->required();
    uck->add_option("--net", uck_net, "PointSet JSON inside the body")->required();
    uck->add_option("--eps", uck_eps, "slice diameter threshold")->required();
    uck->add_option("--mesh", uck_mesh, "net covering radius (computed when omitted)");
    uck->add_option("--budget", uck_budget, "candidate-subset cap");

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "metric graph generators");
    graph_cmd->require_subcommand(1);
    struct GraphArgs {
        int level = 0;
        bool check_formula = false, full = false;
        std::string dist_csv;
    };
    GraphArgs gtree, gdia, glaa;
    auto* gt = graph_cmd->add_subcommand("tree", "dyadic tree T_N");
    gt->add_option("--n", gtree.level, "height")->required();
    gt->add_flag("--check-formula", gtree.check_formula, "verify BFS = closed-form distance");
    gt->add_flag("--full", gtree.full, "include vertices and edges");
    gt->add_option("--dist-csv", gtree.dist_csv, "write the distance matrix");
    auto* gd = graph_cmd->add_subcommand("diamond", "diamond graph D_k");
    gd->add_option("--k", gdia.level, "level")->required();
    gd->add_flag("--full", gdia.full, "include vertices and edges");
    gd->add_option("--dist-csv", gdia.dist_csv, "write the distance matrix");
    auto* gl = graph_cmd->add_subcommand("laakso", "Laakso graph L_k");
    gl->add_option("--k", glaa.level, "level")->required();
    gl->add_flag("--full", glaa.full, "include vertices and edges");
    gl->add_option("--dist-csv", glaa.dist_csv, "write the distance matrix");

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "tree embeddings and distortion");
    embed_cmd->require_subcommand(1);
    std::string eb_system, eb_out;
    int eb_n = 1;
    auto* eb = embed_cmd->add_subcommand("bourgain", "summed-system embedding of T_N");
    eb->add_option("--system", eb_system, "JamesSystem JSON")->required();
    eb->add_option("--n", eb_n, "tree height")->required();
    eb->add_option("--out", eb_out, "also write the bare embedding JSON here");

    std::string ba_blocks, ba_out;
    int ba_depth = 1;
    auto* ba = embed_cmd->add_subcommand("baudier", "barycentric glued embedding");
    ba->add_option("--blocks", ba_blocks, "JSON list of block systems")->required();
    ba->add_option("--depth", ba_depth, "tree depth")->required();
    ba->add_option("--out", ba_out, "also write the bare embedding JSON here");

    std::string ep_embedding, ep_out;
    double ep_theta = 0.5;
    int ep_rounds = 1;
    auto* ep = embed_cmd->add_subcommand("prune", "fork-pruning rounds on a separated tree embedding");
    ep->add_option("--embedding", ep_embedding, "Embedding JSON")->required();
    ep->add_option("--theta", ep_theta, "separation parameter")->required();
    ep->add_option("--rounds", ep_rounds, "number of halving rounds");
    ep->add_option("--out", ep_out, "also write the pruned embedding JSON here");

    std::string er_embedding;
    auto* er = embed_cmd->add_subcommand("report", "distortion report of an embedding");
    er->add_option("--embedding", er_embedding, "Embedding JSON")->required();

    // family
    auto* family_cmd = app.add_subcommand("family", "set families on {1..N}");
    family_cmd->require_subcommand(1);

    struct FamArgs {
        int n = 4, p = 1, nmax = 2;
        std::string a_csv, norm = "linf";
        double test_p = 1.0, test_c = 1.0;
        int test_max = 6;
        long long budget = -1;
        int slice_n = 1, slice_m = 1;
    };
    FamArgs fa;

    struct FamActions {
        CLI::App* trace = nullptr;
        CLI::App* points = nullptr;
        CLI::App* vctest = nullptr;
        CLI::App* vcextract = nullptr;
    };
    auto add_actions = [&](CLI::App* gen) {
        FamActions acts;
        acts.trace = gen->add_subcommand("trace", "distinct traces on A");
        acts.trace->add_option("--A", fa.a_csv, "comma-separated elements")->required();
        acts.points = gen->add_subcommand("points", "characteristic vectors");
        acts.points->add_option("--norm", fa.norm, "ambient norm");
        acts.vctest = gen->add_subcommand("vctest", "polynomial trace bound over all small A");
        acts.vctest->add_option("--p", fa.test_p, "exponent")->required();
        acts.vctest->add_option("--c", fa.test_c, "constant")->required();
        acts.vctest->add_option("--max-size", fa.test_max, "largest |A| sampled");
        acts.vcextract = gen->add_subcommand("vcextract", "largest shattered subset of A");
        acts.vcextract->add_option("--A", fa.a_csv, "comma-separated elements")->required();
        acts.vcextract->add_option("--budget", fa.budget, "subset enumeration cap");
        return acts;
    };

    auto* fs = family_cmd->add_subcommand("schreier", "sets with |F| <= min F");
    fs->add_option("--n", fa.n, "universe size")->required();
    FamActions fs_acts = add_actions(fs);

    auto* fb = family_cmd->add_subcommand("blocks", "block chains F_{n,m}");
    fb->add_option("--nmax", fa.nmax, "largest block")->required();
    FamActions fb_acts = add_actions(fb);
    auto* fbs = fb->add_subcommand("slice", "the functional isolating chi(F_{n,m})");
    fbs->add_option("--sn", fa.slice_n, "block index n")->required();
    fbs->add_option("--sm", fa.slice_m, "chain index m")->required();

    auto* fc = family_cmd->add_subcommand("bounded", "all sets of size <= p");
    fc->add_option("--n", fa.n, "universe size")->required();
    fc->add_option("--p", fa.p, "cardinality cap")->required();
    FamActions fc_acts = add_actions(fc);

    std::string ff_family;
    auto* ft = family_cmd->add_subcommand("trace", "traces of a family file on A");
    ft->add_option("--family", ff_family, "SetFamily JSON")->required();
    ft->add_option("--A", fa.a_csv, "comma-separated elements")->required();

    auto* fvt = family_cmd->add_subcommand("vctest", "polynomial trace bound for a family file");
    fvt->add_option("--family", ff_family, "SetFamily JSON")->required();
    fvt->add_option("--p", fa.test_p, "exponent")->required();
    fvt->add_option("--c", fa.test_c, "constant")->required();
    fvt->add_option("--max-size", fa.test_max, "largest |A| sampled");

    auto* fve = family_cmd->add_subcommand("vcextract", "shattered subset for a family file");
    fve->add_option("--family", ff_family, "SetFamily JSON")->required();
    fve->add_option("--A", fa.a_csv, "comma-separated elements")->required();
    fve->add_option("--budget", fa.budget, "subset enumeration cap");

    auto* fsl = family_cmd->add_subcommand("slice", "block slicing functional");
    fsl->add_option("--sn", fa.slice_n, "block index n")->required();
    fsl->add_option("--sm", fa.slice_m, "chain index m")->required();
    fsl->add_option("--nmax", fa.nmax, "family size")->required();

    auto* fpt = family_cmd->add_subcommand("points", "characteristic vectors of a family file");
    fpt->add_option("--family", ff_family, "SetFamily JSON")->required();
    fpt->add_option("--norm", fa.norm, "ambient norm");

    // fixtures
    std::string fix_name, fix_out;
    auto* fix_cmd = app.add_subcommand("fixtures", "write canonical fixture files");
    fix_cmd->add_option("--name", fix_name, "sb(n) | blocks(n_max) | schreier(N) | l2ball-net(d,count,seed)")
        ->required();
    fix_cmd->add_option("--out", fix_out, "output path (defaults to <name>.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    // Echo the raw command line into the envelope config.
    {
        Json cfg = Json::object();
        std::vector<std::string> words;
        for (int i = 1; i < argc; ++i) words.emplace_back(argv[i]);
        cfg["argv"] = words;
        cfg["jobs"] = jobs;
        g_config = std::move(cfg);
        std::string cmd;
        for (int i = 1; i < argc && argv[i][0] != '-'; ++i) {
            if (!cmd.empty()) cmd += " ";
            cmd += argv[i];
        }
        set_command(cmd);
    }

    try {
        dz_args.jobs = fn_args.jobs = jobs;
        if (dz_cmd->parsed()) run_dz(dz_args);
        else if (fn_cmd->parsed()) run_derive_fn(fn_args);
        else if (jv->parsed()) run_james_verify(jv_input, jv_tol);
        else if (js->parsed()) run_james_search(js_input, js_theta);
        else if (jsep->parsed()) run_james_separate(jsep_input, jobs);
        else if (jc->parsed()) run_james_cube(jc_input, jc_theta, jobs);
        else if (jsub->parsed()) run_james_subspace(jsub_input, jsub_constraints);
        else if (mod_cmd->parsed()) run_modulus(mod_args);
        else if (ucm->parsed()) run_uc_midpoint(ucm_body, ucm_ambient, ucm_pairs, ucm_random, ucm_seed, ucm_tol);
        else if (ucs->parsed()) run_uc_signsum(ucs_body, ucs_ambient, ucs_xs);
        else if (uck->parsed()) run_uc_shrink(uck_body, uck_net, uck_eps, uck_mesh, uck_budget, jobs);
        else if (gt->parsed()) run_graph("tree", gtree.level, gtree.check_formula, gtree.full, gtree.dist_csv);
        else if (gd->parsed()) run_graph("diamond", gdia.level, false, gdia.full, gdia.dist_csv);
        else if (gl->parsed()) run_graph("laakso", glaa.level, false, glaa.full, glaa.dist_csv);
        else if (eb->parsed()) run_embed_bourgain(eb_system, eb_n, eb_out);
        else if (ba->parsed()) run_embed_baudier(ba_blocks, ba_depth, ba_out);
        else if (ep->parsed()) run_embed_prune(ep_embedding, ep_theta, ep_rounds, ep_out, jobs);
        else if (er->parsed()) run_embed_report(er_embedding, jobs);
        else if (ft->parsed()) run_family_trace(load_family(ff_family), fa.a_csv);
        else if (fvt->parsed()) run_family_vctest(load_family(ff_family), fa.test_p, fa.test_c, fa.test_max);
        else if (fve->parsed()) run_family_vcextract(load_family(ff_family), fa.a_csv, fa.budget);
        else if (fsl->parsed()) run_family_slice(fa.slice_n, fa.slice_m, fa.nmax);
        else if (fpt->parsed()) run_family_points(load_family(ff_family), fa.norm);
        else if (fix_cmd->parsed()) run_fixtures(fix_name, fix_out);
        else if (fs->parsed() || fb->parsed() || fc->parsed()) {
            auto make_family = [&]() {
                if (fs->parsed()) return schreier(fa.n);
                if (fb->parsed()) return block_family(fa.nmax);
                return bounded_card_family(fa.n, fa.p);
            };
            const FamActions& acts = fs->parsed() ? fs_acts : fb->parsed() ? fb_acts : fc_acts;
            if (fb->parsed() && fbs->parsed()) run_family_slice(fa.slice_n, fa.slice_m, fa.nmax);
            else if (acts.trace->parsed()) run_family_trace(make_family(), fa.a_csv);
            else if (acts.points->parsed()) run_family_points(make_family(), fa.norm);
            else if (acts.vctest->parsed()) run_family_vctest(make_family(), fa.test_p, fa.test_c, fa.test_max);
            else if (acts.vcextract->parsed()) run_family_vcextract(make_family(), fa.a_csv, fa.budget);
            else emit_family(make_family());
        }
    } catch (const CliError& e) {
        Json j = envelope();
        j["error"] = Json{{"code", e.code}, {"message", e.message}, {"detail", e.detail}};
        std::cout << j.dump(2) << "\n";
        return e.exit_code;
    } catch (const BudgetError& e) {
        Json j = envelope();
        j["error"] = Json{{"code", "budget_exceeded"},
                          {"message", e.what()},
                          {"detail", Json{{"count", e.count}, {"cap", e.cap}}}};
        std::cout << j.dump(2) << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        Json j = envelope();
        j["error"] = Json{{"code", "invalid_input"}, {"message", e.what()}, {"detail", Json::object()}};
        std::cout << j.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json j = envelope();
        j["error"] = Json{{"code", "internal_error"}, {"message", e.what()}, {"detail", Json::object()}};
        std::cout << j.dump(2) << "\n";
        return 2;
    }
    return 0;
}
