#include "swclab/set_families.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace swclab {

namespace {

void append_combinations(const std::vector<int>& pool, int size, std::vector<int>& scratch,
                         size_t from, std::vector<std::vector<int>>& out) {
    if (int(scratch.size()) == size) {
        out.push_back(scratch);
        return;
    }
    for (size_t i = from; i < pool.size(); ++i) {
        scratch.push_back(pool[i]);
        append_combinations(pool, size, scratch, i + 1, out);
        scratch.pop_back();
    }
}

void sort_lex(std::vector<std::vector<int>>& sets) { std::sort(sets.begin(), sets.end()); }

void check_subset_of_universe(const SetFamily& fam, const std::vector<int>& a, const char* who) {
    for (int x : a)
        if (x < 1 || x > fam.universe) throw std::invalid_argument(std::string(who) + ": element outside [1, N]");
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] <= a[i - 1]) throw std::invalid_argument(std::string(who) + ": set must be strictly ascending");
}

std::vector<int> intersect_sorted(const std::vector<int>& f, const std::vector<int>& a) {
    std::vector<int> r;
    std::set_intersection(f.begin(), f.end(), a.begin(), a.end(), std::back_inserter(r));
    return r;
}

}  // namespace

SetFamily schreier(int n) {
    if (n < 1) throw std::invalid_argument("schreier: N must be >= 1");
    SetFamily fam;
    fam.universe = n;
    fam.sets.push_back({});
    for (int k = 1; k <= n; ++k) {
        std::vector<int> pool;
        for (int x = k + 1; x <= n; ++x) pool.push_back(x);
        const int max_extra = std::min(k - 1, n - k);
        for (int extra = 0; extra <= max_extra; ++extra) {
            std::vector<std::vector<int>> combos;
            std::vector<int> scratch;
            append_combinations(pool, extra, scratch, 0, combos);
            for (auto& c : combos) {
                std::vector<int> f{k};
                f.insert(f.end(), c.begin(), c.end());
                fam.sets.push_back(std::move(f));
            }
        }
    }
    sort_lex(fam.sets);
    return fam;
}

std::vector<int> block_set(int n, int m) {
    std::vector<int> f;
    const int base = n * (n - 1) / 2;
    for (int k = base + 1; k <= base + m; ++k) f.push_back(k);
    return f;
}

SetFamily block_family(int n_max) {
    if (n_max < 1) throw std::invalid_argument("block_family: n_max must be >= 1");
    SetFamily fam;
    fam.universe = n_max * (n_max + 1) / 2;
    fam.sets.push_back({});
    for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m <= n; ++m) fam.sets.push_back(block_set(n, m));
    return fam;
}

SetFamily bounded_card_family(int n, int p) {
    if (n < 1) throw std::invalid_argument("bounded_card_family: N must be >= 1");
    if (p < 0 || p > n) throw std::invalid_argument("bounded_card_family: need 0 <= p <= N");
    SetFamily fam;
    fam.universe = n;
    std::vector<int> pool;
    for (int x = 1; x <= n; ++x) pool.push_back(x);
    for (int size = 0; size <= p; ++size) {
        std::vector<int> scratch;
        append_combinations(pool, size, scratch, 0, fam.sets);
    }
    sort_lex(fam.sets);
    return fam;
}

TraceResult trace_count(const SetFamily& fam, const std::vector<int>& a) {
    check_subset_of_universe(fam, a, "trace_count");
    std::set<std::vector<int>> distinct;
    for (const auto& f : fam.sets) distinct.insert(intersect_sorted(f, a));
    TraceResult r;
    r.traces.assign(distinct.begin(), distinct.end());
    r.count = int(r.traces.size());
    return r;
}

TraceTestResult polynomial_trace_test(const SetFamily& fam, double p, double c,
                                      const std::vector<std::vector<int>>& samples) {
    if (samples.empty()) throw std::invalid_argument("polynomial_trace_test: no samples");
    TraceTestResult res;
    for (const auto& a : samples) {
        const int count = trace_count(fam, a).count;
        const double bound = c * std::pow(double(std::max<size_t>(a.size(), 1)), p);
        if (double(count) > bound) {
            res.pass = false;
            res.worst_a = a;
            res.worst_count = count;
            res.worst_bound = bound;
            return res;
        }
    }
    return res;
}

VcExtractResult vc_extract(const SetFamily& fam, const std::vector<int>& a, long long budget) {
    check_subset_of_universe(fam, a, "vc_extract");
    if (a.size() > 20) throw BudgetError("vc_extract: |A| exceeds the cap of 20", static_cast<long long>(a.size()), 20);
    if (fam.sets.empty()) throw std::invalid_argument("vc_extract: empty family");

    // 2^|S| traces are needed to shatter S, so the search can start below
    // log2 of the trace count of A.
    const int tc = trace_count(fam, a).count;
    int start = 0;
    while ((1LL << (start + 1)) <= tc && start + 1 <= int(a.size())) ++start;

    VcExtractResult out;
    long long examined = 0;

    auto try_shatter = [&](const std::vector<int>& s) -> std::optional<ShatterWitness> {
        const size_t want = size_t(1) << s.size();
        std::vector<int> witness(want, -1);
        size_t seen = 0;
        for (size_t fi = 0; fi < fam.sets.size() && seen < want; ++fi) {
            size_t mask = 0;
            for (size_t b = 0; b < s.size(); ++b)
                if (std::binary_search(fam.sets[fi].begin(), fam.sets[fi].end(), s[b])) mask |= size_t(1) << b;
            if (witness[mask] < 0) {
                witness[mask] = int(fi);
                ++seen;
            }
        }
        if (seen < want) return std::nullopt;
        ShatterWitness w;
        w.s = s;
        w.witness_family_index = std::move(witness);
        return w;
    };

    for (int size = start; size >= 0; --size) {
        std::vector<std::vector<int>> combos;
        std::vector<int> scratch;
        append_combinations(a, size, scratch, 0, combos);
        for (const auto& s : combos) {
            if (++examined > budget) throw BudgetError("vc_extract: subset budget exceeded", examined, budget);
            auto w = try_shatter(s);
            if (!w) continue;
            out.witness = std::move(*w);
            out.subsets_examined = examined;

            // Chain points x_k = chi(F_k) with F_k cap S = {s_1..s_k}.
            std::vector<Vec> pts;
            for (size_t k = 1; k <= out.witness.s.size(); ++k) {
                const size_t mask = (size_t(1) << k) - 1;
                const int fi = out.witness.witness_family_index[mask];
                out.chain_family_indices.push_back(fi);
                Vec x = zeros(fam.universe);
                for (int e : fam.sets[size_t(fi)]) x[size_t(e - 1)] = 1.0;
                pts.push_back(std::move(x));
            }
            out.chain_points = PointSet(fam.universe, AmbientNorm::linf(), std::move(pts));
            return out;
        }
    }
    throw std::logic_error("vc_extract: unreachable (the empty set always shatters)");
}

SlicingFunctional slicing_functional(int n, int m, int n_max) {
    if (!(1 <= m && m <= n && n <= n_max)) throw std::invalid_argument("slicing_functional: need 1 <= m <= n <= n_max");
    const int universe = n_max * (n_max + 1) / 2;
    const int base = n * (n - 1) / 2;

    SlicingFunctional out;
    out.a = zeros(universe);
    for (int k = base + 1; k <= base + m; ++k) out.a[size_t(k - 1)] = 1.0;
    for (int k = base + m + 1; k <= n * (n + 1) / 2; ++k) out.a[size_t(k - 1)] = -1.0;
    out.level = double(m) - 0.5;

    const SetFamily fam = block_family(n_max);
    const PointSet k = to_points(fam);
    const std::vector<int> target_set = block_set(n, m);
    out.verified = true;
    for (int i = 0; i < k.size(); ++i) {
        const bool in_slice = dot(out.a, k[i]) > out.level;
        const bool is_target = fam.sets[size_t(i)] == target_set;
        if (is_target) out.target = i;
        if (in_slice != is_target) out.verified = false;
    }
    if (out.target < 0) out.verified = false;
    return out;
}

PointSet to_points(const SetFamily& fam, AmbientNorm ambient) {
    if (fam.universe < 1) throw std::invalid_argument("to_points: empty universe");
    std::vector<Vec> pts;
    pts.reserve(fam.sets.size());
    for (const auto& f : fam.sets) {
        Vec x = zeros(fam.universe);
        for (int e : f) x[size_t(e - 1)] = 1.0;
        pts.push_back(std::move(x));
    }
    return PointSet(fam.universe, ambient, std::move(pts));
}

}  // namespace swclab
