#include "swclab/graphs.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "swclab/common.hpp"

namespace swclab {

namespace {

std::vector<std::vector<int>> bfs_all_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [u, v] : edges) {
        adj[size_t(u)].push_back(v);
        adj[size_t(v)].push_back(u);
    }
    std::vector<std::vector<int>> dist(size_t(n), std::vector<int>(size_t(n), -1));
    for (int s = 0; s < n; ++s) {
        auto& row = dist[size_t(s)];
        row[size_t(s)] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            const int u = q.front();
            q.pop_front();
            for (int v : adj[size_t(u)])
                if (row[size_t(v)] < 0) {
                    row[size_t(v)] = row[size_t(u)] + 1;
                    q.push_back(v);
                }
        }
        for (int v : row)
            if (v < 0) throw std::logic_error("graph generator produced a disconnected graph");
    }
    return dist;
}

// Replaces every edge by a gadget; `expand` appends the new edges given the
// endpoints and a fresh-vertex allocator.
template <typename Expand>
MetricGraph grow(MetricGraph::Family fam, int k, int cap, Expand expand) {
    if (k < 0 || k > cap) throw BudgetError("graph level exceeds the size cap", k, cap);
    MetricGraph g;
    g.family = fam;
    g.level = k;
    g.labels = {"s", "t"};
    g.edges = {{0, 1}};
    int counter = 0;
    for (int lvl = 0; lvl < k; ++lvl) {
        std::vector<std::pair<int, int>> next;
        auto fresh = [&]() {
            g.labels.push_back("x" + std::to_string(++counter));
            return int(g.labels.size()) - 1;
        };
        for (auto [u, v] : g.edges) expand(u, v, fresh, next);
        g.edges = std::move(next);
    }
    g.dist = bfs_all_pairs(g.vertex_count(), g.edges);
    return g;
}

}  // namespace

TreeNode TreeNode::parse(const std::string& s) {
    TreeNode t;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("TreeNode: label must be a 0/1 string");
        t.bits.push_back(uint8_t(c - '0'));
    }
    return t;
}

std::string TreeNode::label() const {
    std::string s;
    for (uint8_t b : bits) s.push_back(char('0' + b));
    return s;
}

int tree_distance(const TreeNode& s, const TreeNode& t) {
    size_t common = 0;
    while (common < s.bits.size() && common < t.bits.size() && s.bits[common] == t.bits[common]) ++common;
    return int(s.bits.size() + t.bits.size() - 2 * common);
}

int tree_vertex_index(const TreeNode& s) {
    int value = 0;
    for (uint8_t b : s.bits) value = (value << 1) | b;
    return (1 << s.depth()) - 1 + value;
}

TreeNode tree_vertex_node(int index) {
    int depth = 0;
    while ((index + 1) >> (depth + 1) > 0) ++depth;
    const int value = index - ((1 << depth) - 1);
    TreeNode t;
    t.bits.resize(size_t(depth));
    for (int b = 0; b < depth; ++b) t.bits[size_t(b)] = uint8_t((value >> (depth - 1 - b)) & 1);
    return t;
}

MetricGraph binary_tree(int n) {
    if (n < 0 || n > 12) throw BudgetError("binary_tree: height exceeds the size cap", n, 12);
    MetricGraph g;
    g.family = MetricGraph::Family::Tree;
    g.level = n;
    const int total = (1 << (n + 1)) - 1;
    g.labels.reserve(size_t(total));
    for (int i = 0; i < total; ++i) g.labels.push_back(tree_vertex_node(i).label());
    for (int i = 1; i < total; ++i) g.edges.emplace_back((i - 1) / 2, i);
    g.dist = bfs_all_pairs(total, g.edges);
    return g;
}

MetricGraph diamond(int k) {
    return grow(MetricGraph::Family::Diamond, k, 6, [](int u, int v, auto fresh, auto& next) {
        const int a = fresh(), b = fresh();
        next.push_back({u, a});
        next.push_back({a, v});
        next.push_back({u, b});
        next.push_back({b, v});
    });
}

MetricGraph laakso(int k) {
    return grow(MetricGraph::Family::Laakso, k, 4, [](int u, int v, auto fresh, auto& next) {
        const int a = fresh(), b1 = fresh(), b2 = fresh(), c = fresh();
        next.push_back({u, a});
        next.push_back({a, b1});
        next.push_back({a, b2});
        next.push_back({b1, c});
        next.push_back({b2, c});
        next.push_back({c, v});
    });
}

const char* MetricGraph::family_name() const {
    switch (family) {
        case Family::Tree: return "tree";
        case Family::Diamond: return "diamond";
        case Family::Laakso: return "laakso";
    }
    return "?";
}

}  // namespace swclab
