#pragma once

// The three graph families under their shortest-path metrics: dyadic trees,
// diamond graphs (every edge becomes two parallel length-2 paths) and Laakso
// graphs (every edge becomes the 6-vertex split gadget). Metrics come from
// per-source BFS; the tree also has the closed-form distance
// |s| + |t| - 2 |common prefix|.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "swclab/common.hpp"

namespace swclab {

struct TreeNode {
    std::vector<uint8_t> bits;  // empty = root

    int depth() const { return int(bits.size()); }
    static TreeNode parse(const std::string& s);  // "" or a 0/1 string
    std::string label() const;
};

int tree_distance(const TreeNode& s, const TreeNode& t);

struct MetricGraph {
    enum class Family { Tree, Diamond, Laakso };
    Family family = Family::Tree;
    int level = 0;
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> dist;  // BFS shortest-path lengths

    int vertex_count() const { return int(labels.size()); }
    int edge_count() const { return int(edges.size()); }
    const char* family_name() const;
};

// Heap layout: vertex 0 is the root, node s sits at (1 << |s|) - 1 + value(s).
MetricGraph binary_tree(int n);  // n <= 12
int tree_vertex_index(const TreeNode& s);
TreeNode tree_vertex_node(int index);

MetricGraph diamond(int k);  // k <= 6; endpoints are vertices 0 and 1
MetricGraph laakso(int k);   // k <= 4; endpoints are vertices 0 and 1

}  // namespace swclab
