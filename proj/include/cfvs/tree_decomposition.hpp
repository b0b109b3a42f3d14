#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfvs/graph.hpp"

namespace cfvs {

// Unrooted tree of bags. Bags are kept sorted and duplicate free.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> tree_edges;

    // max bag size - 1; -1 for an empty decomposition.
    int width() const;
    void normalize();
};

bool validate_td(const Graph& g, const TreeDecomposition& td);

// Min-fill elimination ordering (ties: min degree, then lowest id).
TreeDecomposition greedy_td(const Graph& g);

enum class NodeKind { leaf, introduce, forget, join };

const char* to_string(NodeKind kind);

struct NiceNode {
    NodeKind kind = NodeKind::leaf;
    Vertex vertex = -1;  // introduced or forgotten vertex
    std::vector<Vertex> bag;
    std::vector<int> children;
};

// Rooted; the root bag is empty and leaves hold at most one vertex.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
    // Kind-specific shape conditions (children counts, bag relations).
    bool check_structure() const;
    TreeDecomposition as_tree_decomposition() const;
    // Children before parents.
    std::vector<int> postorder() const;
};

// Throws std::invalid_argument if `td` is not a tree or a vertex's bags are
// not connected.
NiceTreeDecomposition nicify(const TreeDecomposition& td);

// PACE .td: "s td N W+1 n", "b i v1 v2 ..." and "i j" tree edges, 1-indexed.
TreeDecomposition parse_td(std::string_view text);
std::string write_td(const TreeDecomposition& td, std::size_t n);

}  // namespace cfvs
