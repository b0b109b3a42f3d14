#pragma once

#include <cstddef>
#include <cstdint>

#include "cfvs/graph.hpp"
#include "cfvs/tree_decomposition.hpp"

namespace cfvs {

// Deterministic for a given seed (std::mt19937_64).

// Uniform simple graph with exactly m edges; m is clamped to n(n-1)/2.
Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

// m edges with independently uniform endpoints, so loops and parallel
// edges occur.
Graph random_multigraph(std::size_t n, std::size_t m, std::uint64_t seed);

// r vertex-disjoint cycles of length len; len 1 is a loop, len 2 a
// parallel pair.
Graph disjoint_cycles(std::size_t r, std::size_t len);

Graph grid_graph(std::size_t width, std::size_t height);

struct GraphWithDecomposition {
    Graph graph;
    TreeDecomposition td;
};

// Random k-tree on n >= k+1 vertices, each edge then kept with probability
// keep; the decomposition has width k.
GraphWithDecomposition random_partial_ktree(std::size_t n, std::size_t k, double keep, std::uint64_t seed);

}  // namespace cfvs
