#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cfvs/vertex_set.hpp"

namespace cfvs {

using Edge = std::pair<Vertex, Vertex>;

// Undirected multigraph on vertices 0..n-1. Loops and parallel edges are
// kept as given; edges are stored with first <= second.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);
    Graph(std::size_t n, const std::vector<Edge>& edges);

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    // Neighbour list with multiplicity; a loop at v lists v once.
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    // Degree counting a loop twice.
    std::size_t degree(Vertex v) const;
    std::size_t edge_multiplicity(Vertex u, Vertex v) const;
    bool has_loop(Vertex v) const { return edge_multiplicity(v, v) > 0; }
    bool adjacent(Vertex u, Vertex v) const { return edge_multiplicity(u, v) > 0; }
    bool is_simple() const;

    VertexSet vertex_set() const { return VertexSet::full(num_vertices()); }
    VertexSet empty_set() const { return VertexSet(num_vertices()); }

    void add_edge(Vertex u, Vertex v);

    friend bool operator==(const Graph& a, const Graph& b);

private:
    void check_vertex(Vertex v) const;

    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

// Disjoint non-empty pieces, kept in canonical form: members sorted inside
// each piece, pieces ordered by their minimum element.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::vector<Vertex>> pieces);

    const std::vector<std::vector<Vertex>>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    bool empty() const { return pieces_.empty(); }
    std::vector<Vertex> ground() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<std::vector<Vertex>> pieces_;
};

// Result of deleting vertices: the induced subgraph plus, for every new
// vertex, its identity in the original graph.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> original;   // new id -> original id
    std::vector<Vertex> relabel;    // original id -> new id, or -1 if deleted

    VertexSet to_original(const VertexSet& s, std::size_t original_n) const;
};

bool is_forest(const Graph& g);
bool is_connected_subset(const Graph& g, const VertexSet& s);
Partition connected_components(const Graph& g, const VertexSet& s);
InducedSubgraph delete_vertices(const Graph& g, const VertexSet& s);
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep);

// g[V \ s] acyclic, computed without materialising the subgraph.
bool is_feedback_vertex_set(const Graph& g, const VertexSet& s);
// s is an FVS of g and g[s] is connected.
bool is_connected_fvs(const Graph& g, const VertexSet& s);

}  // namespace cfvs
