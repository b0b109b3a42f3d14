#include "cfvs/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cfvs {

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    Vertex find(Vertex v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            auto& p = parent[static_cast<std::size_t>(v)];
            p = parent[static_cast<std::size_t>(p)];
            v = p;
        }
        return v;
    }
    bool unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }
    std::vector<Vertex> parent;
};

}  // namespace

Graph::Graph(std::size_t n) : adj_(n) {}

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= adj_.size())
        throw std::out_of_range("edge endpoint " + std::to_string(v) + " is not a vertex of a graph with " +
                                std::to_string(adj_.size()) + " vertices");
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
    adj_[static_cast<std::size_t>(u)].push_back(v);
    if (u != v) adj_[static_cast<std::size_t>(v)].push_back(u);
}

std::size_t Graph::degree(Vertex v) const {
    std::size_t d = 0;
    for (Vertex w : neighbors(v)) d += (w == v) ? 2 : 1;
    return d;
}

std::size_t Graph::edge_multiplicity(Vertex u, Vertex v) const {
    const auto& nb = neighbors(u);
    return static_cast<std::size_t>(std::count(nb.begin(), nb.end(), v));
}

bool Graph::is_simple() const {
    auto sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].first == sorted[i].second) return false;
        if (i > 0 && sorted[i] == sorted[i - 1]) return false;
    }
    return true;
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.num_vertices() != b.num_vertices()) return false;
    auto ea = a.edges_;
    auto eb = b.edges_;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
}

Partition::Partition(std::vector<std::vector<Vertex>> pieces) : pieces_(std::move(pieces)) {
    for (auto& p : pieces_) {
        if (p.empty()) throw std::invalid_argument("partition piece is empty");
        std::sort(p.begin(), p.end());
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    auto all = ground();
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("partition pieces overlap");
}

std::vector<Vertex> Partition::ground() const {
    std::vector<Vertex> all;
    for (const auto& p : pieces_) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    return all;
}

VertexSet InducedSubgraph::to_original(const VertexSet& s, std::size_t original_n) const {
    VertexSet out(original_n);
    s.for_each([&](Vertex v) { out.insert(original[static_cast<std::size_t>(v)]); });
    return out;
}

bool is_forest(const Graph& g) { return is_feedback_vertex_set(g, g.empty_set()); }

bool is_feedback_vertex_set(const Graph& g, const VertexSet& s) {
    DisjointSets ds(g.num_vertices());
    for (auto [u, v] : g.edges()) {
        if (s.contains(u) || s.contains(v)) continue;
        if (!ds.unite(u, v)) return false;
    }
    return true;
}

Partition connected_components(const Graph& g, const VertexSet& s) {
    DisjointSets ds(g.num_vertices());
    for (auto [u, v] : g.edges())
        if (s.contains(u) && s.contains(v)) ds.unite(u, v);
    std::vector<std::vector<Vertex>> pieces;
    std::vector<int> slot(g.num_vertices(), -1);
    s.for_each([&](Vertex v) {
        const auto root = static_cast<std::size_t>(ds.find(v));
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(pieces.size());
            pieces.emplace_back();
        }
        pieces[static_cast<std::size_t>(slot[root])].push_back(v);
    });
    return Partition(std::move(pieces));
}

bool is_connected_subset(const Graph& g, const VertexSet& s) {
    return connected_components(g, s).size() <= 1;
}

bool is_connected_fvs(const Graph& g, const VertexSet& s) {
    return is_feedback_vertex_set(g, s) && is_connected_subset(g, s);
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
    InducedSubgraph out;
    out.relabel.assign(g.num_vertices(), -1);
    keep.for_each([&](Vertex v) {
        if (static_cast<std::size_t>(v) >= g.num_vertices()) return;
        out.relabel[static_cast<std::size_t>(v)] = static_cast<Vertex>(out.original.size());
        out.original.push_back(v);
    });
    out.graph = Graph(out.original.size());
    for (auto [u, v] : g.edges()) {
        const Vertex a = out.relabel[static_cast<std::size_t>(u)];
        const Vertex b = out.relabel[static_cast<std::size_t>(v)];
        if (a >= 0 && b >= 0) out.graph.add_edge(a, b);
    }
    return out;
}

InducedSubgraph delete_vertices(const Graph& g, const VertexSet& s) {
    return induced_subgraph(g, g.vertex_set() - s);
}

}  // namespace cfvs
