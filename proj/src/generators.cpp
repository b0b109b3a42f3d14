#include "cfvs/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace cfvs {

Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> all;
    for (Vertex u = 0; static_cast<std::size_t>(u) < n; ++u)
        for (Vertex v = u + 1; static_cast<std::size_t>(v) < n; ++v) all.emplace_back(u, v);
    m = std::min(m, all.size());
    // Partial Fisher-Yates: the first m slots are a uniform m-subset.
    for (std::size_t i = 0; i < m; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
        std::swap(all[i], all[pick(rng)]);
    }
    all.resize(m);
    std::sort(all.begin(), all.end());
    return Graph(n, all);
}

Graph random_multigraph(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0 && m > 0) throw std::invalid_argument("edges need vertices");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n) - 1);
    Graph g(n);
    for (std::size_t i = 0; i < m; ++i) {
        const Vertex u = pick(rng);
        g.add_edge(u, pick(rng));
    }
    return g;
}

Graph disjoint_cycles(std::size_t r, std::size_t len) {
    if (len == 0) throw std::invalid_argument("cycle length must be positive");
    Graph g(r * len);
    for (std::size_t c = 0; c < r; ++c) {
        const auto base = static_cast<Vertex>(c * len);
        for (std::size_t i = 0; i < len; ++i)
            g.add_edge(base + static_cast<Vertex>(i), base + static_cast<Vertex>((i + 1) % len));
    }
    return g;
}

Graph grid_graph(std::size_t width, std::size_t height) {
    Graph g(width * height);
    auto id = [&](std::size_t x, std::size_t y) { return static_cast<Vertex>(y * width + x); };
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            if (x + 1 < width) g.add_edge(id(x, y), id(x + 1, y));
            if (y + 1 < height) g.add_edge(id(x, y), id(x, y + 1));
        }
    }
    return g;
}

GraphWithDecomposition random_partial_ktree(std::size_t n, std::size_t k, double keep, std::uint64_t seed) {
    if (n < k + 1) throw std::invalid_argument("a k-tree needs at least k+1 vertices");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution kept(keep);
    std::set<Edge> edges;
    auto connect = [&](Vertex u, Vertex v) {
        if (kept(rng)) edges.emplace(std::min(u, v), std::max(u, v));
    };

    GraphWithDecomposition out;
    std::vector<Vertex> base(k + 1);
    for (std::size_t i = 0; i <= k; ++i) base[i] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = i + 1; j <= k; ++j) connect(base[i], base[j]);
    out.td.bags.push_back(base);

    // Each k-clique is remembered with a bag that contains it.
    std::vector<std::pair<std::vector<Vertex>, int>> cliques;
    for (std::size_t drop = 0; drop <= k; ++drop) {
        auto c = base;
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(drop));
        cliques.emplace_back(std::move(c), 0);
    }
    for (std::size_t v = k + 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, cliques.size() - 1);
        const auto [clique, host] = cliques[pick(rng)];
        for (Vertex u : clique) connect(u, static_cast<Vertex>(v));
        auto bag = clique;
        bag.push_back(static_cast<Vertex>(v));
        std::sort(bag.begin(), bag.end());
        const int id = static_cast<int>(out.td.bags.size());
        out.td.bags.push_back(bag);
        out.td.tree_edges.emplace_back(host, id);
        for (std::size_t drop = 0; drop < clique.size(); ++drop) {
            auto c = clique;
            c[drop] = static_cast<Vertex>(v);
            std::sort(c.begin(), c.end());
            cliques.emplace_back(std::move(c), id);
        }
    }
    out.graph = Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
    return out;
}

}  // namespace cfvs
