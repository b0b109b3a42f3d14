#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cfvs/generators.hpp"
#include "cfvs/steiner.hpp"
#include "oracles.hpp"

using namespace cfvs;

namespace {

Digraph random_digraph(std::size_t n, double density, std::mt19937_64& rng) {
    Digraph d(n);
    std::bernoulli_distribution arc(density);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v && arc(rng)) d.add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return d;
}

VertexSet random_subset(std::size_t n, std::size_t max_size, std::mt19937_64& rng) {
    VertexSet s(n);
    std::uniform_int_distribution<std::size_t> size(0, max_size);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n) - 1);
    for (std::size_t target = size(rng); s.size() < target;) s.insert(pick(rng));
    return s;
}

GstInstance gst(Graph g, std::vector<std::vector<Vertex>> groups, std::size_t p) {
    GstInstance inst{std::move(g), {}, p};
    for (auto& grp : groups) inst.groups.emplace_back(inst.graph.num_vertices(), grp);
    return inst;
}

Graph path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    return g;
}

}  // namespace

TEST_CASE("branching walk counts") {
    Digraph single(1);
    CHECK(count_branching_walks(single, 0, VertexSet::full(1), 0) == std::vector<BigCount>{1});

    Digraph arc(2);
    arc.add_arc(0, 1);
    // length 2: the root has two ordered children, both mapped to the sink
    CHECK(count_branching_walks(arc, 0, VertexSet::full(2), 2) == std::vector<BigCount>{1, 1, 1});
    CHECK(count_branching_walks(arc, 0, VertexSet::full(2), 3)[3] == 1);

    Digraph fork(3);
    fork.add_arc(0, 1);
    fork.add_arc(0, 2);
    CHECK(count_branching_walks(fork, 0, VertexSet::full(3), 2)[2] == 4);
    CHECK(count_branching_walks(fork, 0, VertexSet(3, {0, 1}), 2)[2] == 1);
    CHECK(count_branching_walks(fork, 1, VertexSet(3, {0, 2}), 2)[0] == 0);

    const auto mod = count_branching_walks_mod(fork, 0, VertexSet::full(3), 2, 1000000007ULL);
    CHECK(mod == std::vector<std::uint64_t>{1, 2, 4});
}

TEST_CASE("walk counts match explicit enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Digraph d = random_digraph(n, 0.4, rng);
        const auto allowed = random_subset(n, n, rng);
        const oracle::Mask am = oracle::to_mask(allowed);
        const auto counts = count_branching_walks(d, 0, allowed, 5);
        for (int j = 0; j <= 5; ++j) CHECK(counts[static_cast<std::size_t>(j)] == oracle::branching_walks(d, 0, am, 0, j));
        const auto mod = count_branching_walks_mod(d, 0, allowed, 5, 1000003ULL);
        for (int j = 0; j <= 5; ++j)
            CHECK(mod[static_cast<std::size_t>(j)] == counts[static_cast<std::size_t>(j)] % 1000003);
    }
}

TEST_CASE("dsot examples") {
    DsotInstance one{Digraph(1), 0, VertexSet(1, {0}), 1};
    CHECK(dsot_decide(one));

    Digraph path3(3);
    path3.add_arc(0, 1);
    path3.add_arc(1, 2);
    DsotInstance inst{path3, 0, VertexSet(3, {2}), 2};
    CHECK_FALSE(dsot_decide(inst));
    inst.max_vertices = 3;
    CHECK(dsot_decide(inst));
    inst.max_vertices = 0;
    CHECK_FALSE(dsot_decide(inst));
}

TEST_CASE("dsot agrees with brute force, both counting modes") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t n = 1 + trial % 7;
        const Digraph d = random_digraph(n, 0.25 + 0.1 * (trial % 4), rng);
        const auto terminals = random_subset(n, std::min<std::size_t>(3, n), rng);
        const auto root = static_cast<Vertex>(rng() % n);
        for (std::size_t p = 0; p <= n + 1; ++p) {
            const DsotInstance inst{d, root, terminals, p};
            const bool expected = oracle::dsot(d, root, oracle::to_mask(terminals), p);
            CHECK(dsot_decide(inst) == expected);
            CountingOptions modular{CountingMode::modular, static_cast<std::uint64_t>(trial), 0};
            CHECK(dsot_decide(inst, modular) == expected);
        }
    }
}

TEST_CASE("gst to dsot reduction") {
    const auto r = reduce_gst_to_dsot(gst(path(3), {{0}, {2}}, 3));
    CHECK(r.digraph.num_vertices() == 5);
    CHECK(r.digraph.num_arcs() == 6);
    CHECK(r.digraph.has_arc(0, 1));
    CHECK(r.digraph.has_arc(1, 0));
    CHECK(r.digraph.has_arc(0, 3));
    CHECK(r.digraph.has_arc(2, 4));
    CHECK_FALSE(r.digraph.has_arc(3, 0));
    CHECK(r.terminals == VertexSet(5, {3, 4}));
    CHECK(r.budget == 5);
    CHECK(r.root_candidates == std::vector<Vertex>{0, 1, 2});

    const auto empty = reduce_gst_to_dsot(gst(path(3), {}, 2));
    CHECK(empty.terminals.empty());
    CHECK(empty.budget == 2);

    const auto k3 = reduce_gst_to_dsot(gst(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), {{0}, {1}, {2}}, 2));
    CHECK(k3.digraph.num_vertices() == 6);
    CHECK(k3.digraph.num_arcs() == 9);
    CHECK(k3.budget == 5);
}

TEST_CASE("gst examples") {
    const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(gst_decide(gst(k3, {{0}, {1}}, 2)));
    CHECK_FALSE(gst_decide(gst(path(3), {{0}, {2}}, 2)));
    CHECK(gst_decide(gst(path(3), {{0}, {2}}, 3)));

    const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(gst_decide(gst(star, {{1}, {2}, {3}}, 4)));
    CHECK_FALSE(gst_decide(gst(star, {{1}, {2}, {3}}, 3)));

    CHECK(gst_extract_tree(gst(k3, {{0}, {1}}, 2)) == VertexSet(3, {0, 1}));
    CHECK_FALSE(gst_extract_tree(gst(path(3), {{0}, {2}}, 2)).has_value());

    CHECK_THROWS_AS(gst_decide(gst(k3, {{0, 1}, {1}}, 2)), std::invalid_argument);
    CHECK_THROWS_AS(gst_decide(gst(k3, {{}}, 2)), std::invalid_argument);
}

TEST_CASE("gst extraction on random yes-instances") {
    std::mt19937_64 rng(17);
    int yes = 0;
    for (int trial = 0; yes < 200 && trial < 2000; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const Graph g = random_gnm(n, n + trial % 5, rng());
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const std::size_t l = 1 + rng() % std::min<std::size_t>(3, n);
        GstInstance inst{g, {}, 1 + rng() % n};
        for (std::size_t i = 0; i < l; ++i) {
            VertexSet grp(n, {order[i]});
            if (rng() % 2 && l + i < n) grp.insert(order[l + i]);
            inst.groups.push_back(grp);
        }
        const auto tree = gst_extract_tree(inst);
        std::vector<oracle::Mask> groups;
        for (const auto& grp : inst.groups) groups.push_back(oracle::to_mask(grp));
        REQUIRE(tree.has_value() == oracle::gst(g, groups, inst.max_vertices));
        if (!tree) continue;
        ++yes;
        CHECK(tree->size() <= inst.max_vertices);
        CHECK(is_connected_subset(g, *tree));
        for (const auto& grp : inst.groups) CHECK(grp.intersects(*tree));
    }
    CHECK(yes == 200);
}

TEST_CASE("primes") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1000000007ULL));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
    const auto p = random_prime_62(42);
    CHECK(is_prime_u64(p));
    CHECK(p >= (std::uint64_t{1} << 61));
    CHECK(p < (std::uint64_t{1} << 62));
    CHECK(random_prime_62(42) == p);
}
