#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfvs/generators.hpp"
#include "cfvs/graph.hpp"
#include "cfvs/graph_io.hpp"
#include "oracles.hpp"

using namespace cfvs;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    return g;
}

}  // namespace

TEST_CASE("vertex set basics") {
    VertexSet s(70, {0, 5, 64, 69});
    CHECK(s.size() == 4);
    CHECK(s.contains(64));
    CHECK_FALSE(s.contains(63));
    CHECK(s.members() == std::vector<Vertex>{0, 5, 64, 69});
    CHECK(s.to_string() == "{0,5,64,69}");
    auto c = s.complement();
    CHECK(c.size() == 66);
    CHECK_FALSE(c.intersects(s));
    CHECK((c | s) == VertexSet::full(70));
    s.erase(5);
    CHECK(s.first() == 0);
    CHECK(s.next(0) == 64);
    CHECK_THROWS_AS(s.insert(70), std::out_of_range);
    CHECK(VertexSet(3, {0, 2}) < VertexSet(3, {1}));
}

TEST_CASE("parse_graph formats") {
    SUBCASE("pace path") {
        const Graph g = parse_graph("p tw 3 2\n1 2\n2 3\n");
        CHECK(g.num_vertices() == 3);
        CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    }
    SUBCASE("dimacs empty") {
        const Graph g = parse_graph("p edge 1 0\n");
        CHECK(g.num_vertices() == 1);
        CHECK(g.num_edges() == 0);
    }
    SUBCASE("parallel pair kept") {
        const Graph g = parse_graph("p tw 2 2\n1 2\n1 2\n");
        CHECK(g.num_edges() == 2);
        CHECK(g.edge_multiplicity(0, 1) == 2);
        CHECK_FALSE(g.is_simple());
    }
    SUBCASE("dimacs with comments and loop") {
        const Graph g = parse_graph("c hello\np edge 2 2\ne 1 1\ne 1 2\n");
        CHECK(g.has_loop(0));
        CHECK(g.degree(0) == 3);
    }
    SUBCASE("edge list") {
        const Graph g = parse_graph("# x\n3 1\n3 1\n", GraphFormat::edge_list);
        CHECK(g.edges() == std::vector<Edge>{{0, 2}});
    }
    SUBCASE("errors carry line numbers") {
        try {
            (void)parse_graph("p tw 3 1\n1 4\n");
            FAIL("no throw");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
        CHECK_THROWS_AS((void)parse_graph("p tw 3 2\n1 2\n"), ParseError);
        CHECK_THROWS_AS((void)parse_graph("p tw 3 1\n1 x\n"), ParseError);
        CHECK_THROWS_AS((void)parse_graph(""), ParseError);
    }
    SUBCASE("round trip") {
        const Graph g = random_multigraph(8, 14, 3);
        CHECK(parse_graph(write_graph_gr(g)) == g);
    }
}

TEST_CASE("groups file") {
    const auto groups = parse_groups("# two groups\n1 3\n\n2\n", 4);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0] == VertexSet(4, {0, 2}));
    CHECK(groups[1] == VertexSet(4, {1}));
    CHECK(parse_groups(write_groups(groups), 4) == groups);
    CHECK_THROWS_AS((void)parse_groups("5\n", 4), ParseError);
}

TEST_CASE("is_forest") {
    CHECK_FALSE(is_forest(triangle()));
    CHECK(is_forest(path(4)));
    CHECK_FALSE(is_forest(Graph(1, {{0, 0}})));
    CHECK_FALSE(is_forest(Graph(2, {{0, 1}, {0, 1}})));
    CHECK(is_forest(Graph(0)));
}

TEST_CASE("connectivity") {
    const Graph p3 = path(3);
    CHECK_FALSE(is_connected_subset(p3, VertexSet(3, {0, 2})));
    CHECK(is_connected_subset(p3, p3.empty_set()));
    CHECK(is_connected_subset(triangle(), triangle().vertex_set()));

    const Graph two_edges(4, {{0, 1}, {2, 3}});
    CHECK(connected_components(two_edges, two_edges.vertex_set()).size() == 2);
    CHECK(connected_components(two_edges, two_edges.empty_set()).empty());

    const Graph c5 = disjoint_cycles(1, 5);
    auto rest = c5.vertex_set();
    rest.erase(2);
    CHECK(connected_components(c5, rest).size() == 1);
    CHECK(connected_components(two_edges, two_edges.vertex_set()).pieces() ==
          std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}});
}

TEST_CASE("delete_vertices") {
    const auto t = delete_vertices(triangle(), VertexSet(3, {1}));
    CHECK(t.graph.num_vertices() == 2);
    CHECK(t.graph.num_edges() == 1);
    CHECK(t.original == std::vector<Vertex>{0, 2});
    CHECK(t.relabel == std::vector<Vertex>{0, -1, 1});

    const Graph g = random_multigraph(6, 9, 1);
    const auto same = delete_vertices(g, g.empty_set());
    CHECK(same.graph == g);

    const auto c4 = delete_vertices(disjoint_cycles(1, 4), VertexSet(4, {0, 1}));
    CHECK(c4.graph.num_edges() == 1);
}

TEST_CASE("partition canonical form") {
    const Partition a({{3, 1}, {0}});
    CHECK(a.pieces() == std::vector<std::vector<Vertex>>{{0}, {1, 3}});
    CHECK(a.ground() == std::vector<Vertex>{0, 1, 3});
    CHECK_THROWS((void)Partition({{0, 1}, {1}}));
    CHECK_THROWS((void)Partition(std::vector<std::vector<Vertex>>{{}}));
}

TEST_CASE("forest and CFVS predicates agree with DFS oracle") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::size_t n = 1 + seed % 9;
        const Graph g = random_multigraph(n, seed % 13, seed);
        std::mt19937 rng(static_cast<unsigned>(seed));
        const oracle::Mask s = rng() & oracle::all_vertices(g);
        const auto set = oracle::to_set(s, n);
        CHECK(is_forest(g) == !oracle::has_cycle(g, oracle::all_vertices(g)));
        CHECK(is_feedback_vertex_set(g, set) == oracle::is_fvs(g, s));
        CHECK(is_connected_subset(g, set) == oracle::connected(g, s));
        CHECK(is_connected_fvs(g, set) == oracle::is_cfvs(g, s));
    }
}

TEST_CASE("generators") {
    const Graph cycles = disjoint_cycles(3, 4);
    CHECK(cycles.num_vertices() == 12);
    CHECK(cycles.num_edges() == 12);
    CHECK(disjoint_cycles(2, 1).has_loop(1));
    CHECK(disjoint_cycles(1, 2).edge_multiplicity(0, 1) == 2);
    const Graph grid = grid_graph(4, 4);
    CHECK(grid.num_edges() == 24);
    CHECK(random_gnm(10, 15, 4) == random_gnm(10, 15, 4));
    CHECK(random_gnm(10, 15, 4).is_simple());
    CHECK(random_gnm(10, 15, 4).num_edges() == 15);
    CHECK(random_gnm(4, 100, 1).num_edges() == 6);
}
