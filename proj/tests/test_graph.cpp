#include <set>
#include <sstream>
#include <tuple>

#include "altkit/graph.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace altkit;

namespace {

using EdgeKey = std::tuple<VertexId, VertexId, double>;

std::multiset<EdgeKey> edge_multiset(const Graph& g) {
    std::multiset<EdgeKey> s;
    for (const Edge& e : g.edges()) s.insert({e.from, e.to, e.weight});
    return s;
}

}  // namespace

TEST_CASE("dimacs parser handles the basic format") {
    std::istringstream in("c comment line\np sp 2 1\na 1 2 5\n");
    const Graph g = parse_dimacs_gr(in);
    CHECK(g.num_vertices() == 2);
    CHECK(g.directed());
    REQUIRE(g.num_edges() == 1);
    CHECK(g.edges()[0].from == 0);
    CHECK(g.edges()[0].to == 1);
    CHECK(g.edges()[0].weight == 5.0);
}

TEST_CASE("dimacs parser accepts empty edge sets") {
    std::istringstream in("p sp 3 0\n");
    const Graph g = parse_dimacs_gr(in);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("dimacs parser errors name the line number") {
    SUBCASE("vertex out of range") {
        std::istringstream in("p sp 3 1\na 1 4 2\n");
        CHECK_THROWS_WITH_AS(parse_dimacs_gr(in), doctest::Contains("line 2"),
                             std::runtime_error);
    }
    SUBCASE("malformed header") {
        std::istringstream in("p shortest 3 1\n");
        CHECK_THROWS_AS(parse_dimacs_gr(in), std::runtime_error);
    }
    SUBCASE("non-positive weight") {
        std::istringstream in("p sp 2 1\na 1 2 0\n");
        CHECK_THROWS_WITH_AS(parse_dimacs_gr(in), doctest::Contains("line 2"),
                             std::runtime_error);
    }
    SUBCASE("missing header") {
        std::istringstream in("c nothing here\n");
        CHECK_THROWS_AS(parse_dimacs_gr(in), std::runtime_error);
    }
}

TEST_CASE("self-loops are dropped with a warning, parallel edges kept") {
    std::ostringstream warn;
    std::istringstream in("p sp 2 3\na 1 1 4\na 1 2 3\na 1 2 7\n");
    const Graph g = parse_dimacs_gr(in, &warn);
    CHECK(g.num_edges() == 2);
    CHECK(g.dropped_self_loops() == 1);
    CHECK(warn.str().find("self-loop") != std::string::npos);
}

TEST_CASE("gr round-trip preserves the edge multiset") {
    const Graph g = testing_oracles::random_graph(40, 120, /*directed=*/true, 99);
    std::ostringstream out;
    write_dimacs_gr(g, out);
    std::istringstream in(out.str());
    const Graph back = parse_dimacs_gr(in);
    CHECK(back.num_vertices() == g.num_vertices());
    CHECK(edge_multiset(back) == edge_multiset(g));
}

TEST_CASE("edge-list round-trip and comments") {
    std::istringstream in("# header\n0 1 2.5\n1 2 1\n");
    const Graph g = parse_edge_list(in, /*directed=*/false);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in2(out.str());
    const Graph back = parse_edge_list(in2, false);
    CHECK(edge_multiset(back) == edge_multiset(g));
}

TEST_CASE("sbm degenerate probabilities") {
    SUBCASE("p_in = 1 gives a clique") {
        const Graph g = gen_sbm(1, 4, 1.0, 0.0, 1.0, 1.0, 7);
        CHECK(g.num_vertices() == 4);
        CHECK(g.num_edges() == 6);  // K4
        for (const Edge& e : g.edges()) CHECK(e.weight == 1.0);
    }
    SUBCASE("zero probabilities give isolated vertices") {
        const Graph g = gen_sbm(2, 3, 0.0, 0.0, 1.0, 1.0, 7);
        CHECK(g.num_vertices() == 6);
        CHECK(g.num_edges() == 0);
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(gen_sbm(0, 5, 0.5, 0.1, 1, 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_sbm(2, 0, 0.5, 0.1, 1, 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_sbm(2, 5, 0.5, 0.1, 0.0, 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_sbm(2, 5, 1.5, 0.1, 1, 2, 1), std::invalid_argument);
    }
}

TEST_CASE("generators are bit-reproducible and weights stay in range") {
    const Graph a = gen_sbm(3, 20, 0.2, 0.02, 1.0, 10.0, 42);
    const Graph b = gen_sbm(3, 20, 0.2, 0.02, 1.0, 10.0, 42);
    CHECK(edge_multiset(a) == edge_multiset(b));
    const Graph c = gen_sbm(3, 20, 0.2, 0.02, 1.0, 10.0, 43);
    CHECK(edge_multiset(a) != edge_multiset(c));
    for (const Edge& e : a.edges()) {
        CHECK(e.weight >= 1.0);
        CHECK(e.weight <= 10.0);
        CHECK(e.weight > 0.0);
    }

    const Graph ba1 = gen_ba(200, 3, 1.0, 10.0, 11);
    const Graph ba2 = gen_ba(200, 3, 1.0, 10.0, 11);
    CHECK(edge_multiset(ba1) == edge_multiset(ba2));
}

TEST_CASE("barabasi-albert shape") {
    SUBCASE("n=3, m=1 is a tree") {
        const Graph g = gen_ba(3, 1, 1.0, 1.0, 5);
        CHECK(g.num_vertices() == 3);
        CHECK(g.num_edges() == 2);  // seed K2 + one attachment
        const ComponentReport rep = components(g);
        CHECK(rep.largest_weak.size() == 3);
    }
    SUBCASE("edge count formula") {
        // seed clique C(m+1, 2) + (n - m - 1) * m
        const Graph g = gen_ba(100, 5, 1.0, 10.0, 3);
        CHECK(g.num_edges() == 15 + 94 * 5);
    }
    SUBCASE("precondition") { CHECK_THROWS_AS(gen_ba(2, 2, 1, 1, 1), std::invalid_argument); }
}

TEST_CASE("benchmark-shaped generator instances") {
    const Graph sbm = gen_sbm(5, 2000, 0.05, 0.001, 1.0, 10.0, 42);
    CHECK(sbm.num_vertices() == 10000);
    CHECK(components(sbm).largest_weak.size() == 10000);  // dense enough to connect
    const Graph ba = gen_ba(10000, 5, 1.0, 10.0, 42);
    CHECK(ba.num_vertices() == 10000);
    CHECK(ba.num_edges() == 15 + (10000 - 6) * 5);
}

TEST_CASE("path generator") {
    const Graph p7 = gen_path(7);
    CHECK(p7.num_vertices() == 7);
    CHECK(p7.num_edges() == 6);
    CHECK_FALSE(p7.directed());
    for (const Edge& e : p7.edges()) CHECK(e.weight == 1.0);
    CHECK_THROWS_AS(gen_path(1), std::invalid_argument);
}

TEST_CASE("components on undirected graphs") {
    SUBCASE("P7 is one component") {
        const ComponentReport rep = components(gen_path(7));
        CHECK(rep.largest_weak.size() == 7);
        for (std::size_t v = 1; v < 7; ++v)
            CHECK(rep.weak_component_id[v] == rep.weak_component_id[0]);
    }
    SUBCASE("two disjoint edges give two components of size 2") {
        const Graph g = Graph::build(
            4, false, {{0, 1, 1.0}, {2, 3, 1.0}});
        const ComponentReport rep = components(g);
        CHECK(rep.largest_weak.size() == 2);
        CHECK(rep.weak_component_id[0] == rep.weak_component_id[1]);
        CHECK(rep.weak_component_id[2] == rep.weak_component_id[3]);
        CHECK(rep.weak_component_id[0] != rep.weak_component_id[2]);
    }
}

TEST_CASE("strongly connected components on a cycle with a tail") {
    // 0 -> 1 -> 2 -> 0 plus arc 2 -> 3: SCCs {0,1,2} and {3}.
    const Graph g = Graph::build(
        4, true, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}, {2, 3, 1.0}});
    const ComponentReport rep = components(g);
    CHECK(rep.largest_strong == std::vector<VertexId>{0, 1, 2});
    CHECK(rep.strong_component_id[0] == rep.strong_component_id[1]);
    CHECK(rep.strong_component_id[1] == rep.strong_component_id[2]);
    CHECK(rep.strong_component_id[3] != rep.strong_component_id[0]);
    CHECK(rep.largest_weak.size() == 4);  // weakly connected overall
}

TEST_CASE("build validates endpoints and weights") {
    CHECK_THROWS_AS(Graph::build(2, false, {{0, 5, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::build(2, false, {{0, 1, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::build(2, false, {{0, 1, 0.0}}), std::invalid_argument);
}
