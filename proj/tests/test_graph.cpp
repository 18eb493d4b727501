#include <doctest.h>

#include <sstream>

#include "oracle.hpp"
#include "pnflow/errors.hpp"
#include "pnflow/graph.hpp"
#include "pnflow/synth.hpp"

using namespace pnflow;

namespace {
Graph path4() {
    return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
}
} // namespace

TEST_CASE("edge list loading") {
    SUBCASE("path graph") {
        std::istringstream in("0 1\n1 2\n");
        auto [g, labels] = load_edge_list(in);
        CHECK(g.num_nodes() == 3);
        CHECK(g.num_edges() == 2);
        CHECK(g.degree(0) == 1);
        CHECK(g.degree(1) == 2);
        CHECK(g.degree(2) == 1);
    }
    SUBCASE("reversed duplicate merged") {
        std::istringstream in("0 1\n1 0\n");
        auto res = load_edge_list(in);
        CHECK(res.graph.num_edges() == 1);
    }
    SUBCASE("self-loop rejected") {
        std::istringstream in("0 0\n");
        CHECK_THROWS_AS(load_edge_list(in), ValidationError);
    }
    SUBCASE("malformed line reports line number") {
        std::istringstream in("0 1\n1 two\n");
        try {
            load_edge_list(in);
            FAIL("expected ParseError");
        } catch (const ParseError &e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("disconnected input rejected") {
        std::istringstream in("0 1\n2 3\n");
        CHECK_THROWS_AS(load_edge_list(in), ConnectivityError);
    }
    SUBCASE("sparse ids remapped densely") {
        std::istringstream in("10 100\n100 7\n");
        auto [g, labels] = load_edge_list(in);
        CHECK(g.num_nodes() == 3);
        CHECK(labels == std::vector<std::uint64_t>{7, 10, 100});
    }
    SUBCASE("one-based ids") {
        std::istringstream in("1 2\n2 3\n");
        auto res = load_edge_list(in, {.one_based = true});
        CHECK(res.graph.num_nodes() == 3);
        CHECK(res.labels.front() == 0);
    }
    SUBCASE("comments and blank lines ignored") {
        std::istringstream in("# a comment\n\n0 1 # trailing\n");
        CHECK(load_edge_list(in).graph.num_edges() == 1);
    }
}

TEST_CASE("component selection") {
    std::istringstream in("0 1\n2 3\n3 4\n");
    auto res = load_edge_list(in, {.require_connected = false});
    NodeSet comp = connected_component(res.graph, 2);
    CHECK(comp.size() == 3);
    auto sub = induced_subgraph(res.graph, comp);
    CHECK(sub.graph.num_nodes() == 3);
    CHECK(sub.graph.num_edges() == 2);
    CHECK(sub.graph.is_connected());
    CHECK(sub.to_original[sub.from_original[3]] == 3);
}

TEST_CASE("volume") {
    Graph g = path4();
    CHECK(g.volume(NodeSet({0, 1})) == 3);
    CHECK(g.volume(NodeSet{}) == 0);
    CHECK(g.volume(NodeSet({0, 1, 2, 3})) == 6); // 2m
}

TEST_CASE("cut size") {
    Graph g = path4();
    CHECK(g.cut_size(NodeSet({0, 1})) == 1);
    CHECK(g.cut_size(NodeSet({0, 1, 2, 3})) == 0);
    Graph cycle = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(cycle.cut_size(NodeSet({0, 1})) == 2);
}

TEST_CASE("conductance") {
    Graph g = path4();
    CHECK(g.conductance(NodeSet({0, 1})) == doctest::Approx(1.0 / 3.0));
    Graph edge = Graph::from_edges(2, {{0, 1}});
    CHECK(edge.conductance(NodeSet({0})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(g.conductance(NodeSet{}), DegenerateSupportError);
    CHECK_THROWS_AS(g.conductance(NodeSet({0, 1, 2, 3})), DegenerateSupportError);

    Dumbbell d = gen_dumbbell(7, 7);
    CHECK(d.graph.conductance(d.left) ==
          doctest::Approx(1.0 / static_cast<double>(d.graph.volume(d.left))));
}

TEST_CASE("conductance symmetry and bounds on random graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = testing::random_connected_graph(12, 0.3, 1000 + seed);
        Rng rng(seed);
        std::vector<node_t> members;
        for (node_t v = 0; v < g.num_nodes(); ++v)
            if (rng.next_double() < 0.5)
                members.push_back(v);
        if (members.empty() || members.size() == g.num_nodes())
            continue;
        NodeSet s(members);
        std::vector<node_t> rest;
        for (node_t v = 0; v < g.num_nodes(); ++v)
            if (!s.contains(v))
                rest.push_back(v);
        NodeSet c(rest);
        CHECK(g.cut_size(s) == g.cut_size(c));
        CHECK(g.conductance(s) == doctest::Approx(g.conductance(c)));
        CHECK(g.conductance(s) <= 1.0);
        CHECK(g.cut_size(s) <= std::min(g.volume(s), g.volume(c)));
    }
}

TEST_CASE("edge list round-trip") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = testing::random_connected_graph(15, 0.25, 2000 + seed);
        std::ostringstream out;
        write_edge_list(out, g);
        std::istringstream in(out.str());
        Graph h = load_edge_list(in).graph;
        REQUIRE(h.num_nodes() == g.num_nodes());
        REQUIRE(h.num_edges() == g.num_edges());
        for (node_t v = 0; v < g.num_nodes(); ++v) {
            auto a = g.neighbors(v), b = h.neighbors(v);
            CHECK(std::vector<node_t>(a.begin(), a.end()) ==
                  std::vector<node_t>(b.begin(), b.end()));
        }
    }
}

TEST_CASE("node set serialization") {
    NodeSet s({3, 1, 4, 1, 5});
    std::ostringstream out;
    write_node_set(out, s);
    std::istringstream in(out.str());
    CHECK(read_node_set(in) == s);
}
