// Core multigraph structure: construction, adjacency, components, cycles,
// isomorphism, and the small exact-integer matrix type.
#include <algorithm>
#include <set>

#include "doctest.h"
#include "meteor/graph.hpp"
#include "support.hpp"

using namespace meteor;
using namespace testsupport;

TEST_CASE("construction indexes edges and degrees") {
    Graph g = six_four();
    CHECK(g.vertex_count() == 13);
    CHECK(g.edge_count() == 19);
    CHECK(g.has_vertex(10));
    CHECK(!g.has_vertex(13));
    CHECK(g.edge(12).src == 10);
    CHECK(g.edge(12).dst == 11);
    CHECK(g.out_degree(10) == 4);   // u -> v1, v2, b1, b2
    CHECK(g.in_degree(6) == 4);     // b4, u, v1, v2 -> b1
    CHECK(g.out_edges(10) == std::vector<EdgeId>{12, 13, 14, 15});
    CHECK(g.in_edges(11) == std::vector<EdgeId>{11, 12});
    CHECK(!g.is_sink(6));
    CHECK(!g.is_source(0));
    CHECK(g.vertex_label(10) == "u");
    CHECK(g.vertex_label(0) == "a1");
    CHECK(g.edge_label(0) == "e0");  // fallback
    CHECK(g.vertex_position(6) == 6);
    CHECK(g.max_vertex_id() == 12);
    CHECK(g.max_edge_id() == 18);
}

TEST_CASE("construction rejects structurally invalid input") {
    CHECK_THROWS_AS(Graph({0}, {{0, 0, 1}}), graph_error);  // unknown range
    CHECK_THROWS_AS(Graph({0, 0}, {}), graph_error);        // duplicate vertex
    CHECK_THROWS_AS(Graph({0, 1}, {{0, 0, 1}, {0, 1, 0}}),
                    graph_error);                            // duplicate edge id
}

TEST_CASE("adjacency matrix and graph round trip") {
    Graph g = dumbbell();
    IntMatrix a = adjacency_matrix(g);
    CHECK(a.rows() == 2);
    CHECK(a.at(0, 0) == 1);
    CHECK(a.at(0, 1) == 1);
    CHECK(a.at(1, 0) == 0);
    CHECK(a.at(1, 1) == 1);

    Graph h = graph_from_matrix(a);
    CHECK(adjacency_matrix(h) == a);
    CHECK(h.vertex_count() == 2);
    CHECK(h.edge_count() == 3);

    IntMatrix m(2, 2);
    m.at(0, 1) = 3;
    m.at(1, 0) = 2;
    CHECK(adjacency_matrix(graph_from_matrix(m)) == m);
}

TEST_CASE("matrix arithmetic") {
    IntMatrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 2;
    a.at(1, 1) = 1;
    IntMatrix id = IntMatrix::identity(2);
    CHECK(a * id == a);
    CHECK(matrix_power(a, 0) == id);
    CHECK(matrix_power(a, 3) == a * a * a);
    IntMatrix p = a * a;
    CHECK(p.at(0, 1) == 4);
    CHECK(p.at(0, 0) == 1);
}

TEST_CASE("essentiality") {
    CHECK(is_essential(dumbbell()));
    CHECK(is_essential(six_four()));
    CHECK(is_essential(three_cycles()));
    CHECK(!is_essential(Graph({0, 1}, {{0, 0, 1}})));      // source and sink
    CHECK(!is_essential(Graph({0}, {})));                  // isolated
    CHECK(is_essential(Graph({}, {})) == false);           // empty graph
}

TEST_CASE("strongly connected components in topological order") {
    Graph g = six_four();
    SccDecomposition scc = scc_decomposition(g);
    // 2 cycle components plus 3 trivial interior components.
    CHECK(scc.components.size() == 5);
    std::vector<std::vector<VertexId>> nontrivial;
    for (const auto& comp : scc.components)
        if (comp.size() > 1) nontrivial.push_back(comp);
    REQUIRE(nontrivial.size() == 2);
    CHECK(nontrivial[0] == std::vector<VertexId>{0, 1, 2, 3, 4, 5});
    CHECK(nontrivial[1] == std::vector<VertexId>{6, 7, 8, 9});
    // Topological order: the source component strictly precedes every
    // component it reaches.
    int source_idx = scc.component_of.at(0);
    int sink_idx = scc.component_of.at(6);
    CHECK(source_idx < scc.component_of.at(10));
    CHECK(scc.component_of.at(10) < sink_idx);
    CHECK(scc.condensation_edges.count({source_idx, scc.component_of.at(10)}) == 1);
}

TEST_CASE("simple cycle enumeration") {
    SUBCASE("fixtures") {
        std::vector<Cycle> cs = simple_cycles(six_four());
        REQUIRE(cs.size() == 2);
        std::multiset<int> lens;
        for (const Cycle& c : cs) lens.insert(c.length());
        CHECK(lens == std::multiset<int>{4, 6});

        cs = simple_cycles(three_cycles());
        REQUIRE(cs.size() == 3);
        lens.clear();
        for (const Cycle& c : cs) lens.insert(c.length());
        CHECK(lens == std::multiset<int>{2, 3, 4});
    }
    SUBCASE("canonical rotation starts at the minimal vertex") {
        for (const Cycle& c : simple_cycles(six_four())) {
            VertexId mn = *std::min_element(c.vertex_order.begin(),
                                            c.vertex_order.end());
            CHECK(c.vertex_order.front() == mn);
            REQUIRE(c.edges.size() == c.vertex_order.size());
            Graph g = six_four();
            for (size_t i = 0; i < c.edges.size(); ++i) {
                CHECK(g.edge(c.edges[i]).src == c.vertex_order[i]);
                CHECK(g.edge(c.edges[i]).dst ==
                      c.vertex_order[(i + 1) % c.vertex_order.size()]);
            }
        }
    }
    SUBCASE("parallel edges give distinct cycles") {
        Graph g({0, 1}, {{0, 0, 1}, {1, 0, 1}, {2, 1, 0}});
        CHECK(simple_cycles(g).size() == 2);
    }
}

TEST_CASE("isomorphism search and verification") {
    Rng rng(7001);
    SUBCASE("relabeled copy is isomorphic") {
        for (int i = 0; i < 20; ++i) {
            Graph g = random_digraph(rng, 5);
            std::vector<VertexId> vs;
            std::vector<Edge> es;
            for (VertexId v : g.vertices()) vs.push_back(v + 100);
            for (const Edge& e : g.edges())
                es.push_back({e.id + 50, e.src + 100, e.dst + 100});
            Graph h(vs, es);
            auto iso = is_isomorphic(g, h);
            REQUIRE(iso.has_value());
            CHECK(verify_isomorphism(g, h, *iso));
            auto back = is_isomorphic(h, g);
            REQUIRE(back.has_value());
            CHECK(verify_isomorphism(h, g, *back));
        }
    }
    SUBCASE("reflexive with the identity accepted") {
        Graph g = six_four();
        auto iso = is_isomorphic(g, g);
        REQUIRE(iso.has_value());
        std::map<VertexId, VertexId> ident;
        for (VertexId v : g.vertices()) ident[v] = v;
        CHECK(verify_isomorphism(g, g, ident));
    }
    SUBCASE("multiplicity mismatches are rejected") {
        // Same vertex and edge counts, but h has a loop and g does not.
        Graph g({0, 1}, {{0, 0, 1}, {1, 0, 1}, {2, 1, 0}});
        Graph h({0, 1}, {{0, 0, 1}, {1, 1, 0}, {2, 0, 0}});
        CHECK(!is_isomorphic(g, h).has_value());
        CHECK(!is_isomorphic(dumbbell(), six_four()).has_value());
    }
    SUBCASE("verify_isomorphism rejects non-bijections and wrong maps") {
        Graph g = dumbbell();
        std::map<VertexId, VertexId> m{{0, 0}, {1, 0}};
        CHECK(!verify_isomorphism(g, g, m));
        std::map<VertexId, VertexId> swapd{{0, 1}, {1, 0}};
        CHECK(!verify_isomorphism(g, g, swapd));  // v has out-degree 2, w 1
        CHECK(!verify_isomorphism(g, g, {}));     // wrong size
    }
}

TEST_CASE("edge bijection pairs parallel edges ascending") {
    Graph g({0, 1}, {{0, 0, 1}, {3, 0, 1}, {5, 1, 0}});
    Graph h({4, 9}, {{2, 4, 9}, {6, 4, 9}, {7, 9, 4}});
    std::map<VertexId, VertexId> vm{{0, 4}, {1, 9}};
    auto em = edge_bijection(g, h, vm);
    CHECK(em.at(0) == 2);
    CHECK(em.at(3) == 6);
    CHECK(em.at(5) == 7);
    std::map<VertexId, VertexId> bad{{0, 9}, {1, 4}};
    CHECK_THROWS_AS(edge_bijection(g, h, bad), graph_error);
}

TEST_CASE("transpose") {
    Graph g = six_four();
    Graph t = transpose(g);
    CHECK(transpose(t) == g);
    CHECK(t.edge(12).src == 11);
    CHECK(t.edge(12).dst == 10);
    IntMatrix a = adjacency_matrix(g), at = adjacency_matrix(t);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) CHECK(a.at(i, j) == at.at(j, i));
}

TEST_CASE("reachability and weak connectivity") {
    Graph g = six_four();
    std::set<VertexId> from_sink = reachable_from(g, {6});
    CHECK(from_sink == std::set<VertexId>{6, 7, 8, 9});
    std::set<VertexId> from_source = reachable_from(g, {0});
    CHECK(from_source.size() == 13);  // everything
    CHECK(reachable_from(g, {}).empty());
    CHECK(is_weakly_connected(g));
    CHECK(is_weakly_connected(Graph({}, {})));
    Graph split({0, 1}, {});
    CHECK(!is_weakly_connected(split));
    Graph two_islands({0, 1, 2, 3}, {{0, 0, 1}, {1, 2, 3}});
    CHECK(!is_weakly_connected(two_islands));
}
