#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torsornet/graph.hpp"

using namespace torsornet;

namespace {

Multigraph cycle_graph(int n) {
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        es.push_back({"e" + std::to_string(i), vs[i], vs[(i + 1) % n]});
    return build_graph(vs, es);
}

Multigraph star_graph(int n) {
    std::vector<std::string> vs = {"c"};
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back("l" + std::to_string(i));
        es.push_back({"e" + std::to_string(i), "c", vs.back()});
    }
    return build_graph(vs, es);
}

Multigraph rose_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.push_back({"a" + std::to_string(i), "v", "v"});
    return build_graph({"v"}, es);
}

}  // namespace

TEST_CASE("construction validates ids and endpoints") {
    CHECK_THROWS(build_graph({"a", "a"}, {}));
    CHECK_THROWS(build_graph({"a"}, {{"e", "a", "b"}}));
    CHECK_THROWS(build_graph({"a", "b"}, {{"e", "a", "b"}, {"e", "b", "a"}}));
    Multigraph g = build_graph({"a", "b"}, {{"e", "a", "b"}});
    CHECK(g.has_vertex("a"));
    CHECK(g.has_edge("e"));
    CHECK_FALSE(g.has_edge("f"));
}

TEST_CASE("degree counts self-loops twice") {
    Multigraph g = build_graph({"v", "w"}, {{"a", "v", "v"}, {"b", "v", "w"}});
    CHECK(g.degree("v") == 3);
    CHECK(g.degree("w") == 1);
    CHECK(g.loop_count("v") == 1);
    CHECK(g.loop_count("w") == 0);
}

TEST_CASE("connectivity, tree test, betti number") {
    Multigraph c4 = cycle_graph(4);
    CHECK(c4.connected());
    CHECK_FALSE(c4.is_tree());
    CHECK(c4.betti1() == 1);

    Multigraph s3 = star_graph(3);
    CHECK(s3.is_tree());
    CHECK(s3.betti1() == 0);
    CHECK(s3.leaves() == std::vector<std::string>{"l0", "l1", "l2"});

    Multigraph r2 = rose_graph(2);
    CHECK(r2.betti1() == 2);
    CHECK(r2.leaves().empty());

    Multigraph disc = build_graph({"a", "b"}, {});
    CHECK_FALSE(disc.connected());
    CHECK_THROWS(disc.betti1());
}

TEST_CASE("walks validate incidence and compute endpoints") {
    Multigraph c3 = cycle_graph(3);
    Walk w{"v0", {{"e0", Dir::forward}, {"e1", Dir::forward}}};
    CHECK(walk_end(c3, w) == "v2");
    Walk back{"v2", {{"e1", Dir::reverse}, {"e0", Dir::reverse}}};
    CHECK(walk_end(c3, back) == "v0");
    CHECK(walk_end(c3, Walk{"v1", {}}) == "v1");
    Walk bad{"v0", {{"e1", Dir::forward}}};
    CHECK_THROWS(walk_end(c3, bad));
}

TEST_CASE("spanning tree is deterministic BFS in declaration order") {
    // diamond with a chord: BFS from a must pick e0, e1 then e2 wins over e3
    Multigraph g = build_graph({"a", "b", "c", "d"},
                               {{"e0", "a", "b"},
                                {"e1", "a", "c"},
                                {"e2", "b", "d"},
                                {"e3", "c", "d"}});
    SpanningTree t = spanning_tree(g, "a");
    CHECK(t.root == "a");
    CHECK(t.tree_edges == std::vector<std::string>{"e0", "e1", "e2"});
    CHECK(t.parent.at("d").parent == "b");
    CHECK(t.parent.at("d").edge == "e2");
    CHECK(t.is_tree_edge("e0"));
    CHECK_FALSE(t.is_tree_edge("e3"));
    CHECK_THROWS(spanning_tree(g, "nope"));
}

TEST_CASE("spanning tree records traversal direction") {
    Multigraph g = build_graph({"a", "b"}, {{"e", "b", "a"}});
    SpanningTree t = spanning_tree(g, "a");
    CHECK(t.parent.at("b").dir == Dir::reverse);
}

TEST_CASE("tree paths cancel the common prefix") {
    Multigraph s = star_graph(3);
    SpanningTree t = spanning_tree(s, "c");
    Walk p = tree_path(s, t, "l0", "l2");
    CHECK(p.start == "l0");
    CHECK(p.steps.size() == 2);
    CHECK(walk_end(s, p) == "l2");
    Walk q = tree_path(s, t, "l1", "l1");
    CHECK(q.steps.empty());
    Walk r = tree_path_from_root(s, t, "l1");
    CHECK(r.start == "c");
    CHECK(walk_end(s, r) == "l1");
}

TEST_CASE("fundamental cycles: one closed walk per non-tree edge") {
    Multigraph c4 = cycle_graph(4);
    SpanningTree t = spanning_tree(c4, "v0");
    std::vector<Walk> cyc = fundamental_cycles(c4, t);
    REQUIRE(cyc.size() == 1);
    CHECK(cyc[0].start == "v0");
    CHECK(walk_end(c4, cyc[0]) == "v0");

    Multigraph r3 = rose_graph(3);
    SpanningTree tr = spanning_tree(r3, "v");
    CHECK(fundamental_cycles(r3, tr).size() == 3);
    for (const Walk& w : fundamental_cycles(r3, tr)) {
        CHECK(w.start == "v");
        CHECK(walk_end(r3, w) == "v");
    }
}

TEST_CASE("automorphism groups of standard graphs") {
    CHECK(enumerate_automorphisms(cycle_graph(3)).size() == 6);
    CHECK(enumerate_automorphisms(cycle_graph(4)).size() == 8);
    CHECK(enumerate_automorphisms(star_graph(4)).size() == 24);
    // path on 3 vertices
    Multigraph p = build_graph({"a", "b", "c"}, {{"e0", "a", "b"}, {"e1", "b", "c"}});
    CHECK(enumerate_automorphisms(p).size() == 2);
    // parallel edges may permute independently of the vertex swap
    Multigraph d = build_graph({"a", "b"}, {{"e0", "a", "b"}, {"e1", "a", "b"}});
    CHECK(enumerate_automorphisms(d).size() == 4);
}

TEST_CASE("automorphisms map edges consistently") {
    Multigraph c3 = cycle_graph(3);
    for (const GraphAutomorphism& a : enumerate_automorphisms(c3)) {
        for (const Edge& e : c3.edges()) {
            const Edge& img = c3.edge(a.edge_map.at(e.id));
            if (a.reversed.at(e.id)) {
                CHECK(img.tail == a.vertex_map.at(e.head));
                CHECK(img.head == a.vertex_map.at(e.tail));
            } else {
                CHECK(img.tail == a.vertex_map.at(e.tail));
                CHECK(img.head == a.vertex_map.at(e.head));
            }
        }
    }
}

TEST_CASE("automorphism composition and identity") {
    Multigraph c4 = cycle_graph(4);
    GraphAutomorphism id = identity_automorphism(c4);
    for (const std::string& v : c4.vertices()) CHECK(id.vertex_map.at(v) == v);
    auto all = enumerate_automorphisms(c4);
    // composition stays inside the group
    for (const GraphAutomorphism& a : all) {
        GraphAutomorphism c = compose(c4, a, id);
        CHECK(c.vertex_map == a.vertex_map);
        CHECK(c.edge_map == a.edge_map);
    }
}
