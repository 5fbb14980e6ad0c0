#include "doctest.h"

#include "hqg/lattice.hpp"

using namespace hqg;

namespace {

LabeledGraph k4() {
    LabeledGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i, 1);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.add_edge(i, j);
    return g;
}

LabeledGraph ladder() {
    LabeledGraph g;
    g.add_vertex(0, 0, true);
    g.add_vertex(5, 0, true);
    for (int v : {1, 2, 3, 4, 6, 7}) g.add_vertex(v, 1, v == 1 || v == 4);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {4, 3}, {1, 4}, {2, 6}, {6, 7}, {3, 7}, {0, 1}, {5, 4}})
        g.add_edge(a, b);
    g.canonicalize();
    return g;
}

bool has_category(const DanglingReport &r, char c) {
    for (const auto &v : r.violations)
        if (v.category == c) return true;
    return false;
}

}  // namespace

TEST_CASE("edge bookkeeping") {
    auto g = ladder();
    CHECK(g.V0() == std::vector<int>{0, 5});
    CHECK(g.E0().size() == 2);
    CHECK(g.E1().size() == 7);
    CHECK(g.edges()[0].label() == "e0-1");
    CHECK(g.out_edges(1).size() == 2);
    CHECK(g.in_edges(3).size() == 2);
    CHECK(g.neighbors(2) == std::vector<int>{1, 3, 6});
    CHECK_THROWS_AS(g.add_edge(2, 1), InvalidPath);
    CHECK_THROWS_AS(g.add_edge(2, 2), InvalidPath);
}

TEST_CASE("dangling-edge validation categories") {
    CHECK(validate_dangling(ladder()).valid);
    LabeledGraph a;
    a.add_vertex(0, 0);
    a.add_vertex(1, 1, true);
    a.add_edge(0, 1);
    CHECK(has_category(validate_dangling(a), 'a'));
    LabeledGraph b;
    b.add_vertex(0, 0, true);
    b.add_vertex(1, 1, true);
    b.add_edge(1, 0);
    CHECK(has_category(validate_dangling(b), 'b'));
    LabeledGraph b2;
    b2.add_vertex(0, 0, true);
    b2.add_vertex(1, 1, false);
    b2.add_edge(0, 1);
    CHECK(has_category(validate_dangling(b2), 'b'));
    LabeledGraph c;
    c.add_vertex(0, 0, true);
    c.add_vertex(1, 1, true);
    c.add_vertex(2, 1, true);
    c.add_edge(0, 1);
    c.add_edge(0, 2);
    CHECK(has_category(validate_dangling(c), 'c'));
    LabeledGraph d;
    d.add_vertex(0, 0, true);
    d.add_vertex(1, 0, true);
    d.add_edge(0, 1);
    CHECK(has_category(validate_dangling(d), 'd'));
}

TEST_CASE("connectivity modes") {
    CHECK(bulk_connected(ladder()));
    // two GC vertices joined only through an NGC vertex
    auto g = line_graph({1, 0, 1});
    CHECK(connectivity(g, ConnectivityMode::full));
    CHECK_FALSE(bulk_connected(g));
}

TEST_CASE("cycle and path enumeration against networkx") {
    PathBounds b;
    // tools/oracles/lattice_oracle.py
    CHECK(enumerate_paths_and_cycles(k4(), PathKind::cycle_in_v1, b).size() == 7);
    CHECK(enumerate_paths_and_cycles(cycle_graph(6), PathKind::cycle_in_v1, b).size() == 1);
    CHECK(enumerate_paths_and_cycles(ladder(), PathKind::cycle_in_v1, b).size() == 3);
    CHECK(enumerate_paths_and_cycles(ladder(), PathKind::ngc_to_ngc, b).size() == 3);
    b.start = 1;
    auto paths = enumerate_paths_and_cycles(triangle_pendant_graph(), PathKind::vertex_to_boundary, b);
    CHECK(paths.size() == 2);
    for (const auto &p : paths) CHECK(p.vertices.back() == 3);
}

TEST_CASE("enumeration bounds") {
    PathBounds b;
    b.max_count = 3;
    CHECK_THROWS_AS(enumerate_paths_and_cycles(k4(), PathKind::cycle_in_v1, b), BoundsExceeded);
    b.max_count = 100;
    b.max_length = 3;
    CHECK(enumerate_paths_and_cycles(k4(), PathKind::cycle_in_v1, b).size() == 4);
}

TEST_CASE("paths record orientation") {
    auto g = triangle_pendant_graph();
    auto p = make_path(g, {1, 0, 3});
    REQUIRE(p.edges.size() == 2);
    CHECK_FALSE(p.forward[0]);
    CHECK_FALSE(p.forward[1]);
    CHECK_THROWS_AS(make_path(g, {1, 3}), InvalidPath);
    auto loop = make_path(g, {0, 1, 2}, true);
    CHECK(loop.edges.size() == 3);
}

TEST_CASE("NGC vertex with two edges yields a based loop line") {
    auto g = triangle_graph({1, 1, 0});
    auto lines = enumerate_paths_and_cycles(g, PathKind::ngc_to_ngc, PathBounds{});
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].vertices.front() == lines[0].vertices.back());
}
