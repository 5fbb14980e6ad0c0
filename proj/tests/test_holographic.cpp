#include "doctest.h"

#include <cmath>
#include <random>

#include "hqg/holographic.hpp"

using namespace hqg;

namespace {

// tools/oracles/tiling_oracle.py
struct TilingCounts {
    int tiles, bonds, dangling, points;
    std::vector<int> per_layer;
};
const TilingCounts kTiling[3] = {
    {1, 0, 5, 5, {1}},
    {6, 5, 20, 20, {1, 5}},
    {21, 25, 55, 60, {1, 5, 15}},
};

std::set<int> tile_sites(const LabeledGraph &g, int t) {
    std::set<int> out;
    for (int u : g.V0())
        if (g.other_end(g.incident(u)[0], u) == t) out.insert(u);
    return out;
}

int outer_tile(const LabeledGraph &g) {
    for (int t : g.V1())
        if (tile_sites(g, t).size() >= 3) return t;
    return -1;
}

double up_to_phase(const Mat &a, const Mat &b) {
    cplx ov = (a.adjoint() * b).trace();
    if (std::abs(ov) < 1e-12) return (a - b).norm();
    return (a * (ov / std::abs(ov)) - b).norm();
}

}  // namespace

TEST_CASE("pentagon patches match the disk construction") {
    for (int l = 0; l <= 2; ++l) {
        auto t = pentagon_tiling(l);
        auto r = recount(t);
        CHECK(r.tiles == kTiling[l].tiles);
        CHECK(r.bonds == kTiling[l].bonds);
        CHECK(r.dangling == kTiling[l].dangling);
        CHECK(r.points == kTiling[l].points);
        CHECK(r.per_layer == kTiling[l].per_layer);
        CHECK(r.euler == 1);
        CHECK(r.layers_match);
        CHECK(r.valence_ok);
        auto g = happy_graph(t);
        CHECK(static_cast<int>(g.V1().size()) == r.tiles);
        CHECK(static_cast<int>(g.V0().size()) == r.dangling);
        CHECK(validate_dangling(g).valid);
        CHECK(connectivity(g, ConnectivityMode::bulk_only));
    }
    CHECK_THROWS_AS(pentagon_tiling(3), CutoffTooLarge);
}

TEST_CASE("single-tile HaPPY code is the five-qubit code") {
    auto c = build_happy(0);
    REQUIRE(c.dense);
    auto ref = perfect_tensor("t0_");
    ref.relabel("t0_0", "v0");
    CHECK(c.encoder.same_state(ref));
    const Mat &V = c.dense->matrix();
    CHECK(V.rows() == 32);
    CHECK((V.adjoint() * V - Mat::Identity(2, 2)).norm() < 1e-10);
    CHECK(c.boundary_legs.size() == 5);
    for (int l = 0; l <= 2; ++l) CHECK(happy_global_duality(build_happy(l)));
}

TEST_CASE("greedy wedges on the one-layer patch") {
    auto g = build_happy(1).graph;
    int t = outer_tile(g);
    REQUIRE(t >= 0);
    auto sites = tile_sites(g, t);
    std::vector<int> s(sites.begin(), sites.end());
    REQUIRE(s.size() == 4);

    auto w1 = greedy_wedge(g, {s[0]});
    CHECK(w1.vertices.empty());
    CHECK(w1.edges.size() == 1);
    CHECK(w1.ext.empty());
    CHECK(w1.gamma == 1);

    auto w2 = greedy_wedge(g, {s[0], s[1]});
    CHECK(w2.vertices.empty());
    CHECK(w2.edges.size() == 2);

    auto w3 = greedy_wedge(g, {s[0], s[1], s[2]});
    CHECK(w3.vertices == std::set<int>{t});
    CHECK(w3.edges.size() == 4);
    CHECK(w3.ext.size() == 1);
    CHECK(w3.gamma == 2);

    auto all = g.V0();
    auto wall = greedy_wedge(g, std::set<int>(all.begin(), all.end()));
    CHECK(wall.vertices.size() == g.V1().size());
    CHECK(wall.edges.size() == g.edges().size());
    CHECK(wall.ext.empty());
    CHECK(wall.gamma == 0);

    CHECK_THROWS_AS(greedy_wedge(g, {t}), LabelMismatch);
}

TEST_CASE("wedges satisfy near-boundary probing and are order independent") {
    for (int l = 0; l <= 2; ++l) {
        auto g = build_happy(l).graph;
        auto regions = contiguous_regions(g, l == 2 ? 8 : 25);
        for (const auto &R : regions) {
            auto w = greedy_wedge(g, R);
            CHECK(near_boundary_probing(g, w).ok);
            CHECK(near_boundary_probing(g, complement_wedge(g, R)).ok);
        }
        for (std::size_t i = 0; i < regions.size(); i += 7) CHECK(greedy_order_independent(g, regions[i], 5, 17));
    }
    auto g = build_happy(1).graph;
    int t = outer_tile(g);
    auto s = tile_sites(g, t);
    auto w = greedy_wedge(g, s);
    w.edges.erase(g.incident(*s.begin())[0]);
    auto rep = near_boundary_probing(g, w);
    CHECK_FALSE(rep.ok);
    CHECK(rep.condition == 1);
}

TEST_CASE("contiguous regions") {
    auto g = build_happy(0).graph;
    auto r = contiguous_regions(g, 10);
    CHECK(r.size() == 21);
    CHECK(r.back().size() == 5);
    CHECK(contiguous_regions(g, 1).size() == 5);
}

TEST_CASE("HaPPY wedge reconstruction") {
    for (int l = 0; l <= 2; ++l) {
        auto c = build_happy(l);
        int checked = 0;
        for (const auto &R : contiguous_regions(c.graph, l == 2 ? 6 : 20)) {
            auto w = greedy_wedge(c.graph, R);
            auto rep = wedge_reconstruction(c, w);
            CHECK(rep.ok());
            checked += rep.generators;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("LOTE assembly") {
    auto Z2 = cyclic_group(2);
    auto c0 = build_lote(0, Z2, true);
    CHECK(c0.encoder.is_isometry());
    CHECK(c0.encoder.num_inputs() == 6);
    for (const auto &[u, legs] : c0.boundary_legs) CHECK(legs.size() == 6);
    auto c1 = build_lote(1, Z2, false);
    CHECK(c1.encoder.num_inputs() == 6 + 25);
    for (const auto &[u, legs] : c1.boundary_legs) CHECK(legs.size() == 6);
    CHECK_THROWS_AS(build_lote(0, cyclic_group(3), true), ScaleExceeded);
}

TEST_CASE("gauged LOTE wedge reconstruction includes central flux") {
    auto Z2 = cyclic_group(2);
    for (int l = 0; l <= 1; ++l) {
        auto c = build_lote(l, Z2, true);
        int ext = 0;
        for (const auto &R : contiguous_regions(c.graph, 6)) {
            auto w = greedy_wedge(c.graph, R);
            auto rep = wedge_reconstruction(c, w);
            CHECK(rep.ok());
            ext += static_cast<int>(w.ext.size());
        }
        if (l == 1) CHECK(ext > 0);
    }
}

TEST_CASE("grand orthogonality tensor") {
    for (const auto &G : {cyclic_group(2), symmetric3(), cyclic_group(3)}) {
        auto W = grand_orthogonality_tensor(G);
        const Mat &M = W.matrix();
        CHECK((M.adjoint() * M - Mat::Identity(G.order(), G.order())).norm() < 1e-10);
        const long D = W.physical().subsystems()[0].dim;
        const Mat I = Mat::Identity(D, D);
        for (int h = 0; h < G.order(); ++h) {
            Mat L = kron(grand_left_action(G, h), I);
            Mat R = kron(I, grand_right_action(G, h));
            CHECK((M * regular_action(G, Side::left, h) - L * M).norm() < 1e-10);
            CHECK((M * regular_action(G, Side::right, h) - R * M).norm() < 1e-10);
        }
    }
    CHECK(grand_orthogonality_tensor(symmetric3()).physical().subsystems()[0].dim == 4);
    auto W = grand_orthogonality_tensor(cyclic_group(2)).matrix();
    CHECK(std::abs(W(0, 0) - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(W(3, 1) + std::sqrt(0.5)) < 1e-12);
}

TEST_CASE("symplectic gauging map equals the dense one") {
    auto Z2 = cyclic_group(2);
    Mat X = Mat::Zero(2, 2);
    X(0, 1) = X(1, 0) = 1.0;
    for (const auto &g : {cycle_graph(3), line_graph({1, 1, 1}), triangle_pendant_graph()}) {
        GaugeStructure gs(make_symmetric_system(g, Z2, {Mat::Identity(2, 2), X}));
        Mat Gd = gs.gauging_map(true);
        Mat Gs = gauging_map_state(g).dense_isometry();
        REQUIRE(Gs.rows() == Gd.rows());
        CHECK(up_to_phase(Gs / Gs.norm(), Gd / Gd.norm()) < 1e-9);
    }
}

TEST_CASE("gauging the HaPPY code") {
    auto Z2 = cyclic_group(2);
    auto c = build_happy(0);
    auto r = gauge_code(c, Z2);
    CHECK(r.duality_deviation < 1e-9);
    CHECK(r.reconstructed > 0);
    CHECK(r.reconstruction_residual < 1e-8);
    CHECK(r.code.projector == BulkProjector::flux_free);
    CHECK(r.code.dense_map);

    auto same = gauge_code(c, trivial_group());
    CHECK(same.code.encoder.same_state(c.encoder));
    CHECK_THROWS_AS(gauge_code(c, symmetric3()), DualityAbsent);
    CHECK_THROWS_AS(gauge_code(r.code, Z2), DualityAbsent);

    auto r1 = gauge_code(build_happy(1), Z2);
    CHECK(r1.duality_deviation == 0.0);
    for (const auto &R : contiguous_regions(r1.code.graph, 5))
        CHECK(wedge_reconstruction(r1.code, greedy_wedge(r1.code.graph, R)).ok());
}

TEST_CASE("ungauging after gauging returns the original code") {
    auto Z2 = cyclic_group(2);
    auto c = build_happy(0);
    auto back = ungauge_code(gauge_code(c, Z2).code, Z2);
    CHECK(back.duality_deviation < 1e-9);
    REQUIRE(back.code.dense);
    const Mat &V = c.dense->matrix();
    CHECK(up_to_phase(back.code.dense->matrix(), V) < 1e-9);
    CHECK(back.code.encoder.same_state(c.encoder));

    auto lote = build_lote(1, Z2, true);
    auto u = ungauge_code(lote, Z2);
    CHECK(u.duality_deviation == 0.0);
    CHECK_THROWS_AS(ungauge_code(c, Z2), DualityAbsent);
}

TEST_CASE("induced boundary symmetry of the gauged LOTE") {
    auto Z2 = cyclic_group(2);
    for (int l = 0; l <= 1; ++l) {
        auto c = build_lote(l, Z2, true);
        auto b = induce_boundary_symmetry(c, Z2);
        CHECK(b.representation_ok);
        CHECK(b.duality_deviation == 0.0);
        CHECK(b.site.size() == c.graph.V0().size());
    }
    CHECK_THROWS_AS(induce_boundary_symmetry(build_lote(0, Z2, false), Z2), NotCorrectable);
}

TEST_CASE("block-dense single-tile LOTE") {
    auto Z2 = cyclic_group(2);
    auto c = build_lote(0, Z2, true);
    auto b = block_dense_lote(c);
    CHECK(b.blocks.size() == 6);
    CHECK(b.bulk.total_dim() == 64);
    auto s = induce_boundary_symmetry_dense(b, Z2);
    CHECK(s.site.size() == 5);
    CHECK(s.duality_deviation < 1e-8);
    CHECK(s.homomorphism_deviation < 1e-8);
    CHECK(restricted_symmetry_leak(b, s, {c.graph.V0()[0], c.graph.V0()[1]}) < 1e-8);
    CHECK(restricted_image_deficiency(b, s, {c.graph.V0()[0], c.graph.V0()[1]}) < 1e-10);
    CHECK_THROWS_AS(block_dense_lote(build_lote(1, Z2, true)), ScaleExceeded);

    auto gauged = gauge_code(build_happy(0), Z2).code;
    Mat Pff = *gauged.dense_map * gauged.dense_map->adjoint();
    CHECK(image_overlap_deficiency(Pff, Pauli::from_string("XXIII").dense()) > 0.1);

    Mat P = Mat::Zero(4, 4);
    P(0, 0) = 1.0;
    Mat U = Pauli::from_string("XI").dense();
    CHECK(std::abs(image_overlap_deficiency(P, U) - 1.0) < 1e-12);
    CHECK(std::abs(image_overlap_deficiency(P, Mat::Identity(4, 4))) < 1e-12);
}

TEST_CASE("gauged entropy on a four-cycle") {
    auto Z2 = cyclic_group(2);
    Mat X = Mat::Zero(2, 2);
    X(0, 1) = X(1, 0) = 1.0;
    GaugeStructure gs(make_symmetric_system(cycle_graph(4), Z2, {Mat::Identity(2, 2), X}));
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    Vec psi(16);
    for (int i = 0; i < 16; ++i) psi(i) = cplx(nd(rng), nd(rng));
    psi = (psi + gs.global_symmetry(1) * psi) / 2.0;
    psi.normalize();
    auto rec = gauged_entropy_check(gs, psi, {{1, 2}, {0, 1}, {0, 1, 2}, {0, 2}, {0, 1, 2, 3}});
    REQUIRE(rec.size() == 5);
    for (int i = 0; i < 3; ++i) {
        INFO(rec[i].region, " ", rec[i].lhs, " ", rec[i].rhs);
        CHECK(rec[i].connected);
        CHECK(rec[i].deviation() < 1e-9);
    }
    CHECK_FALSE(rec[3].connected);
    CHECK(rec[3].deviation() > 0.5);
    CHECK(rec[4].skipped);

    Vec bad = Vec::Zero(16);
    bad(1) = 1.0;
    CHECK_THROWS_AS(gauged_entropy_check(gs, bad, {{0}}), HypothesisViolated);
    GaugeStructure s3(make_symmetric_system(cycle_graph(3), symmetric3(), std::vector<Mat>(6, Mat::Identity(2, 2))));
    CHECK_THROWS_AS(gauged_entropy_check(s3, Vec::Zero(s3.vertex_dim()), {{0}}), HypothesisViolated);
}

TEST_CASE("RT formula on the single tile") {
    auto c = build_happy(0);
    Mat rho = Mat::Zero(2, 2);
    rho(0, 0) = 1.0;
    for (const auto &r : holographic_rt_check(c, rho, contiguous_regions(c.graph, 4))) CHECK(r.deviation() < 1e-9);
    rho = Mat::Identity(2, 2) / 2.0;
    auto rec = holographic_rt_check(c, rho, contiguous_regions(c.graph, 3));
    CHECK(rec.back().deviation() < 1e-9);
}

TEST_CASE("domain walls") {
    auto Z2 = cyclic_group(2);
    auto lote = build_lote(0, Z2, true);
    auto sym = induce_boundary_symmetry(lote, Z2).site;
    auto r = domain_wall_search(lote, 0, sym);
    CHECK(r.found);
    CHECK(r.regions_tested >= 1);

    auto lote1 = build_lote(1, Z2, true);
    auto r1 = domain_wall_search(lote1, 0, induce_boundary_symmetry(lote1, Z2).site, 2);
    CHECK(r1.found);

    auto h1 = build_happy(1);
    auto d1 = domain_wall_search(h1, 1, boundary_x_symmetry(h1), 2);
    CHECK_FALSE(d1.found);
}

TEST_CASE("restoring isometry after a metric fluctuation") {
    const Mat &V = build_happy(0).dense->matrix();
    std::mt19937 rng(9);
    std::normal_distribution<double> nd;
    Mat E(V.rows(), V.cols());
    for (long i = 0; i < E.size(); ++i) E(i) = cplx(nd(rng), nd(rng));
    Mat Vp = V + 0.05 * E;
    CHECK((Vp.adjoint() * Vp - Mat::Identity(2, 2)).norm() > 1e-3);
    Mat R = restore_isometry(Vp);
    CHECK((R.adjoint() * R - Mat::Identity(2, 2)).norm() < 1e-10);
    CHECK((R - Vp).norm() < 0.2);
}
