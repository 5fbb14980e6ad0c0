#include "doctest.h"

#include "hqg/gauging.hpp"

using namespace hqg;

namespace {

std::vector<Mat> pauli_x_rep() {
    Mat X(2, 2);
    X << 0, 1, 1, 0;
    return {Mat::Identity(2, 2), X};
}

GaugeStructure z2_line() {
    return GaugeStructure(make_symmetric_system(line_graph({0, 1, 1}), cyclic_group(2), pauli_x_rep()));
}

GaugeStructure s3_star() {
    auto G = symmetric3();
    return GaugeStructure(make_symmetric_system(star_graph(3, 1, 0), G, representations(G).irreps[2].mats));
}

GaugeStructure s3_pendant() {
    auto G = symmetric3();
    return GaugeStructure(make_symmetric_system(triangle_pendant_graph(), G, representations(G).irreps[1].mats));
}

GaugeStructure d4_star() {
    auto G = dihedral_group(4);
    auto r = representations(G).irreps;
    return GaugeStructure(make_symmetric_system(star_graph(3, 1, 0), G, r.back().mats));
}

GaugeStructure z2z2_triangle() {
    auto G = make_group("Z2xZ2");
    auto r = representations(G).irreps;
    Irrep two = direct_sum({r[1], r[2]}, "pair");
    return GaugeStructure(make_symmetric_system(triangle_graph({1, 1, 0}), G, two.mats));
}

double kappa_deviation(const GaugeStructure &gs) {
    Mat Gm = gs.gauging_map(false);
    Mat K = Gm.adjoint() * Gm;
    return dev_norm(K - gs.kappa2() * Mat::Identity(K.rows(), K.cols()));
}

double projector_deviation(const GaugeStructure &gs) {
    Mat Gm = gs.gauging_map(false);
    return dev_norm(Gm * Gm.adjoint() / gs.kappa2() - gs.flux_free_projector());
}

double ngc_duality(const GaugeStructure &gs) {
    Mat Gm = gs.gauging_map(true);
    auto res = duality_check(
        Gm, gs.group().order(), [&](int g) { return gs.global_symmetry(g); },
        [&](int g) { return gs.asymptotic_symmetry(g); });
    return std::max(res.deviation, res.commutator);
}

}  // namespace

TEST_CASE("catalog dimensions") {
    CHECK(z2_line().full_dim() == 16);
    CHECK(s3_star().full_dim() == 432);
    CHECK(s3_pendant().full_dim() == 1296);
    CHECK(d4_star().full_dim() == 1024);
    CHECK(z2z2_triangle().full_dim() == 256);
}

TEST_CASE("Z2 line: gauge transformation is X_v X_e X_e'") {
    auto gs = z2_line();
    Mat X(2, 2);
    X << 0, 1, 1, 0;
    Mat I = Mat::Identity(2, 2);
    // factors: v0 (dim 1), v1, v2, e0-1, e1-2
    Mat expected = kron_all({X, I, X, X});
    CHECK(dev_norm(gs.gauge_transformation(1, 1) - expected) < 1e-12);
    CHECK(gs.full_fact().labels() == std::vector<std::string>{"v0", "v1", "v2", "e0-1", "e1-2"});
}

TEST_CASE("gauging map is kappa times an isometry onto the flux-free sector") {
    for (auto *make : {&z2_line, &s3_star, &d4_star, &z2z2_triangle}) {
        auto gs = make();
        CHECK(kappa_deviation(gs) < 1e-10);
        CHECK(projector_deviation(gs) < 1e-10);
        Mat Gm = gs.gauging_map(false);
        double k2 = (Gm.adjoint() * Gm)(0, 0).real();
        auto [p, q] = recover_rational(k2);
        long long want = 1;
        for (std::size_t i = 0; i < gs.graph().V1().size(); ++i) want *= gs.group().order();
        CHECK(p == 1);
        CHECK(q == want);
    }
}

TEST_CASE("S3 triangle with pendant") {
    auto gs = s3_pendant();
    CHECK(kappa_deviation(gs) < 1e-10);
    CHECK(projector_deviation(gs) < 1e-10);
    CHECK(ngc_duality(gs) < 1e-10);
}

TEST_CASE("NGC symmetry duality") {
    for (auto *make : {&z2_line, &s3_star, &d4_star, &z2z2_triangle}) {
        auto gs = make();
        CHECK(ngc_duality(gs) < 1e-10);
    }
}

TEST_CASE("twisted gauging maps intertwine with conjugated flux") {
    auto gs = s3_star();
    for (int a = 0; a < 6; ++a) {
        FluxAssignment phi{a, (a + 1) % 6, (a + 3) % 6};
        Mat Gphi = gs.twisted_gauging_map(phi);
        for (int h = 0; h < 6; ++h) {
            Mat lhs = Gphi * gs.global_symmetry(h);
            Mat rhs = gs.asymptotic_symmetry(h) * gs.twisted_gauging_map(gs.conjugate_flux(phi, h));
            CHECK(dev_norm(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("flux sectors partition Pi_GI; NGC flux maps fill a sector") {
    auto gs = s3_star();
    auto sectors = gs.flux_sector_decomposition();
    long long total = 0;
    Mat sum = Mat::Zero(gs.full_dim(), gs.full_dim());
    for (const auto &s : sectors) {
        total += s.rank;
        sum += gs.sector_projector(s);
    }
    CHECK(dev_norm(sum - gs.pi_gi()) < 1e-10);
    CHECK(total == std::llround(gs.pi_gi().trace().real()));
    // S3 star: 3 NGC leaves, lines fix h_12 and h_13; 36 sectors of rank 2.
    CHECK(sectors.size() == 36);
    for (int h = 0; h < 6; ++h) {
        Mat F = gs.ngc_flux_map({{1, h}});
        CHECK(dev_norm(F.adjoint() * F - Mat::Identity(F.cols(), F.cols())) < 1e-10);
        bool found = false;
        for (const auto &s : sectors) {
            Mat P = gs.sector_projector(s);
            if (dev_norm(P * F - F) < 1e-10) {
                found = true;
                CHECK(s.rank == F.cols());
            }
        }
        CHECK(found);
    }
}

TEST_CASE("Wilson operators are gauge invariant") {
    auto gs = s3_pendant();
    const Mat &P = gs.pi_gi();
    for (const auto &r : gs.reps().irreps) {
        for (const auto &l : gs.loops()) CHECK(diagonal_commutator(gs.on_full(gs.wilson_loop(l, r)), P) < 1e-10);
    }
    CHECK(gs.loops().size() == 1);
    CHECK(gs.lines().empty());
    auto star = s3_star();
    CHECK(star.lines().size() == 3);
    const auto &r = star.reps().irreps[2];
    for (const auto &l : star.lines()) {
        CHECK(diagonal_commutator(star.on_full(star.wilson_line(l, r, 0, 1)), star.pi_gi()) < 1e-10);
    }
    CHECK_THROWS_AS(star.wilson_line(make_path(star.graph(), {1, 0}), r, 0, 0), InvalidPath);
}

TEST_CASE("central flux operators") {
    auto gs = d4_star();
    auto c = gs.reps().center;
    REQUIRE(c.size() == 2);
    Mat C = gs.central_flux_operator(0, c[1]);
    CHECK(dev_norm(C * gs.pi_gi() - gs.pi_gi() * C) < 1e-10);
    CHECK_THROWS_AS(gs.central_flux_operator(0, 1), NotCentral);
}

TEST_CASE("Z2 dressing reproduces Z_u Z_e") {
    auto gs = z2_line();
    Mat Z(2, 2);
    Z << 1, 0, 0, -1;
    auto path = make_path(gs.graph(), {1, 0});
    auto Og = gs.dressed_operator(Z, path);
    CHECK(dev_norm(Og.matrix - kron(Z, Z)) < 1e-12);
    CHECK(Og.fact.labels() == std::vector<std::string>{"v1", "e0-1"});
}

TEST_CASE("dressing sweeps over generalized Pauli bases") {
    for (auto *make : {&z2_line, &s3_star, &s3_pendant, &d4_star}) {
        auto gs = make();
        Mat Gm = gs.gauging_map(true);
        for (int u : gs.graph().V1()) {
            PathBounds b;
            b.start = u;
            auto paths = enumerate_paths_and_cycles(gs.graph(), PathKind::vertex_to_boundary, b);
            for (const auto &p : paths) {
                for (const Mat &Ou : generalized_pauli_basis(gs.system().dim(u))) {
                    auto Og = gs.dressed_operator(Ou, p);
                    Mat Ofull = Mat::Identity(gs.vertex_dim(), gs.vertex_dim());
                    apply_local(Ou, gs.vertex_fact(), {vertex_label(u)}, Ofull);
                    CHECK(dev_norm(gs.apply_labeled(Og, Gm) - Gm * Ofull) < 1e-10);
                    CHECK(projector_commutator(Mat(gs.apply_labeled(Og, Mat::Identity(gs.full_dim(), gs.full_dim()))), Gm) < 1e-10);
                    std::set<int> vg(p.vertices.begin(), p.vertices.end() - 1);
                    double dev = 1.0;
                    Mat back = gs.undress_operator(Og, vg, Gm, &dev);
                    CHECK(dev_norm(back - Ofull) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("undressing a Wilson loop gives a scalar on the flux-free sector") {
    auto gs = s3_pendant();
    Mat Gm = gs.gauging_map(true);
    const auto &r = gs.reps().irreps[2];
    LabeledOperator W;
    W.matrix = gs.on_full(gs.wilson_loop(gs.loops()[0], r)).asDiagonal();
    W.fact = gs.full_fact();
    Mat O = Gm.adjoint() * W.matrix * Gm;
    CHECK(dev_norm(O - 2.0 * Mat::Identity(O.rows(), O.cols())) < 1e-10);
    CHECK(projector_commutator(W.matrix, Gm) < 1e-10);
}

TEST_CASE("undress hypothesis") {
    auto gs = s3_pendant();
    // Gamma = 1 -> 0 -> 3 leaves vertex 2 without a route to V0
    auto p = make_path(gs.graph(), {1, 0, 3});
    std::set<int> vs{1, 0}, es(p.edges.begin(), p.edges.end());
    CHECK_FALSE(gs.undress_hypothesis(vs, es));
    auto line = z2_line();
    auto q = make_path(line.graph(), {2, 1, 0});
    CHECK(line.undress_hypothesis({2, 1}, std::set<int>(q.edges.begin(), q.edges.end())));
}

TEST_CASE("symmetric sector for V0 empty") {
    auto G = cyclic_group(2);
    GaugeStructure gs(make_symmetric_system(cycle_graph(3), G, pauli_x_rep()));
    Vec plus = Vec::Constant(8, 1.0 / std::sqrt(8.0));
    Vec s = symmetric_sector_state(gs, plus);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    Mat P = gs.pi_gi();
    CHECK((P * s - s).norm() < 1e-12);
    // odd global charge is annihilated
    Vec minus(2);
    minus << 1, -1;
    Vec m3 = kron(kron(minus, minus), minus) / std::sqrt(8.0);
    CHECK_THROWS_AS(symmetric_sector_state(gs, m3), NullState);
}

TEST_CASE("rational recovery") {
    auto [p, q] = recover_rational(1.0 / 216.0);
    CHECK(p == 1);
    CHECK(q == 216);
    auto [a, b] = recover_rational(0.375);
    CHECK(a == 3);
    CHECK(b == 8);
}
