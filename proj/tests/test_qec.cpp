#include "doctest.h"

#include <cmath>

#include "hqg/gauging.hpp"
#include "hqg/group.hpp"
#include "hqg/qec.hpp"

using namespace hqg;

namespace {

Mat pauli_word(const std::string &w) {
    Mat X(2, 2), Z(2, 2);
    X << 0, 1, 1, 0;
    Z << 1, 0, 0, -1;
    std::vector<Mat> parts;
    for (char c : w) parts.push_back(c == 'X' ? X : (c == 'Z' ? Z : Mat(Mat::Identity(2, 2))));
    return kron_all(parts);
}

// Built from the stabilizer projector, independent of the stabilizer module.
CodeIsometry five_qubit() {
    Mat P = Mat::Identity(32, 32);
    for (const char *s : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})
        P = P * (Mat::Identity(32, 32) + pauli_word(s)) / 2.0;
    Vec zero = P.col(0) / P.col(0).norm();
    Mat V(32, 2);
    V.col(0) = zero;
    V.col(1) = pauli_word("XXXXX") * zero;
    std::vector<Subsystem> phys;
    for (int q = 0; q < 5; ++q) phys.push_back({"q" + std::to_string(q), 2});
    return CodeIsometry(V, Factorization({{"L", 2}}), Factorization(phys));
}

std::vector<std::set<std::string>> regions(int k) {
    std::vector<std::set<std::string>> out;
    for (int mask = 0; mask < 32; ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        std::set<std::string> R;
        for (int q = 0; q < 5; ++q)
            if (mask >> q & 1) R.insert("q" + std::to_string(q));
        out.push_back(R);
    }
    return out;
}

Mat pX() { return pauli_word("X"); }
Mat pZ() { return pauli_word("Z"); }

}  // namespace

TEST_CASE("code isometry validation") {
    Mat bad = Mat::Identity(4, 2) * 2.0;
    CHECK_THROWS_AS(CodeIsometry(bad, Factorization({{"L", 2}}), Factorization({{"a", 2}, {"b", 2}})), NotIsometric);
    auto c = five_qubit();
    CHECK((c.projector() * c.projector() - c.projector()).norm() < 1e-12);
}

TEST_CASE("five-qubit code: two-qubit regions correctable, three-qubit not") {
    auto c = five_qubit();
    auto alg = full_logical_algebra(c);
    CHECK(alg.size() == 4);
    auto two = regions(2), three = regions(3);
    CHECK(two.size() == 10);
    CHECK(three.size() == 10);
    for (const auto &R : two) CHECK(is_correctable(c, R, alg).correctable);
    for (const auto &R : three) {
        auto r = is_correctable(c, R, alg);
        CHECK_FALSE(r.correctable);
        CHECK(r.witness_basis >= 0);
        CHECK(r.max_violation > 1.0);
    }
}

TEST_CASE("commutator criterion agrees with the Choi mutual information") {
    auto c = five_qubit();
    auto alg = full_logical_algebra(c);
    // tools/oracles/qec_oracle.py: correctable counts by size {1,5,10,0,0,0}
    const int expected[] = {1, 5, 10, 0, 0, 0};
    for (int k = 0; k <= 5; ++k) {
        int count = 0;
        for (const auto &R : regions(k)) {
            bool comm = is_correctable(c, R, alg).correctable;
            bool info = std::abs(choi_mutual_information(c, R)) < 1e-9;
            CHECK(comm == info);
            count += comm;
        }
        CHECK(count == expected[k]);
    }
    CHECK(choi_mutual_information(c, {"q0", "q1", "q2"}) == doctest::Approx(2 * std::log(2.0)));
}

TEST_CASE("identity encoding") {
    CodeIsometry id(Mat::Identity(2, 2), Factorization({{"L", 2}}), Factorization({{"p", 2}}));
    CHECK(is_correctable(id, {}, full_logical_algebra(id)).correctable);
    auto X = reconstruct_on_complement(id, {}, pX());
    CHECK((X.matrix - pX()).norm() < 1e-12);
}

TEST_CASE("reconstruction on the complement") {
    auto c = five_qubit();
    std::set<std::string> R{"q3", "q4"};
    double res = 1.0;
    auto Zr = reconstruct_on_complement(c, R, pZ(), &res);
    CHECK(res < 1e-9);
    CHECK(Zr.fact.labels() == std::vector<std::string>{"q0", "q1", "q2"});
    CHECK((c.compress(Zr.matrix, Zr.fact.labels()) - pZ()).norm() < 1e-10);
    Mat M = c.matrix();
    apply_local(Zr.matrix, c.physical(), Zr.fact.labels(), M);
    CHECK((M - c.matrix() * pZ()).norm() < 1e-10);
    auto I = reconstruct_on_complement(c, R, Mat::Identity(2, 2));
    CHECK((c.compress(I.matrix, I.fact.labels()) - Mat::Identity(2, 2)).norm() < 1e-10);
    CHECK_THROWS_AS(reconstruct_on_complement(c, {"q0", "q1", "q2"}, pZ()), NotCorrectable);
}

TEST_CASE("unitary lifts") {
    auto c = five_qubit();
    std::set<std::string> R{"q0", "q2"};
    Mat U = matrix_function(Mat(cplx(0, 0.3) * pZ()), MatFn::exp);
    auto W = lift_unitary(c, R, U);
    CHECK(is_unitary(W.matrix, 1e-10));
    Mat M = c.matrix();
    apply_local(W.matrix, c.physical(), W.fact.labels(), M);
    CHECK((M - c.matrix() * U).norm() < 1e-10);
    // -1 in the spectrum routes through the representation lift
    auto Wz = lift_unitary(c, R, pZ());
    CHECK(is_unitary(Wz.matrix, 1e-10));
    CHECK((Wz.matrix * Wz.matrix - Mat::Identity(8, 8)).norm() < 1e-9);
    Mat Mz = c.matrix();
    apply_local(Wz.matrix, c.physical(), Wz.fact.labels(), Mz);
    CHECK((Mz - c.matrix() * pZ()).norm() < 1e-10);
    auto Wi = lift_unitary(c, R, Mat::Identity(2, 2));
    CHECK((Wi.matrix - Mat::Identity(8, 8)).norm() < 1e-10);
}

TEST_CASE("lifted Z2 representation from logical X on every 3-qubit complement") {
    auto c = five_qubit();
    auto Z2 = cyclic_group(2);
    for (const auto &R : regions(2)) {
        auto W = lift_representation(c, R, {Mat::Identity(2, 2), pX()}, Z2.mul);
        REQUIRE(W.size() == 2);
        CHECK(W[1].matrix.rows() == 8);
        CHECK((W[0].matrix - Mat::Identity(8, 8)).norm() < 1e-10);
        CHECK((W[1].matrix * W[1].matrix - Mat::Identity(8, 8)).norm() < 1e-9);
        CHECK(is_unitary(W[1].matrix, 1e-10));
        CHECK(lift_homomorphism_deviation(W, Z2.mul) < 1e-9);
        Mat M = c.matrix();
        apply_local(W[1].matrix, c.physical(), W[1].fact.labels(), M);
        CHECK((M - c.matrix() * pX()).norm() < 1e-10);
        // codespace preserving
        Mat P = c.projector();
        Mat WP = P;
        apply_local(W[1].matrix, c.physical(), W[1].fact.labels(), WP);
        CHECK((WP - P * WP).norm() < 1e-10);
    }
    auto trivial = trivial_group();
    auto W = lift_representation(c, {"q0"}, {Mat::Identity(2, 2)}, trivial.mul);
    CHECK((W[0].matrix - Mat::Identity(16, 16)).norm() < 1e-10);
}

TEST_CASE("reconstruction through the gauging map matches the dressing") {
    Mat X(2, 2);
    X << 0, 1, 1, 0;
    GaugeStructure gs(make_symmetric_system(line_graph({0, 1, 1}), cyclic_group(2), {Mat::Identity(2, 2), X}));
    CodeIsometry code(gs.gauging_map(true), gs.vertex_fact(), gs.full_fact());
    auto path = make_path(gs.graph(), {1, 0});
    Mat Zu = pZ();
    auto Og = gs.dressed_operator(Zu, path);
    Mat Ofull = Mat::Identity(gs.vertex_dim(), gs.vertex_dim());
    apply_local(Zu, gs.vertex_fact(), {"v1"}, Ofull);
    auto Xr = reconstruct_on_complement(code, {"v0", "v2", "e1-2"}, Ofull);
    Mat a = code.matrix(), b = code.matrix();
    apply_local(Xr.matrix, code.physical(), Xr.fact.labels(), a);
    apply_local(Og.matrix, code.physical(), Og.fact.labels(), b);
    CHECK((a - b).norm() < 1e-10);
    CHECK(unitary_order(X) == 2);
}
