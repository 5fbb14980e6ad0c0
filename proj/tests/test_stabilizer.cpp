#include "doctest.h"

#include <random>

#include "hqg/stabilizer.hpp"

using namespace hqg;

namespace {

Pauli random_pauli(int n, std::mt19937 &rng) {
    Pauli p(n);
    for (int q = 0; q < n; ++q) {
        p.x[q] = rng() & 1;
        p.z[q] = rng() & 1;
    }
    p.phase = rng() & 3;
    return p;
}

double phase_free_distance(const Mat &a, const Mat &b) {
    cplx ov = (a.adjoint() * b).trace();
    if (std::abs(ov) < 1e-12) return (a - b).norm();
    return (a * (ov / std::abs(ov)) - b).norm();
}

// Dense contraction of legs (i, j) of a state vector on n qubits.
Vec dense_contract(const Vec &v, int n, int i, int j) {
    Vec out = Vec::Zero(1LL << (n - 2));
    for (long long b = 0; b < v.size(); ++b) {
        int bi = (b >> (n - 1 - i)) & 1, bj = (b >> (n - 1 - j)) & 1;
        if (bi != bj) continue;
        long long r = 0;
        for (int q = 0; q < n; ++q)
            if (q != i && q != j) r = (r << 1) | ((b >> (n - 1 - q)) & 1);
        out(r) += v(b);
    }
    return out;
}

}  // namespace

TEST_CASE("Pauli products agree with dense matrices") {
    std::mt19937 rng(5);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + t % 6;
        Pauli a = random_pauli(n, rng), b = random_pauli(n, rng);
        CHECK(((a * b).dense() - a.dense() * b.dense()).norm() < 1e-12);
        Mat c = a.dense() * b.dense() - b.dense() * a.dense();
        CHECK(a.commutes(b) == (c.norm() < 1e-12));
        CHECK((a.transpose().dense() - a.dense().transpose()).norm() < 1e-12);
        CHECK((a.inverse().dense() * a.dense() - Mat::Identity(1 << n, 1 << n)).norm() < 1e-12);
        Vec v = Vec::Random(1 << n);
        CHECK((a.apply(v) - a.dense() * v).norm() < 1e-12);
    }
    CHECK(Pauli::from_string("Y").dense()(1, 0) == cplx(0, 1));
    CHECK(Pauli::from_string("-XZ").str() == "-XZ");
    CHECK(Pauli::from_string("YI").str() == "+YI");
}

TEST_CASE("six-leg perfect state") {
    auto s = six_leg_state();
    CHECK(s.valid());
    CHECK(s.membership(Pauli::from_string("XXXXXX")) == 1);
    CHECK(s.membership(Pauli::from_string("ZZZZZZ")) == 1);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) CHECK(s.entropy_bits({a, b}) == 2);
    int perfect = 0;
    for (int mask = 0; mask < 64; ++mask) {
        if (__builtin_popcount(mask) != 3) continue;
        std::vector<int> A;
        for (int q = 0; q < 6; ++q)
            if (mask >> q & 1) A.push_back(q);
        perfect += s.entropy_bits(A) == 3;
    }
    CHECK(perfect == 20);
    // dense: two legs maximally mixed
    Vec v = s.dense_state();
    StateVector psi{v, Factorization({{"0", 2}, {"1", 2}, {"2", 2}, {"3", 2}, {"4", 2}, {"5", 2}})};
    CHECK((partial_trace(psi, {"1", "4"}) - Mat::Identity(4, 4) / 4.0).norm() < 1e-12);
}

TEST_CASE("perfect tensor is the five-qubit encoder") {
    auto t = perfect_tensor();
    CHECK(t.is_isometry());
    Mat V = t.dense_isometry();
    CHECK((V.adjoint() * V - Mat::Identity(2, 2)).norm() < 1e-12);
    for (const char *s : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"})
        CHECK((Pauli::from_string(s).dense() * V - V).norm() < 1e-12);
    Mat X(2, 2), Z(2, 2);
    X << 0, 1, 1, 0;
    Z << 1, 0, 0, -1;
    CHECK((Pauli::from_string("XXXXX").dense() * V - V * X).norm() < 1e-12);
    CHECK((Pauli::from_string("ZZZZZ").dense() * V - V * Z).norm() < 1e-12);
}

TEST_CASE("copy tensor") {
    auto c = copy_tensor_z2();
    Mat V = c.dense_isometry();
    CHECK((V.adjoint() * V - Mat::Identity(2, 2)).norm() < 1e-12);
    Vec plus(2), pp(4);
    plus << 1, 1;
    plus /= std::sqrt(2.0);
    pp << 0.5, 0.5, 0.5, 0.5;
    CHECK(std::abs(std::abs(pp.dot(V * plus)) - 1.0) < 1e-12);
    Mat X = Pauli::from_string("X").dense();
    CHECK((Pauli::from_string("XI").dense() * V - V * X).norm() < 1e-12);
    CHECK((Pauli::from_string("IX").dense() * V - V * X).norm() < 1e-12);
    CHECK((Pauli::from_string("ZZ").dense() * V - V * Pauli::from_string("Z").dense()).norm() < 1e-12);
}

TEST_CASE("chained copy tensors give a GHZ-class isometry") {
    auto a = copy_tensor_z2("a.");
    auto b = copy_tensor_z2("b.");
    auto s = compose(a, b, {{"a.o2", "b.in"}});
    CHECK(s.size() == 4);
    CHECK(s.num_inputs() == 1);
    auto out = s.outputs();
    CHECK(s.membership(s.embed(Pauli::from_string("XXI"), out)) == 1);
    CHECK(s.membership(s.embed(Pauli::from_string("IXX"), out)) == 1);
    Mat V = s.dense_isometry();
    CHECK((Pauli::from_string("ZZZ").dense() * V - V * Pauli::from_string("Z").dense()).norm() < 1e-12);
    // dense contraction agrees up to global phase
    Vec dense = dense_contract(tensor_product(a, b).dense_state(), 6, 2, 3);
    dense /= dense.norm();
    CHECK(phase_free_distance(dense, s.dense_state()) < 1e-10);
}

TEST_CASE("contraction order does not change the canonical form") {
    auto t1 = perfect_tensor("a");
    auto t2 = perfect_tensor("b");
    auto t3 = perfect_tensor("c");
    auto left = compose(compose(t1, t2, {{"a1", "b1"}}), t3, {{"b2", "c1"}});
    auto right_inner = compose(t2, t3, {{"b2", "c1"}});
    auto right = compose(t1, right_inner, {{"a1", "b1"}});
    // align leg order before comparing
    std::vector<std::string> order;
    for (const auto &l : left.legs()) order.push_back(l.label);
    std::vector<int> perm;
    for (const auto &l : order) perm.push_back(right.leg_index(l));
    std::vector<Pauli> g;
    for (const auto &p : right.generators()) g.push_back(p.restrict(perm));
    StabilizerState aligned(left.legs(), g);
    CHECK(left.same_state(aligned));
    CHECK(left.is_isometry());
    CHECK(left.num_inputs() == 3);
}

TEST_CASE("symplectic contraction matches dense on two perfect tensors") {
    auto t1 = six_leg_state("a");
    auto t2 = six_leg_state("b");
    auto s = compose(t1, t2, {{"a3", "b0"}});
    Vec d = dense_contract(tensor_product(t1, t2).dense_state(), 12, 3, 6);
    d /= d.norm();
    CHECK(phase_free_distance(d, s.dense_state()) < 1e-10);
}

TEST_CASE("Pauli reconstruction on the five-qubit code") {
    auto t = perfect_tensor();
    auto Zbar = pauli_reconstruct(t, Pauli::from_string("Z"), {1, 2, 3});
    REQUIRE(Zbar.has_value());
    for (int q : Zbar->support()) CHECK((q >= 1 && q <= 3));
    Mat V = t.dense_isometry();
    CHECK((Zbar->restrict(t.outputs()).dense() * V - V * Pauli::from_string("Z").dense()).norm() < 1e-12);
    CHECK_FALSE(pauli_reconstruct(t, Pauli::from_string("Z"), {1, 2}).has_value());
    auto id = pauli_reconstruct(t, Pauli::from_string("I"), {});
    REQUIRE(id.has_value());
    CHECK(id->is_identity());
    CHECK(id->phase == 0);
    auto Y = pauli_reconstruct(t, Pauli::from_string("Y"), {2, 3, 4});
    REQUIRE(Y.has_value());
    CHECK((Y->restrict(t.outputs()).dense() * V - V * Pauli::from_string("Y").dense()).norm() < 1e-12);
}

TEST_CASE("Z2 gauge projector tableau") {
    LabeledGraph one;
    one.add_vertex(0, 0, true);
    one.add_vertex(1, 1, true);
    one.add_edge(0, 1);
    auto t1 = z2_gauge_projector_tableau(one, {1});
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].str() == "+XX");
    auto tri = triangle_graph({1, 1, 1});
    auto t3 = z2_gauge_projector_tableau(tri, {});
    CHECK(t3.size() == 2);
    for (const auto &p : t3) CHECK(p.weight() == 2);
    LabeledGraph empty;
    empty.add_vertex(0, 0);
    CHECK(z2_gauge_projector_tableau(empty, {}).empty());
}

TEST_CASE("projection and null states") {
    auto s = six_leg_state();
    CHECK_THROWS_AS(s.project(Pauli::from_string("-XXXXXX")), NullState);
    auto c = copy_tensor_z2();
    c.project(Pauli::from_string("XII"));
    CHECK(c.valid());
    CHECK_FALSE(c.is_isometry());
}
