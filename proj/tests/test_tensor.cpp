#include "doctest.h"

#include "hqg/tensor.hpp"

using namespace hqg;

namespace {

Factorization three_qubits() { return Factorization({{"v0", 2}, {"v1", 2}, {"v2", 2}}); }

StateVector ramp_state() {
    Vec a(8);
    for (int i = 0; i < 8; ++i) a(i) = i + 1.0;
    return {a / a.norm(), three_qubits()};
}

Mat pauli(char c) {
    Mat m(2, 2);
    if (c == 'X') m << 0, 1, 1, 0;
    else if (c == 'Z') m << 1, 0, 0, -1;
    else m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

}  // namespace

TEST_CASE("factorization basics") {
    auto f = three_qubits();
    CHECK(f.total_dim() == 8);
    CHECK(f.index_of("v2") == 2);
    CHECK(f.index_of("e0-1") == -1);
    CHECK(f.restrict_to({"v2", "v0"}).labels() == std::vector<std::string>{"v0", "v2"});
    CHECK_THROWS_AS(Factorization({{"a", 2}, {"a", 2}}), LabelMismatch);
}

TEST_CASE("embedding follows Kronecker order") {
    auto f = three_qubits();
    auto op = local_operator(pauli('X'), Factorization({{"v1", 2}}));
    auto big = embed(op, f);
    Mat I = Mat::Identity(2, 2);
    CHECK((big.matrix - kron_all({I, pauli('X'), I})).norm() < 1e-14);
    CHECK_THROWS_AS(embed(local_operator(pauli('X'), Factorization({{"v9", 2}})), f), LabelMismatch);
    CHECK_THROWS_AS(embed(local_operator(Mat::Identity(3, 3), Factorization({{"v1", 3}})), f), LabelMismatch);
}

TEST_CASE("apply_local on permuted positions") {
    Mat M = Mat::Identity(8, 8);
    Mat XZ = kron(pauli('X'), pauli('Z'));
    apply_local(XZ, three_qubits(), {"v2", "v0"}, M);
    CHECK((M - kron_all({pauli('Z'), Mat::Identity(2, 2), pauli('X')})).norm() < 1e-14);
}

TEST_CASE("partial trace and entropy against numpy") {
    auto psi = ramp_state();
    Mat r0 = partial_trace(psi, {"v0"});
    Mat r02 = partial_trace(psi, {"v0", "v2"});
    // tools/oracles/tensor_oracle.py
    CHECK(entropy(r0) == doctest::Approx(0.04538248035600185).epsilon(1e-12));
    CHECK(entropy(r02) == doctest::Approx(0.03961054227990892).epsilon(1e-12));
    CHECK(std::abs(r02(1, 2) - cplx(0.18627450980392155)) < 1e-14);
    Mat rho = psi.amp * psi.amp.adjoint();
    CHECK((partial_trace(rho, psi.fact, {"v0"}) - r0).norm() < 1e-14);
    CHECK(entropy(partial_trace(psi, {"v0", "v1", "v2"})) < 1e-10);
}

TEST_CASE("entropy input validation") {
    Mat bad = Mat::Identity(2, 2);
    CHECK_THROWS_AS(entropy(bad), NotDensityMatrix);
    Mat neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(entropy(neg), NotDensityMatrix);
    CHECK(entropy(Mat::Identity(4, 4) / 4.0) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("support test") {
    auto f = three_qubits();
    Mat M = Mat::Identity(8, 8);
    apply_local(kron(pauli('Z'), pauli('Y')), f, {"v0", "v1"}, M);
    CHECK(supported_on(M, f, {"v0", "v1"}));
    CHECK_FALSE(supported_on(M, f, {"v0"}));
    CHECK(support_deviation(M, f, {"v1"}) > 0.5);
    CHECK((restrict_operator(M, f, {"v0", "v1"}) - kron(pauli('Z'), pauli('Y'))).norm() < 1e-14);
}

TEST_CASE("matrix functions against scipy") {
    Mat A(2, 2);
    A << 2.0, 0.5, 0.5, 1.0;
    Mat S = matrix_function(A, MatFn::sqrt);
    CHECK(std::abs(S(0, 0) - 1.3984702048606794) < 1e-13);
    CHECK(std::abs(S(0, 1) - 0.21043071571642302) < 1e-13);
    CHECK(std::abs(S(1, 1) - 0.9776087734278337) < 1e-13);
    Mat B(2, 2);
    B << 0, cplx(0, 1), cplx(0, 1), 0;
    Mat E = matrix_function(B, MatFn::exp);
    CHECK(std::abs(E(0, 0) - 0.5403023058681397) < 1e-13);
    CHECK(std::abs(E(0, 1) - cplx(0, 0.8414709848078966)) < 1e-13);
    Mat iA = cplx(0, 1) * A;
    Mat U = matrix_function(iA, MatFn::exp);
    CHECK((matrix_function(U, MatFn::log) - iA).norm() < 1e-12);
    Mat P(2, 2);
    P << 1, 0, 0, 0;
    CHECK((matrix_function(P, MatFn::pinv) - P).norm() < 1e-14);
}

TEST_CASE("matrix function errors") {
    Mat Z = pauli('Z');
    Mat minus = -Mat::Identity(2, 2);
    CHECK_THROWS_AS(matrix_function(minus, MatFn::log), BranchAmbiguity);
    CHECK_THROWS_AS(matrix_function(Z, MatFn::sqrt), NotPSD);
    Mat J(2, 2);
    J << 1, 1, 0, 1;
    CHECK_THROWS_AS(matrix_function(J, MatFn::exp), NotNormal);
}

TEST_CASE("dense cap") {
    long long old = dense_cap();
    CHECK(old == 16384);
    set_dense_cap(4);
    CHECK_THROWS_AS(embed(local_operator(pauli('X'), Factorization({{"v1", 2}})), three_qubits()), CapExceeded);
    set_dense_cap(old);
}

TEST_CASE("norms") {
    Mat A(2, 2);
    A << 3, 0, 4, 0;
    CHECK(op_norm(A) == doctest::Approx(5.0));
    CHECK(is_unitary(pauli('Y')));
    CHECK_FALSE(is_unitary(A));
}
