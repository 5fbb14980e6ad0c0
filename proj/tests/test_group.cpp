#include "doctest.h"

#include <algorithm>

#include "hqg/group.hpp"

using namespace hqg;

namespace {

std::vector<int> class_sizes(const FiniteGroup &G) {
    std::vector<int> s;
    for (const auto &c : conjugacy_classes(G)) s.push_back(static_cast<int>(c.size()));
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("group axioms and orders") {
    for (const char *n : {"Z2", "Z3", "S3", "D4", "Z2xZ2", "trivial", "Z48"}) {
        auto G = make_group(n);
        CHECK(verify_axioms(G));
    }
    CHECK(make_group("S3").order() == 6);
    CHECK(make_group("D4").order() == 8);
    CHECK(make_group("Z2xZ2").order() == 4);
    CHECK(make_group("Z48").order() == 48);
    CHECK_FALSE(make_group("S3").is_abelian());
    CHECK(make_group("Z2xZ2").is_abelian());
    CHECK_THROWS_AS(make_group("Q8x"), UnsupportedSpec);
}

TEST_CASE("class sizes and centers match sympy") {
    // tools/oracles/group_oracle.py
    CHECK(class_sizes(make_group("S3")) == std::vector<int>{1, 2, 3});
    CHECK(class_sizes(make_group("D4")) == std::vector<int>{1, 1, 2, 2, 2});
    CHECK(class_sizes(make_group("Z3")) == std::vector<int>{1, 1, 1});
    CHECK(group_center(make_group("S3")).size() == 1);
    CHECK(group_center(make_group("D4")).size() == 2);
    CHECK(group_center(make_group("Z2xZ2")).size() == 4);
}

TEST_CASE("irreps are complete, orthogonal homomorphisms") {
    for (const char *n : {"Z2", "Z3", "S3", "D4", "Z2xZ2"}) {
        auto G = make_group(n);
        auto d = representations(G);
        int sq = 0;
        for (const auto &r : d.irreps) {
            sq += r.dim * r.dim;
            CHECK(homomorphism_deviation(G, r.mats) < 1e-12);
        }
        CHECK(sq == G.order());
        CHECK(d.irreps.size() == d.classes.size());
        CHECK(grand_orthogonality_deviation(G, d.irreps) < 1e-12);
        CHECK(is_faithful(G, d.faithful));
    }
}

TEST_CASE("generic irreps agree with closed forms by character") {
    for (const char *n : {"Z3", "S3", "D4", "Z2xZ2"}) {
        auto G = make_group(n);
        auto gen = generic_irreps(G);
        CHECK(same_characters(G, gen, closed_form_irreps(G)));
        CHECK(grand_orthogonality_deviation(G, gen) < 1e-9);
    }
}

TEST_CASE("regular actions") {
    auto G = make_group("S3");
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) {
            Mat L = regular_action(G, Side::left, g) * regular_action(G, Side::left, h);
            Mat R = regular_action(G, Side::right, g) * regular_action(G, Side::right, h);
            CHECK((L - regular_action(G, Side::left, G.op(g, h))).norm() < 1e-14);
            CHECK((R - regular_action(G, Side::right, G.op(g, h))).norm() < 1e-14);
            Mat LR = regular_action(G, Side::left, g) * regular_action(G, Side::right, h);
            Mat RL = regular_action(G, Side::right, h) * regular_action(G, Side::left, g);
            CHECK((LR - RL).norm() < 1e-14);
        }
    // U^R(g)|h> = |h g^-1>
    Mat R = regular_action(G, Side::right, 3);
    CHECK(std::abs(R(G.op(1, G.inverse(3)), 1) - 1.0) < 1e-14);
}

TEST_CASE("haar average of the regular action projects onto constants") {
    auto G = make_group("D4");
    Mat P = haar_average(G, [&](int g) { return regular_action(G, Side::left, g); });
    CHECK((P - Mat::Constant(8, 8, 1.0 / 8.0)).norm() < 1e-14);
}

TEST_CASE("generalized Pauli basis is trace orthogonal") {
    for (int d : {2, 3, 4}) {
        auto B = generalized_pauli_basis(d);
        CHECK(static_cast<int>(B.size()) == d * d);
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j) {
                cplx t = (B[i].adjoint() * B[j]).trace();
                CHECK(std::abs(t - (i == j ? cplx(d) : cplx(0))) < 1e-12);
            }
    }
}
