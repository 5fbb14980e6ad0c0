#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hqg/tensor.hpp"

namespace hqg {

// Finite group by multiplication table. Identity is index 0.
struct FiniteGroup {
    std::string name;
    std::string kind;  // "cyclic", "dihedral", "s3", "product"
    int n = 1;
    std::vector<FiniteGroup> factors;
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;

    int order() const { return static_cast<int>(mul.size()); }
    int op(int a, int b) const { return mul[a][b]; }
    int inverse(int a) const { return inv[a]; }
    bool is_abelian() const;
};

FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric3();
FiniteGroup product_group(const FiniteGroup &a, const FiniteGroup &b);
FiniteGroup trivial_group();
// "Z2", "Z3", "S3", "D4", "Z2xZ2", "trivial", ...
FiniteGroup make_group(const std::string &spec);

// Closure, associativity, identity and inverse laws by table scan.
bool verify_axioms(const FiniteGroup &G);

enum class Side { left, right };

// U^L(g)|h> = |gh>, U^R(g)|h> = |h g^-1>.
Mat regular_action(const FiniteGroup &G, Side side, int g);
LabeledOperator regular_action(const FiniteGroup &G, Side side, int g, const std::string &label);

Mat haar_average(const FiniteGroup &G, const std::function<Mat(int)> &f);

struct Irrep {
    std::string name;
    int dim = 1;
    std::vector<Mat> mats;
    cplx character(int g) const { return mats[g].trace(); }
};

struct RepresentationData {
    std::vector<Irrep> irreps;
    std::vector<std::vector<int>> classes;
    std::vector<int> center;
    Irrep faithful;
};

RepresentationData representations(const FiniteGroup &G);
std::vector<Irrep> closed_form_irreps(const FiniteGroup &G);
// Eigenspaces of a random Hermitian element of the right-regular algebra.
std::vector<Irrep> generic_irreps(const FiniteGroup &G, unsigned seed = 7);
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup &G);
std::vector<int> group_center(const FiniteGroup &G);
Irrep direct_sum(const std::vector<Irrep> &irreps, const std::string &name);

double homomorphism_deviation(const FiniteGroup &G, const std::vector<Mat> &rep);
double grand_orthogonality_deviation(const FiniteGroup &G, const std::vector<Irrep> &irreps);
bool is_faithful(const FiniteGroup &G, const Irrep &rep, double tol = 1e-9);
// True if the two irrep lists have the same multiset of characters.
bool same_characters(const FiniteGroup &G, const std::vector<Irrep> &a, const std::vector<Irrep> &b,
                     double tol = 1e-8);

// Clock-and-shift basis X^a Z^b on a d-dimensional space.
std::vector<Mat> generalized_pauli_basis(int d);

}  // namespace hqg
