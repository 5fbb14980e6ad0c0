#pragma once

#include <set>
#include <string>
#include <vector>

#include "hqg/tensor.hpp"

namespace hqg {

class CodeIsometry {
public:
    CodeIsometry() = default;
    CodeIsometry(Mat V, Factorization logical, Factorization physical);

    const Mat &matrix() const { return V_; }
    const Factorization &logical() const { return logical_; }
    const Factorization &physical() const { return physical_; }
    long long logical_dim() const { return V_.cols(); }
    long long physical_dim() const { return V_.rows(); }
    Mat projector() const { return V_ * V_.adjoint(); }
    // V^dagger (O (x) 1) V for a local operator on the given physical labels.
    Mat compress(const Mat &local, const std::vector<std::string> &labels) const;

private:
    Mat V_;
    Factorization logical_, physical_;
};

// Generalized-Pauli product basis of the operators on the listed factors.
std::vector<Mat> operator_basis(const Factorization &f, const std::vector<std::string> &labels);
std::vector<std::string> complement_labels(const Factorization &f, const std::set<std::string> &R);

struct Correctability {
    bool correctable = true;
    double max_violation = 0.0;
    int witness_basis = -1;    // index into operator_basis(R)
    int witness_algebra = -1;  // index into the algebra list
};

// [P O_R P, V Y V^dagger] = 0 for a spanning basis of O_R and all Y.
Correctability is_correctable(const CodeIsometry &code, const std::set<std::string> &R,
                              const std::vector<Mat> &algebra, double tol = 1e-9);
// Full logical operator algebra, spanned by the generalized Pauli basis.
std::vector<Mat> full_logical_algebra(const CodeIsometry &code);

// I(reference : R) of the Choi state (1 (x) V)|Phi>.
double choi_mutual_information(const CodeIsometry &code, const std::set<std::string> &R);

// X on R^c with X V = V O_L and V^dagger X = O_L V^dagger; matrix on the R^c factors.
LabeledOperator reconstruct_on_complement(const CodeIsometry &code, const std::set<std::string> &R,
                                          const Mat &O_L, double *residual = nullptr);

LabeledOperator lift_unitary(const CodeIsometry &code, const std::set<std::string> &R, const Mat &U_L);

// Per-element lifts repaired on supp Tr_R(P); exact homomorphism on R^c.
std::vector<LabeledOperator> lift_representation(const CodeIsometry &code, const std::set<std::string> &R,
                                                 const std::vector<Mat> &U_L,
                                                 const std::vector<std::vector<int>> &mul);

// Smallest m <= max_order with U^m = 1, 0 if none.
int unitary_order(const Mat &U, int max_order = 64);

// ||W(g)W(h) - W(gh)|| maximized over pairs.
double lift_homomorphism_deviation(const std::vector<LabeledOperator> &W, const std::vector<std::vector<int>> &mul);

}  // namespace hqg
