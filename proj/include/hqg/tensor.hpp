#pragma once

#include <complex>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hqg/errors.hpp"

namespace hqg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kTol = 1e-10;
constexpr double kEigFloor = 1e-12;

// Global dense cap on total Hilbert-space dimension.
long long dense_cap();
void set_dense_cap(long long cap);
void check_cap(long long dim, const std::string &what);

struct Subsystem {
    std::string label;
    int dim = 1;
};

// Ordered tensor factorization. The first factor is the most significant
// index of the Kronecker product.
class Factorization {
public:
    Factorization() = default;
    explicit Factorization(std::vector<Subsystem> subs);

    const std::vector<Subsystem> &subsystems() const { return subs_; }
    std::size_t size() const { return subs_.size(); }
    long long total_dim() const;
    int index_of(const std::string &label) const;
    bool contains(const std::string &label) const { return index_of(label) >= 0; }
    std::vector<int> dims() const;
    std::vector<std::string> labels() const;
    // Sub-factorization in this factorization's order.
    Factorization restrict_to(const std::set<std::string> &keep) const;

    bool operator==(const Factorization &o) const;
    bool operator!=(const Factorization &o) const { return !(*this == o); }

private:
    std::vector<Subsystem> subs_;
};

struct LabeledOperator {
    Mat matrix;
    Factorization fact;
    std::set<std::string> support;
};

struct StateVector {
    Vec amp;
    Factorization fact;
};

// Operator with support equal to every label of its factorization.
LabeledOperator local_operator(const Mat &m, const Factorization &f);

LabeledOperator embed(const LabeledOperator &op, const Factorization &target);

// Row-index table for acting on a subset of factors of a product space.
class LocalIndex {
public:
    LocalIndex(const std::vector<int> &dims, const std::vector<int> &positions);
    long long local_dim() const { return static_cast<long long>(off_.size()); }
    long long rest_dim() const { return static_cast<long long>(base_.size()); }
    long long row(long long rest, long long local) const { return base_[rest] + off_[local]; }

private:
    std::vector<long long> base_;
    std::vector<long long> off_;
};

// M <- (local on positions) * M, acting on rows only.
void apply_local(const Mat &local, const std::vector<int> &dims,
                 const std::vector<int> &positions, Mat &M);
void apply_local(const Mat &local, const Factorization &f,
                 const std::vector<std::string> &labels, Mat &M);
// M <- M * (local on positions)^dagger.
void apply_local_adjoint_right(const Mat &local, const std::vector<int> &dims,
                               const std::vector<int> &positions, Mat &M);

Mat partial_trace(const Mat &rho, const Factorization &f, const std::set<std::string> &keep);
Mat partial_trace(const StateVector &psi, const std::set<std::string> &keep);

// ||O - (Tr_{S^c} O / dim S^c) (x) 1||, with S = labels.
double support_deviation(const Mat &op, const Factorization &f, const std::set<std::string> &labels);
bool supported_on(const Mat &op, const Factorization &f, const std::set<std::string> &labels,
                  double tol = 1e-9);
// Reduce an operator known to be supported on labels to its local matrix.
Mat restrict_operator(const Mat &op, const Factorization &f, const std::set<std::string> &labels);

double entropy(const Mat &rho, double tol = 1e-8);

enum class MatFn { log, exp, sqrt, pinv };
Mat matrix_function(const Mat &m, MatFn fn, double cutoff = 1e-10);
LabeledOperator matrix_function(const LabeledOperator &op, MatFn fn, double cutoff = 1e-10);

Mat kron(const Mat &a, const Mat &b);
Mat kron_all(const std::vector<Mat> &ms);
double op_norm(const Mat &m);
// Operator norm up to 256 rows/cols, Frobenius (an upper bound) beyond.
double dev_norm(const Mat &m);
bool is_unitary(const Mat &m, double tol = 1e-10);
long double trace_real(const Mat &m);

}  // namespace hqg
