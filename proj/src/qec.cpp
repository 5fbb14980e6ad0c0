#include "hqg/qec.hpp"

#include <cmath>

#include "hqg/group.hpp"

namespace hqg {

CodeIsometry::CodeIsometry(Mat V, Factorization logical, Factorization physical)
    : V_(std::move(V)), logical_(std::move(logical)), physical_(std::move(physical)) {
    if (V_.rows() != physical_.total_dim() || V_.cols() != logical_.total_dim())
        throw LabelMismatch("code matrix does not match its factorizations");
    const double dev = (V_.adjoint() * V_ - Mat::Identity(V_.cols(), V_.cols())).norm();
    if (dev > 1e-10) throw NotIsometric("V^dagger V deviates from identity by " + std::to_string(dev));
}

Mat CodeIsometry::compress(const Mat &local, const std::vector<std::string> &labels) const {
    Mat M = V_;
    apply_local(local, physical_, labels, M);
    return V_.adjoint() * M;
}

std::vector<Mat> operator_basis(const Factorization &f, const std::vector<std::string> &labels) {
    std::vector<Mat> out{Mat::Identity(1, 1)};
    for (const auto &l : labels) {
        int p = f.index_of(l);
        if (p < 0) throw LabelMismatch("label " + l + " absent");
        auto local = generalized_pauli_basis(f.subsystems()[p].dim);
        std::vector<Mat> next;
        for (const auto &a : out)
            for (const auto &b : local) next.push_back(kron(a, b));
        out = std::move(next);
    }
    return out;
}

std::vector<std::string> complement_labels(const Factorization &f, const std::set<std::string> &R) {
    std::vector<std::string> out;
    for (const auto &l : f.labels())
        if (!R.count(l)) out.push_back(l);
    for (const auto &r : R)
        if (!f.contains(r)) throw LabelMismatch("region label " + r + " absent");
    return out;
}

namespace {

std::vector<std::string> ordered(const Factorization &f, const std::set<std::string> &R) {
    std::vector<std::string> out;
    for (const auto &l : f.labels())
        if (R.count(l)) out.push_back(l);
    return out;
}

Factorization sub_fact(const Factorization &f, const std::vector<std::string> &labels) {
    return f.restrict_to(std::set<std::string>(labels.begin(), labels.end()));
}

// Least squares over the operator basis of the listed factors.
class ComplementSolver {
public:
    ComplementSolver(const CodeIsometry &code, const std::vector<std::string> &labels) : code_(code), labels_(labels) {
        basis_ = operator_basis(code.physical(), labels);
        check_cap(static_cast<long long>(basis_.size()), "reconstruction unknowns");
        const long long D = code.physical_dim(), k = code.logical_dim();
        A_ = Mat(2 * D * k, static_cast<long>(basis_.size()));
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            Mat top = code.matrix();
            apply_local(basis_[b], code.physical(), labels, top);
            // V^dagger (B (x) 1) = ((B^dagger (x) 1) V)^dagger
            Mat Bd = code.matrix();
            apply_local(basis_[b].adjoint(), code.physical(), labels, Bd);
            Mat bottom = Bd.adjoint();
            A_.col(static_cast<long>(b)) << Eigen::Map<Vec>(top.data(), top.size()),
                Eigen::Map<Vec>(bottom.data(), bottom.size());
        }
        qr_.compute(A_);
    }

    Mat solve(const Mat &O, double &residual) const {
        const Mat &V = code_.matrix();
        Mat top = V * O;
        Mat bottom = O * V.adjoint();
        Vec rhs(A_.rows());
        rhs << Eigen::Map<const Vec>(top.data(), top.size()), Eigen::Map<const Vec>(bottom.data(), bottom.size());
        Vec c = qr_.solve(rhs);
        residual = (A_ * c - rhs).norm();
        Mat X = Mat::Zero(basis_[0].rows(), basis_[0].cols());
        for (std::size_t b = 0; b < basis_.size(); ++b) X += c(static_cast<long>(b)) * basis_[b];
        return X;
    }

private:
    const CodeIsometry &code_;
    std::vector<std::string> labels_;
    std::vector<Mat> basis_;
    Mat A_;
    Eigen::CompleteOrthogonalDecomposition<Mat> qr_;
};

}  // namespace

Correctability is_correctable(const CodeIsometry &code, const std::set<std::string> &R,
                              const std::vector<Mat> &algebra, double tol) {
    Correctability c;
    auto labels = ordered(code.physical(), R);
    auto basis = operator_basis(code.physical(), labels);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        Mat A = code.compress(basis[b], labels);
        for (std::size_t y = 0; y < algebra.size(); ++y) {
            double v = op_norm(A * algebra[y] - algebra[y] * A);
            if (v > c.max_violation) {
                c.max_violation = v;
                c.witness_basis = static_cast<int>(b);
                c.witness_algebra = static_cast<int>(y);
            }
        }
    }
    c.correctable = c.max_violation <= tol;
    if (c.correctable) c.witness_basis = c.witness_algebra = -1;
    return c;
}

std::vector<Mat> full_logical_algebra(const CodeIsometry &code) {
    return operator_basis(code.logical(), code.logical().labels());
}

double choi_mutual_information(const CodeIsometry &code, const std::set<std::string> &R) {
    const long long k = code.logical_dim(), D = code.physical_dim();
    check_cap(k * D, "Choi state");
    std::vector<Subsystem> subs{{"__ref", static_cast<int>(k)}};
    for (const auto &s : code.physical().subsystems()) subs.push_back(s);
    Vec amp(k * D);
    for (long long i = 0; i < k; ++i) amp.segment(i * D, D) = code.matrix().col(i) / std::sqrt(double(k));
    StateVector phi{amp, Factorization(subs)};
    auto with_ref = R;
    with_ref.insert("__ref");
    double s_ref = std::log(double(k));
    double s_r = R.empty() ? 0.0 : entropy(partial_trace(phi, R));
    double s_rr = entropy(partial_trace(phi, with_ref));
    return s_ref + s_r - s_rr;
}

LabeledOperator reconstruct_on_complement(const CodeIsometry &code, const std::set<std::string> &R,
                                          const Mat &O_L, double *residual) {
    auto corr = is_correctable(code, R, {O_L, Mat(O_L.adjoint())});
    if (!corr.correctable)
        throw NotCorrectable("region is not correctable for this operator (violation " +
                             std::to_string(corr.max_violation) + ")");
    auto rc = complement_labels(code.physical(), R);
    ComplementSolver solver(code, rc);
    double res = 0.0;
    Mat X = solver.solve(O_L, res);
    if (residual) *residual = res;
    if (res > 1e-9) throw IllConditioned("least-squares residual " + std::to_string(res));
    return local_operator(X, sub_fact(code.physical(), rc));
}

int unitary_order(const Mat &U, int max_order) {
    Mat P = U;
    const Mat I = Mat::Identity(U.rows(), U.cols());
    for (int m = 1; m <= max_order; ++m) {
        if ((P - I).norm() < 1e-9) return m;
        P = P * U;
    }
    return 0;
}

namespace {

Mat spectral_log(const Mat &U, int snap_order) {
    Eigen::ComplexSchur<Mat> cs(U);
    const Mat &Q = cs.matrixU();
    Vec d(U.rows());
    for (int i = 0; i < U.rows(); ++i) {
        double a = std::arg(cs.matrixT()(i, i));
        if (a < 0) a += 2.0 * M_PI;
        if (snap_order > 0) {
            double step = 2.0 * M_PI / snap_order;
            double s = std::round(a / step) * step;
            if (std::abs(s - a) < 1e-8) a = s;
        }
        if (a > 2.0 * M_PI - 1e-12) a = 0.0;
        d(i) = a;
    }
    return Q * d.asDiagonal() * Q.adjoint();
}

Mat support_projector(const CodeIsometry &code, const std::vector<std::string> &rc) {
    Mat T = partial_trace(code.projector(), code.physical(), std::set<std::string>(rc.begin(), rc.end()));
    T = (T + T.adjoint()) / 2.0;
    return T * matrix_function(T, MatFn::pinv, 1e-10);
}

}  // namespace

std::vector<LabeledOperator> lift_representation(const CodeIsometry &code, const std::set<std::string> &R,
                                                 const std::vector<Mat> &U_L,
                                                 const std::vector<std::vector<int>> &mul) {
    std::vector<Mat> alg(U_L.begin(), U_L.end());
    auto corr = is_correctable(code, R, alg);
    if (!corr.correctable)
        throw NotCorrectable("region is not correctable for the representation (violation " +
                             std::to_string(corr.max_violation) + ")");
    auto rc = complement_labels(code.physical(), R);
    auto fact = sub_fact(code.physical(), rc);
    ComplementSolver solver(code, rc);
    Mat PS = support_projector(code, rc);
    const Mat I = Mat::Identity(PS.rows(), PS.cols());
    std::vector<LabeledOperator> out;
    const int order = static_cast<int>(U_L.size());
    for (const auto &U : U_L) {
        Mat H = spectral_log(U, order);
        double res = 0.0;
        Mat X = solver.solve(H, res);
        if (res > 1e-9) throw IllConditioned("least-squares residual " + std::to_string(res));
        Mat Ht = (X + X.adjoint()) / 2.0;
        Mat W0 = matrix_function(Mat(cplx(0, 1) * Ht), MatFn::exp);
        out.push_back(local_operator(PS * W0 * PS + (I - PS), fact));
    }
    double dev = lift_homomorphism_deviation(out, mul);
    if (dev > 1e-8) throw RepresentationRepairFailed("homomorphism deviation " + std::to_string(dev));
    return out;
}

LabeledOperator lift_unitary(const CodeIsometry &code, const std::set<std::string> &R, const Mat &U_L) {
    if (!is_unitary(U_L, 1e-10)) throw NotNormal("logical operator is not unitary");
    Eigen::ComplexEigenSolver<Mat> es(U_L, false);
    bool near_cut = false;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (M_PI - std::abs(std::arg(es.eigenvalues()(i))) < 1e-8) near_cut = true;
    if (near_cut) {
        int m = unitary_order(U_L);
        if (m == 0) throw BranchAmbiguity("eigenvalue -1 and no finite order for the cyclic lift");
        std::vector<Mat> rep{Mat::Identity(U_L.rows(), U_L.cols())};
        for (int j = 1; j < m; ++j) rep.push_back(rep.back() * U_L);
        auto Zm = cyclic_group(m);
        return lift_representation(code, R, rep, Zm.mul)[1 % m];
    }
    Mat H = cplx(0, -1) * matrix_function(U_L, MatFn::log);
    H = (H + H.adjoint()) / 2.0;
    auto X = reconstruct_on_complement(code, R, H);
    Mat Ht = (X.matrix + X.matrix.adjoint()) / 2.0;
    return local_operator(matrix_function(Mat(cplx(0, 1) * Ht), MatFn::exp), X.fact);
}

double lift_homomorphism_deviation(const std::vector<LabeledOperator> &W, const std::vector<std::vector<int>> &mul) {
    double dev = 0.0;
    for (std::size_t g = 0; g < W.size(); ++g)
        for (std::size_t h = 0; h < W.size(); ++h)
            dev = std::max(dev, op_norm(W[g].matrix * W[h].matrix - W[mul[g][h]].matrix));
    return dev;
}

}  // namespace hqg
