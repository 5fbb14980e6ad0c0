#include "hqg/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>

#include <Eigen/Eigenvalues>

namespace hqg {

namespace {
std::atomic<long long> g_dense_cap{1LL << 14};
}

long long dense_cap() { return g_dense_cap.load(); }
void set_dense_cap(long long cap) { g_dense_cap.store(cap); }

void check_cap(long long dim, const std::string &what) {
    if (dim > dense_cap())
        throw CapExceeded(what + " needs dimension " + std::to_string(dim) + " > cap " +
                          std::to_string(dense_cap()));
}

Factorization::Factorization(std::vector<Subsystem> subs) : subs_(std::move(subs)) {
    std::set<std::string> seen;
    for (const auto &s : subs_) {
        if (s.dim < 1) throw LabelMismatch("subsystem " + s.label + " has dimension < 1");
        if (!seen.insert(s.label).second) throw LabelMismatch("duplicate label " + s.label);
    }
}

long long Factorization::total_dim() const {
    long long d = 1;
    for (const auto &s : subs_) d *= s.dim;
    return d;
}

int Factorization::index_of(const std::string &label) const {
    for (std::size_t i = 0; i < subs_.size(); ++i)
        if (subs_[i].label == label) return static_cast<int>(i);
    return -1;
}

std::vector<int> Factorization::dims() const {
    std::vector<int> d;
    for (const auto &s : subs_) d.push_back(s.dim);
    return d;
}

std::vector<std::string> Factorization::labels() const {
    std::vector<std::string> l;
    for (const auto &s : subs_) l.push_back(s.label);
    return l;
}

Factorization Factorization::restrict_to(const std::set<std::string> &keep) const {
    std::vector<Subsystem> out;
    for (const auto &s : subs_)
        if (keep.count(s.label)) out.push_back(s);
    for (const auto &k : keep)
        if (!contains(k)) throw LabelMismatch("label " + k + " not in factorization");
    return Factorization(out);
}

bool Factorization::operator==(const Factorization &o) const {
    if (subs_.size() != o.subs_.size()) return false;
    for (std::size_t i = 0; i < subs_.size(); ++i)
        if (subs_[i].label != o.subs_[i].label || subs_[i].dim != o.subs_[i].dim) return false;
    return true;
}

LabeledOperator local_operator(const Mat &m, const Factorization &f) {
    if (m.rows() != f.total_dim() || m.cols() != f.total_dim())
        throw LabelMismatch("matrix size does not match factorization");
    auto l = f.labels();
    return {m, f, std::set<std::string>(l.begin(), l.end())};
}

LocalIndex::LocalIndex(const std::vector<int> &dims, const std::vector<int> &positions) {
    const int n = static_cast<int>(dims.size());
    std::vector<long long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];
    std::vector<bool> is_local(n, false);
    for (int p : positions) {
        if (p < 0 || p >= n || is_local[p]) throw LabelMismatch("bad local position");
        is_local[p] = true;
    }
    off_ = {0};
    for (int p : positions) {
        std::vector<long long> next;
        next.reserve(off_.size() * dims[p]);
        for (long long o : off_)
            for (int a = 0; a < dims[p]; ++a) next.push_back(o + a * stride[p]);
        off_ = std::move(next);
    }
    base_ = {0};
    for (int i = 0; i < n; ++i) {
        if (is_local[i]) continue;
        std::vector<long long> next;
        next.reserve(base_.size() * dims[i]);
        for (long long b : base_)
            for (int a = 0; a < dims[i]; ++a) next.push_back(b + a * stride[i]);
        base_ = std::move(next);
    }
}

void apply_local(const Mat &local, const std::vector<int> &dims,
                 const std::vector<int> &positions, Mat &M) {
    LocalIndex idx(dims, positions);
    const long long dl = idx.local_dim();
    if (local.rows() != dl || local.cols() != dl) throw LabelMismatch("local operator size mismatch");
    Mat block(dl, M.cols());
    for (long long r = 0; r < idx.rest_dim(); ++r) {
        for (long long a = 0; a < dl; ++a) block.row(a) = M.row(idx.row(r, a));
        Mat out = local * block;
        for (long long a = 0; a < dl; ++a) M.row(idx.row(r, a)) = out.row(a);
    }
}

void apply_local(const Mat &local, const Factorization &f, const std::vector<std::string> &labels,
                 Mat &M) {
    std::vector<int> pos;
    for (const auto &l : labels) {
        int p = f.index_of(l);
        if (p < 0) throw LabelMismatch("label " + l + " not in factorization");
        pos.push_back(p);
    }
    apply_local(local, f.dims(), pos, M);
}

void apply_local_adjoint_right(const Mat &local, const std::vector<int> &dims,
                               const std::vector<int> &positions, Mat &M) {
    Mat t = M.adjoint();
    apply_local(local, dims, positions, t);
    M = t.adjoint();
}

LabeledOperator embed(const LabeledOperator &op, const Factorization &target) {
    std::vector<std::string> labels;
    for (const auto &s : op.fact.subsystems()) {
        int p = target.index_of(s.label);
        if (p < 0) throw LabelMismatch("label " + s.label + " absent from target");
        if (target.subsystems()[p].dim != s.dim)
            throw LabelMismatch("dimension mismatch on " + s.label);
        labels.push_back(s.label);
    }
    for (const auto &s : op.support)
        if (!target.contains(s)) throw LabelMismatch("support label " + s + " absent from target");
    const long long D = target.total_dim();
    check_cap(D, "embed");
    Mat M = Mat::Identity(D, D);
    apply_local(op.matrix, target, labels, M);
    return {M, target, op.support};
}

namespace {

// Split each basis index into (kept index, traced index).
void split_indices(const Factorization &f, const std::set<std::string> &keep,
                   std::vector<long long> &kidx, std::vector<long long> &tidx, long long &dk,
                   long long &dt) {
    for (const auto &k : keep)
        if (!f.contains(k)) throw LabelMismatch("label " + k + " not in factorization");
    const auto &subs = f.subsystems();
    const long long D = f.total_dim();
    kidx.assign(D, 0);
    tidx.assign(D, 0);
    dk = 1;
    dt = 1;
    for (const auto &s : subs) (keep.count(s.label) ? dk : dt) *= s.dim;
    for (long long i = 0; i < D; ++i) {
        long long rem = i, k = 0, t = 0, kmul = 1, tmul = 1;
        for (int j = static_cast<int>(subs.size()) - 1; j >= 0; --j) {
            long long a = rem % subs[j].dim;
            rem /= subs[j].dim;
            if (keep.count(subs[j].label)) {
                k += a * kmul;
                kmul *= subs[j].dim;
            } else {
                t += a * tmul;
                tmul *= subs[j].dim;
            }
        }
        kidx[i] = k;
        tidx[i] = t;
    }
}

}  // namespace

Mat partial_trace(const Mat &rho, const Factorization &f, const std::set<std::string> &keep) {
    if (rho.rows() != f.total_dim() || rho.cols() != f.total_dim())
        throw LabelMismatch("operator size does not match factorization");
    std::vector<long long> kidx, tidx;
    long long dk, dt;
    split_indices(f, keep, kidx, tidx, dk, dt);
    std::vector<std::vector<long long>> groups(dt, std::vector<long long>(dk));
    for (long long i = 0; i < f.total_dim(); ++i) groups[tidx[i]][kidx[i]] = i;
    Mat out = Mat::Zero(dk, dk);
    for (long long t = 0; t < dt; ++t)
        for (long long a = 0; a < dk; ++a)
            for (long long b = 0; b < dk; ++b) out(a, b) += rho(groups[t][a], groups[t][b]);
    return out;
}

Mat partial_trace(const StateVector &psi, const std::set<std::string> &keep) {
    if (psi.amp.size() != psi.fact.total_dim()) throw LabelMismatch("state size mismatch");
    std::vector<long long> kidx, tidx;
    long long dk, dt;
    split_indices(psi.fact, keep, kidx, tidx, dk, dt);
    Mat A = Mat::Zero(dk, dt);
    for (long long i = 0; i < psi.fact.total_dim(); ++i) A(kidx[i], tidx[i]) = psi.amp(i);
    return A * A.adjoint();
}

double support_deviation(const Mat &op, const Factorization &f, const std::set<std::string> &labels) {
    std::vector<long long> kidx, tidx;
    long long dk, dt;
    split_indices(f, labels, kidx, tidx, dk, dt);
    Mat red = partial_trace(op, f, labels) / static_cast<double>(dt);
    double s = 0.0;
    for (long long i = 0; i < op.rows(); ++i)
        for (long long j = 0; j < op.cols(); ++j) {
            cplx expect = tidx[i] == tidx[j] ? red(kidx[i], kidx[j]) : cplx(0.0);
            s += std::norm(op(i, j) - expect);
        }
    return std::sqrt(s);
}

bool supported_on(const Mat &op, const Factorization &f, const std::set<std::string> &labels,
                  double tol) {
    return support_deviation(op, f, labels) <= tol * std::max(1.0, op.norm());
}

Mat restrict_operator(const Mat &op, const Factorization &f, const std::set<std::string> &labels) {
    long long dt = f.total_dim() / f.restrict_to(labels).total_dim();
    return partial_trace(op, f, labels) / static_cast<double>(dt);
}

double entropy(const Mat &rho, double tol) {
    if (rho.rows() != rho.cols()) throw NotDensityMatrix("not square");
    if ((rho - rho.adjoint()).norm() > tol) throw NotDensityMatrix("not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > tol) throw NotDensityMatrix("trace != 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double l = es.eigenvalues()(i);
        if (l < -tol) throw NotDensityMatrix("negative eigenvalue " + std::to_string(l));
        if (l > kEigFloor) s -= l * std::log(l);
    }
    return s;
}

namespace {

bool is_hermitian(const Mat &m, double tol) { return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm()); }

Mat normal_function(const Mat &m, const std::function<cplx(cplx)> &fn) {
    if ((m * m.adjoint() - m.adjoint() * m).norm() > 1e-8 * std::max(1.0, m.squaredNorm()))
        throw NotNormal("matrix function requires a normal matrix");
    Eigen::ComplexSchur<Mat> cs(m);
    const Mat &Q = cs.matrixU();
    const Mat &T = cs.matrixT();
    Vec d(T.rows());
    for (int i = 0; i < T.rows(); ++i) d(i) = fn(T(i, i));
    return Q * d.asDiagonal() * Q.adjoint();
}

}  // namespace

Mat matrix_function(const Mat &m, MatFn fn, double cutoff) {
    if (m.rows() != m.cols()) throw LabelMismatch("matrix function needs a square matrix");
    switch (fn) {
    case MatFn::log: {
        if (!is_unitary(m, 1e-8)) throw NotNormal("log requires a unitary input");
        return normal_function(m, [](cplx z) {
            double a = std::arg(z);
            if (M_PI - std::abs(a) < 1e-8)
                throw BranchAmbiguity("eigenvalue within 1e-8 of the branch cut at -1");
            return cplx(0.0, a);
        });
    }
    case MatFn::exp: {
        if (is_hermitian(m, 1e-12)) {
            Eigen::SelfAdjointEigenSolver<Mat> es(m);
            Vec d = es.eigenvalues().array().exp().cast<cplx>();
            return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
        }
        return normal_function(m, [](cplx z) { return std::exp(z); });
    }
    case MatFn::sqrt: {
        if (!is_hermitian(m, 1e-10)) throw NotPSD("sqrt requires a Hermitian input");
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        Vec d(m.rows());
        for (int i = 0; i < m.rows(); ++i) {
            double l = es.eigenvalues()(i);
            if (l < -cutoff) throw NotPSD("negative eigenvalue " + std::to_string(l));
            d(i) = std::sqrt(std::max(l, 0.0));
        }
        return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    }
    case MatFn::pinv: {
        if (!is_hermitian(m, 1e-10)) throw NotNormal("pinv requires a Hermitian input");
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        Vec d(m.rows());
        for (int i = 0; i < m.rows(); ++i) {
            double l = es.eigenvalues()(i);
            d(i) = std::abs(l) < cutoff ? 0.0 : 1.0 / l;
        }
        return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    }
    }
    return m;
}

LabeledOperator matrix_function(const LabeledOperator &op, MatFn fn, double cutoff) {
    return {matrix_function(op.matrix, fn, cutoff), op.fact, op.support};
}

Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat kron_all(const std::vector<Mat> &ms) {
    Mat out = Mat::Identity(1, 1);
    for (const auto &m : ms) out = kron(out, m);
    return out;
}

double op_norm(const Mat &m) {
    if (m.size() == 0) return 0.0;
    Mat g = m.rows() >= m.cols() ? Mat(m.adjoint() * m) : Mat(m * m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double dev_norm(const Mat &m) {
    if (std::max(m.rows(), m.cols()) <= 256) return op_norm(m);
    return m.norm();
}

bool is_unitary(const Mat &m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m.adjoint() * m - Mat::Identity(m.rows(), m.cols())).norm() <= tol * std::sqrt(double(m.rows()));
}

long double trace_real(const Mat &m) {
    long double t = 0;
    for (int i = 0; i < m.rows(); ++i) t += m(i, i).real();
    return t;
}

}  // namespace hqg
