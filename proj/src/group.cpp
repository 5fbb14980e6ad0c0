#include "hqg/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

namespace hqg {

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order(); ++a)
        for (int b = 0; b < order(); ++b)
            if (mul[a][b] != mul[b][a]) return false;
    return true;
}

namespace {

void fill_inverses(FiniteGroup &G) {
    G.inv.assign(G.order(), -1);
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b)
            if (G.mul[a][b] == 0) G.inv[a] = b;
}

}  // namespace

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw UnsupportedSpec("cyclic order must be >= 1");
    FiniteGroup G;
    G.name = n == 1 ? "trivial" : "Z" + std::to_string(n);
    G.kind = "cyclic";
    G.n = n;
    G.mul.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G.mul[a][b] = (a + b) % n;
    fill_inverses(G);
    return G;
}

FiniteGroup trivial_group() { return cyclic_group(1); }

FiniteGroup dihedral_group(int n) {
    if (n < 1) throw UnsupportedSpec("dihedral parameter must be >= 1");
    FiniteGroup G;
    G.name = "D" + std::to_string(n);
    G.kind = "dihedral";
    G.n = n;
    const int N = 2 * n;
    G.mul.assign(N, std::vector<int>(N));
    // index k + n f  <->  r^k s^f
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            int a = x % n, f = x / n, b = y % n, g = y / n;
            int k = ((a + (f ? -b : b)) % n + n) % n;
            G.mul[x][y] = k + n * ((f + g) % 2);
        }
    fill_inverses(G);
    return G;
}

FiniteGroup symmetric3() {
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    FiniteGroup G;
    G.name = "S3";
    G.kind = "s3";
    G.n = 3;
    G.mul.assign(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            G.mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    fill_inverses(G);
    return G;
}

FiniteGroup product_group(const FiniteGroup &A, const FiniteGroup &B) {
    FiniteGroup G;
    G.name = A.name + "x" + B.name;
    G.kind = "product";
    G.factors = {A, B};
    const int na = A.order(), N = A.order() * B.order();
    G.mul.assign(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            G.mul[x][y] = A.mul[x % na][y % na] + na * B.mul[x / na][y / na];
    fill_inverses(G);
    return G;
}

FiniteGroup make_group(const std::string &spec) {
    if (spec.empty()) throw UnsupportedSpec("empty group spec");
    auto x = spec.find('x');
    if (x != std::string::npos) {
        auto rest = spec.substr(x + 1);
        return product_group(make_group(spec.substr(0, x)), make_group(rest));
    }
    if (spec == "trivial" || spec == "1") return trivial_group();
    if (spec == "S3") return symmetric3();
    auto parse_n = [&](const std::string &s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
            throw UnsupportedSpec("cannot parse group spec '" + spec + "'");
        return std::stoi(s);
    };
    if (spec[0] == 'Z' || spec[0] == 'C') return cyclic_group(parse_n(spec.substr(1)));
    if (spec[0] == 'D') return dihedral_group(parse_n(spec.substr(1)));
    throw UnsupportedSpec("cannot parse group spec '" + spec + "'");
}

bool verify_axioms(const FiniteGroup &G) {
    const int N = G.order();
    if (N < 1 || static_cast<int>(G.inv.size()) != N) return false;
    for (int a = 0; a < N; ++a) {
        if (static_cast<int>(G.mul[a].size()) != N) return false;
        for (int b = 0; b < N; ++b)
            if (G.mul[a][b] < 0 || G.mul[a][b] >= N) return false;
    }
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                if (G.mul[G.mul[a][b]][c] != G.mul[a][G.mul[b][c]]) return false;
    for (int a = 0; a < N; ++a) {
        if (G.mul[0][a] != a || G.mul[a][0] != a) return false;
        if (G.inv[a] < 0 || G.mul[a][G.inv[a]] != 0 || G.mul[G.inv[a]][a] != 0) return false;
    }
    return true;
}

Mat regular_action(const FiniteGroup &G, Side side, int g) {
    const int N = G.order();
    if (g < 0 || g >= N) throw UnsupportedSpec("group element index out of range");
    Mat U = Mat::Zero(N, N);
    for (int h = 0; h < N; ++h) {
        int out = side == Side::left ? G.mul[g][h] : G.mul[h][G.inv[g]];
        U(out, h) = 1.0;
    }
    return U;
}

LabeledOperator regular_action(const FiniteGroup &G, Side side, int g, const std::string &label) {
    return local_operator(regular_action(G, side, g), Factorization({{label, G.order()}}));
}

Mat haar_average(const FiniteGroup &G, const std::function<Mat(int)> &f) {
    Mat acc = f(0);
    for (int g = 1; g < G.order(); ++g) {
        Mat m = f(g);
        if (m.rows() != acc.rows() || m.cols() != acc.cols())
            throw FactorizationMismatch("haar_average terms differ in shape");
        acc += m;
    }
    return acc / static_cast<double>(G.order());
}

namespace {

cplx root_of_unity(long long k, long long n) {
    double a = 2.0 * M_PI * static_cast<double>(((k % n) + n) % n) / static_cast<double>(n);
    return {std::cos(a), std::sin(a)};
}

Irrep one_dim(const std::string &name, const std::vector<cplx> &vals) {
    Irrep r;
    r.name = name;
    r.dim = 1;
    for (auto v : vals) r.mats.push_back(Mat::Constant(1, 1, v));
    return r;
}

}  // namespace

std::vector<Irrep> closed_form_irreps(const FiniteGroup &G) {
    std::vector<Irrep> out;
    const int N = G.order();
    if (G.kind == "cyclic") {
        for (int k = 0; k < G.n; ++k) {
            std::vector<cplx> v;
            for (int a = 0; a < N; ++a) v.push_back(root_of_unity(static_cast<long long>(k) * a, G.n));
            out.push_back(one_dim("chi" + std::to_string(k), v));
        }
    } else if (G.kind == "dihedral") {
        const int n = G.n;
        std::vector<cplx> triv, sgn, alt, altsgn;
        for (int x = 0; x < N; ++x) {
            int a = x % n, f = x / n;
            triv.push_back(1.0);
            sgn.push_back(f ? -1.0 : 1.0);
            alt.push_back(a % 2 ? -1.0 : 1.0);
            altsgn.push_back((a + f) % 2 ? -1.0 : 1.0);
        }
        out.push_back(one_dim("trivial", triv));
        out.push_back(one_dim("sign", sgn));
        if (n % 2 == 0) {
            out.push_back(one_dim("alt", alt));
            out.push_back(one_dim("altsign", altsgn));
        }
        for (int k = 1; 2 * k < n; ++k) {
            Irrep r;
            r.name = "rho" + std::to_string(k);
            r.dim = 2;
            Mat s(2, 2);
            s << 0, 1, 1, 0;
            for (int x = 0; x < N; ++x) {
                int a = x % n, f = x / n;
                Mat m = Mat::Zero(2, 2);
                m(0, 0) = root_of_unity(static_cast<long long>(k) * a, n);
                m(1, 1) = root_of_unity(-static_cast<long long>(k) * a, n);
                if (f) m = m * s;
                r.mats.push_back(m);
            }
            out.push_back(r);
        }
    } else if (G.kind == "s3") {
        std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        std::vector<cplx> triv, sgn;
        Irrep std2;
        std2.name = "standard";
        std2.dim = 2;
        Eigen::MatrixXd B(3, 2);
        B << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0,
            -2 / std::sqrt(6.0);
        for (const auto &p : perms) {
            int inversions = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (p[i] > p[j]) ++inversions;
            triv.push_back(1.0);
            sgn.push_back(inversions % 2 ? -1.0 : 1.0);
            Eigen::MatrixXd P = Eigen::MatrixXd::Zero(3, 3);
            for (int i = 0; i < 3; ++i) P(p[i], i) = 1.0;
            std2.mats.push_back((B.transpose() * P * B).cast<cplx>());
        }
        out.push_back(one_dim("trivial", triv));
        out.push_back(one_dim("sign", sgn));
        out.push_back(std2);
    } else if (G.kind == "product") {
        auto ia = closed_form_irreps(G.factors[0]);
        auto ib = closed_form_irreps(G.factors[1]);
        const int na = G.factors[0].order();
        for (const auto &b : ib)
            for (const auto &a : ia) {
                Irrep r;
                r.name = a.name + "*" + b.name;
                r.dim = a.dim * b.dim;
                for (int x = 0; x < N; ++x) r.mats.push_back(kron(a.mats[x % na], b.mats[x / na]));
                out.push_back(r);
            }
    } else {
        return generic_irreps(G);
    }
    return out;
}

std::vector<Irrep> generic_irreps(const FiniteGroup &G, unsigned seed) {
    const int N = G.order();
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> c(N, 0.0);
    for (int g = 0; g < N; ++g) {
        int gi = G.inv[g];
        if (gi < g) continue;
        if (gi == g) c[g] = nd(rng);
        else {
            c[g] = cplx(nd(rng), nd(rng));
            c[gi] = std::conj(c[g]);
        }
    }
    Mat H = Mat::Zero(N, N);
    for (int g = 0; g < N; ++g) H += c[g] * regular_action(G, Side::right, g);
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const auto &ev = es.eigenvalues();
    std::vector<Irrep> out;
    std::vector<Vec> chars;
    int i = 0;
    while (i < N) {
        int j = i + 1;
        while (j < N && std::abs(ev(j) - ev(i)) < 1e-8) ++j;
        Mat Q = es.eigenvectors().middleCols(i, j - i);
        Irrep r;
        r.dim = j - i;
        Vec ch(N);
        for (int g = 0; g < N; ++g) {
            r.mats.push_back(Q.adjoint() * regular_action(G, Side::left, g) * Q);
            ch(g) = r.mats.back().trace();
        }
        bool seen = false;
        for (const auto &o : chars)
            if ((o - ch).norm() < 1e-8) seen = true;
        if (!seen) {
            r.name = "irrep" + std::to_string(out.size());
            chars.push_back(ch);
            out.push_back(r);
        }
        i = j;
    }
    int total = 0;
    for (const auto &r : out) total += r.dim * r.dim;
    if (total != N) throw DecompositionFailed("sum of squared irrep dimensions != |G| for " + G.name);
    for (const auto &r : out)
        if (homomorphism_deviation(G, r.mats) > 1e-8)
            throw DecompositionFailed("extracted block is not a representation for " + G.name);
    return out;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup &G) {
    std::vector<int> cls(G.order(), -1);
    std::vector<std::vector<int>> out;
    for (int a = 0; a < G.order(); ++a) {
        if (cls[a] >= 0) continue;
        std::vector<int> c;
        for (int g = 0; g < G.order(); ++g) {
            int b = G.mul[G.mul[g][a]][G.inv[g]];
            if (cls[b] < 0) {
                cls[b] = static_cast<int>(out.size());
                c.push_back(b);
            }
        }
        std::sort(c.begin(), c.end());
        out.push_back(c);
    }
    return out;
}

std::vector<int> group_center(const FiniteGroup &G) {
    std::vector<int> z;
    for (int a = 0; a < G.order(); ++a) {
        bool central = true;
        for (int b = 0; b < G.order() && central; ++b) central = G.mul[a][b] == G.mul[b][a];
        if (central) z.push_back(a);
    }
    return z;
}

Irrep direct_sum(const std::vector<Irrep> &irreps, const std::string &name) {
    Irrep s;
    s.name = name;
    s.dim = 0;
    for (const auto &r : irreps) s.dim += r.dim;
    const std::size_t N = irreps.empty() ? 0 : irreps[0].mats.size();
    for (std::size_t g = 0; g < N; ++g) {
        Mat m = Mat::Zero(s.dim, s.dim);
        int off = 0;
        for (const auto &r : irreps) {
            m.block(off, off, r.dim, r.dim) = r.mats[g];
            off += r.dim;
        }
        s.mats.push_back(m);
    }
    return s;
}

RepresentationData representations(const FiniteGroup &G) {
    RepresentationData d;
    d.irreps = closed_form_irreps(G);
    d.classes = conjugacy_classes(G);
    d.center = group_center(G);
    d.faithful = direct_sum(d.irreps, "faithful");
    if (!is_faithful(G, d.faithful)) throw DecompositionFailed("direct sum of irreps not faithful");
    return d;
}

double homomorphism_deviation(const FiniteGroup &G, const std::vector<Mat> &rep) {
    double dev = 0.0;
    for (int a = 0; a < G.order(); ++a) {
        dev = std::max(dev, (rep[a].adjoint() * rep[a] -
                             Mat::Identity(rep[a].rows(), rep[a].cols())).norm());
        for (int b = 0; b < G.order(); ++b)
            dev = std::max(dev, (rep[a] * rep[b] - rep[G.mul[a][b]]).norm());
    }
    return dev;
}

double grand_orthogonality_deviation(const FiniteGroup &G, const std::vector<Irrep> &irreps) {
    double dev = 0.0;
    const double N = G.order();
    for (std::size_t r = 0; r < irreps.size(); ++r)
        for (std::size_t s = 0; s < irreps.size(); ++s) {
            const auto &A = irreps[r];
            const auto &B = irreps[s];
            for (int i = 0; i < A.dim; ++i)
                for (int j = 0; j < A.dim; ++j)
                    for (int k = 0; k < B.dim; ++k)
                        for (int l = 0; l < B.dim; ++l) {
                            cplx acc = 0.0;
                            for (int g = 0; g < G.order(); ++g)
                                acc += std::conj(A.mats[g](i, j)) * B.mats[g](k, l);
                            acc *= static_cast<double>(A.dim) / N;
                            double expect = (r == s && i == k && j == l) ? 1.0 : 0.0;
                            dev = std::max(dev, std::abs(acc - expect));
                        }
        }
    return dev;
}

bool is_faithful(const FiniteGroup &G, const Irrep &rep, double tol) {
    const cplx tI = rep.mats[0].trace();
    for (int g = 1; g < G.order(); ++g)
        if (std::abs(rep.mats[g].trace() - tI) < tol) return false;
    return true;
}

bool same_characters(const FiniteGroup &G, const std::vector<Irrep> &a, const std::vector<Irrep> &b,
                     double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto &r : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j) {
            if (used[j] || b[j].dim != r.dim) continue;
            double d = 0.0;
            for (int g = 0; g < G.order(); ++g) d = std::max(d, std::abs(r.character(g) - b[j].character(g)));
            if (d < tol) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::vector<Mat> generalized_pauli_basis(int d) {
    Mat X = Mat::Zero(d, d), Z = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        X((i + 1) % d, i) = 1.0;
        Z(i, i) = root_of_unity(i, d);
    }
    std::vector<Mat> out;
    Mat Xa = Mat::Identity(d, d);
    for (int a = 0; a < d; ++a) {
        Mat Zb = Mat::Identity(d, d);
        for (int b = 0; b < d; ++b) {
            out.push_back(Xa * Zb);
            Zb = Zb * Z;
        }
        Xa = Xa * X;
    }
    return out;
}

}  // namespace hqg
