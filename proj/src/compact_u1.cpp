#include "hqg/compact_u1.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "hqg/errors.hpp"

namespace hqg {

const std::vector<double> kU1SampleAngles = {0.0, 0.7, std::numbers::pi / 3.0, 2.1, std::sqrt(2.0)};

double delta_sigma(int N, double theta) {
    double s = 1.0;
    for (int n = 1; n <= N; ++n) s += 2.0 * std::cos(n * theta);
    return s;
}

double peter_weyl_deviation(int N) {
    // trapezoid rule with M > 2N nodes integrates e^{i m phi}, |m| <= 2N, exactly
    const int M = 4 * N + 4;
    double dev = 0.0;
    for (int r = -N; r <= N; ++r)
        for (int rp = -N; rp <= N; ++rp) {
            cplx s = 0.0;
            for (int j = 0; j < M; ++j) {
                double phi = 2.0 * std::numbers::pi * j / M;
                s += std::exp(cplx(0.0, (r - rp) * phi));
            }
            s /= double(M);
            dev = std::max(dev, std::abs(s - (r == rp ? 1.0 : 0.0)));
        }
    return dev;
}

namespace {

// Gauss-law sum q_v + sum_out n - sum_in n at every V1 vertex.
bool gauss_ok(const LabeledGraph &g, const std::map<int, int> &q, const std::vector<int> &n) {
    for (int v : g.V1()) {
        int s = q.at(v);
        for (int e : g.out_edges(v)) s += n[e];
        for (int e : g.in_edges(v)) s -= n[e];
        if (s != 0) return false;
    }
    return true;
}

std::vector<std::vector<int>> admissible(const LabeledGraph &g, const std::map<int, int> &q, int N) {
    const int ne = static_cast<int>(g.edges().size());
    std::vector<std::vector<int>> closes(ne);
    for (int v : g.V1()) {
        int m = -1;
        for (int e : g.incident(v)) m = std::max(m, e);
        if (m >= 0) closes[m].push_back(v);
        else if (q.at(v) != 0) return {};
    }
    std::vector<std::vector<int>> out;
    std::vector<int> n(ne, 0);
    auto check = [&](int v) {
        int s = q.at(v);
        for (int e : g.out_edges(v)) s += n[e];
        for (int e : g.in_edges(v)) s -= n[e];
        return s == 0;
    };
    std::function<void(int)> rec = [&](int i) {
        if (i == ne) {
            out.push_back(n);
            return;
        }
        for (int x = -N; x <= N; ++x) {
            n[i] = x;
            bool ok = true;
            for (int v : closes[i]) ok = ok && check(v);
            if (ok) rec(i + 1);
        }
        n[i] = 0;
    };
    rec(0);
    return out;
}

std::map<int, int> charge_map(const TruncatedGauging &t, long long k) {
    std::map<int, int> q;
    for (std::size_t i = 0; i < t.vertices.size(); ++i) q[t.vertices[i]] = t.vertex_configs[k][i];
    return q;
}

long long edge_index(const std::vector<int> &n, int N) {
    long long idx = 0;
    for (int x : n) idx = idx * (2 * N + 1) + (x + N);
    return idx;
}

std::string signature(const TruncatedGauging &t, long long k) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.vertices.size(); ++i)
        s += (i ? ", " : "") + vertex_label(t.vertices[i]) + ":" + std::to_string(t.vertex_configs[k][i]);
    return s + "}";
}

// Total U_V charge minus the A_V0 charge of one support element.
int charge_imbalance(const LabeledGraph &g, const std::map<int, int> &q, const std::vector<int> &n) {
    int total = 0, ngc = 0;
    for (const auto &[v, c] : q) total += c;
    for (int u : g.V0()) {
        ngc += q.at(u);
        for (int e : g.out_edges(u)) ngc += n[e];
        for (int e : g.in_edges(u)) ngc -= n[e];
    }
    return total - ngc;
}

}  // namespace

Mat TruncatedGauging::p_matrix() const {
    Mat P = Mat::Zero(vertex_dim(), vertex_dim());
    for (long long k = 0; k < vertex_dim(); ++k) P(k, k) = p_sigma[k];
    return P;
}

Mat TruncatedGauging::dense(bool covariant, long long max_dim) const {
    const int ne = support.empty() || support[0].empty() ? 0 : static_cast<int>(support[0][0].size());
    long long edim = 1;
    for (int i = 0; i < ne; ++i) edim *= sigma.size();
    const long long rows = vertex_dim() * edim;
    if (rows > max_dim) throw CapExceeded("dense truncated map needs " + std::to_string(rows) + " rows");
    Mat G = Mat::Zero(rows, vertex_dim());
    for (long long k = 0; k < vertex_dim(); ++k) {
        const double a = covariant && p_sigma[k] > 0 ? 1.0 / std::sqrt(p_sigma[k]) : 1.0;
        for (const auto &n : support[k]) G(k * edim + edge_index(n, sigma.N), k) = a;
    }
    return G;
}

TruncatedGauging truncated_gauging(const U1SymmetricSystem &sys, int N) {
    if (N < 0) throw UnsupportedSpec("negative charge cutoff");
    const auto &g = sys.graph;
    if (g.V0().empty()) throw UnsupportedSpec("truncated gauging needs an NGC vertex");
    if (!connectivity(g, ConnectivityMode::full)) throw UnsupportedSpec("truncated gauging needs a connected graph");
    TruncatedGauging t;
    t.sigma.N = N;
    t.vertices = g.vertices();
    std::vector<std::vector<int>> configs{{}};
    for (int v : t.vertices) {
        auto it = sys.charges.find(v);
        if (it == sys.charges.end() || it->second.empty())
            throw UnsupportedSpec("no charges for " + vertex_label(v));
        std::vector<std::vector<int>> next;
        for (const auto &c : configs)
            for (int q : it->second) {
                auto d = c;
                d.push_back(q);
                next.push_back(d);
            }
        configs = next;
    }
    t.vertex_configs = configs;
    for (long long k = 0; k < t.vertex_dim(); ++k) {
        t.support.push_back(admissible(g, charge_map(t, k), N));
        t.p_sigma.push_back(static_cast<double>(t.support.back().size()));
    }
    return t;
}

CovariantIsometry covariant_isometry(const U1SymmetricSystem &sys, int N) {
    CovariantIsometry c;
    c.map = truncated_gauging(sys, N);
    const auto &t = c.map;
    const auto &g = sys.graph;
    for (long long k = 0; k < t.vertex_dim(); ++k)
        if (t.p_sigma[k] < 1e-10)
            throw NonPositiveP("P_Sigma vanishes on charges " + signature(t, k) + " at N = " + std::to_string(N));
    c.block_covariant = true;
    for (long long k = 0; k < t.vertex_dim(); ++k) {
        const auto q = charge_map(t, k);
        const double a = 1.0 / std::sqrt(t.p_sigma[k]);
        double norm2 = 0.0;
        for (const auto &n : t.support[k]) {
            norm2 += a * a;
            if (!gauss_ok(g, q, n)) throw DecompositionFailed("support element violates the Gauss law");
            if (charge_imbalance(g, q, n) != 0) c.block_covariant = false;
        }
        // distinct columns carry distinct vertex charges, so they are orthogonal
        c.isometry_deviation = std::max(c.isometry_deviation, std::abs(norm2 - 1.0));
        int total = 0;
        for (const auto &[v, x] : q) total += x;
        for (double th : kU1SampleAngles) {
            double r2 = 0.0;
            for (const auto &n : t.support[k]) {
                int ngc = total - charge_imbalance(g, q, n);
                r2 += std::norm(std::exp(cplx(0.0, total * th)) - std::exp(cplx(0.0, ngc * th))) * a * a;
                for (double th2 : kU1SampleAngles) {
                    cplx prod = std::exp(cplx(0.0, ngc * th)) * std::exp(cplx(0.0, ngc * th2));
                    c.representation_deviation =
                        std::max(c.representation_deviation, std::abs(prod - std::exp(cplx(0.0, ngc * (th + th2)))));
                }
            }
            c.covariance_deviation = std::max(c.covariance_deviation, std::sqrt(r2));
        }
    }
    // P_Sigma and U_V(theta) are both diagonal in the charge basis; check the product anyway
    Mat P = t.p_matrix();
    for (double th : kU1SampleAngles) {
        Mat U = Mat::Zero(t.vertex_dim(), t.vertex_dim());
        for (long long k = 0; k < t.vertex_dim(); ++k) {
            int total = 0;
            for (int x : t.vertex_configs[k]) total += x;
            U(k, k) = std::exp(cplx(0.0, total * th));
        }
        c.commutator_deviation = std::max(c.commutator_deviation, op_norm(P * U - U * P));
    }
    return c;
}

Stabilization p_sigma_stabilization(const U1SymmetricSystem &sys, int n_max) {
    Stabilization s;
    for (int N = 0; N <= n_max; ++N) s.spectra.push_back(truncated_gauging(sys, N).p_sigma);
    for (int N = 1; N <= n_max; ++N)
        for (std::size_t k = 0; k < s.spectra[N].size(); ++k)
            if (s.spectra[N][k] < s.spectra[N - 1][k]) s.monotone = false;
    int th = n_max;
    while (th > 0 && s.spectra[th - 1] == s.spectra[n_max]) --th;
    bool nonzero = std::all_of(s.spectra[n_max].begin(), s.spectra[n_max].end(), [](double x) { return x > 0; });
    s.threshold = th < n_max && nonzero ? th : -1;
    return s;
}

double truncated_dressing_residual(const U1SymmetricSystem &sys, int N, int v, int q_from, int q_to,
                                   const std::vector<int> &path_vertices) {
    const auto &g = sys.graph;
    if (path_vertices.empty() || path_vertices.front() != v || g.alpha(path_vertices.back()) != 0)
        throw InvalidPath("dressing path must run from the vertex to an NGC vertex");
    GraphPath p = make_path(g, path_vertices);
    auto c = covariant_isometry(sys, N);
    const auto &t = c.map;
    const int vi = static_cast<int>(std::find(t.vertices.begin(), t.vertices.end(), v) - t.vertices.begin());
    const int delta = q_to - q_from;
    double worst = 0.0;
    for (long long k = 0; k < t.vertex_dim(); ++k) {
        if (t.vertex_configs[k][vi] != q_from) continue;
        auto target = t.vertex_configs[k];
        target[vi] = q_to;
        auto it = std::find(t.vertex_configs.begin(), t.vertex_configs.end(), target);
        if (it == t.vertex_configs.end()) throw UnsupportedSpec("target charge is not in the vertex space");
        const long long kt = it - t.vertex_configs.begin();
        std::map<std::vector<int>, double> lhs, rhs;
        for (const auto &n : t.support[k]) {
            auto m = n;
            bool inside = true;
            for (std::size_t i = 0; i < p.edges.size(); ++i) {
                m[p.edges[i]] += p.forward[i] ? -delta : delta;
                inside = inside && std::abs(m[p.edges[i]]) <= N;
            }
            if (inside) lhs[m] += 1.0 / std::sqrt(t.p_sigma[k]);
        }
        for (const auto &n : t.support[kt]) rhs[n] += 1.0 / std::sqrt(t.p_sigma[kt]);
        double r2 = 0.0;
        for (const auto &[n, a] : lhs) {
            auto f = rhs.find(n);
            double b = f == rhs.end() ? 0.0 : f->second;
            r2 += (a - b) * (a - b);
        }
        for (const auto &[n, b] : rhs)
            if (!lhs.count(n)) r2 += b * b;
        worst = std::max(worst, std::sqrt(r2));
    }
    return worst;
}

std::vector<U1SymmetricSystem> u1_instances() {
    std::vector<U1SymmetricSystem> out;
    U1SymmetricSystem a{"u1-line2", line_graph({1, 0}), {{0, {1}}, {1, {-1}}}};
    out.push_back(a);
    U1SymmetricSystem b{"u1-line3", line_graph({1, 1, 0}), {{0, {-1, 0, 1}}, {1, {-1, 0, 1}}, {2, {0, 1}}}};
    out.push_back(b);
    LabeledGraph s;
    s.add_vertex(0, 1);
    s.add_vertex(1, 1);
    s.add_vertex(2, 1);
    s.add_vertex(3, 0);
    s.add_edge(0, 1);
    s.add_edge(0, 2);
    s.add_edge(3, 0);
    s.canonicalize();
    U1SymmetricSystem c{"u1-star", s, {{0, {-1, 0, 1}}, {1, {0, 1}}, {2, {0, 1}}, {3, {0, 2}}}};
    out.push_back(c);
    return out;
}

U1SymmetricSystem u1_open_line() {
    return {"u1-open-line", line_graph({0, 1, 0}), {{0, {0}}, {1, {0, 1}}, {2, {0}}}};
}

}  // namespace hqg
