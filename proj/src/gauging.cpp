#include "hqg/gauging.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hqg {

int SymmetricSystem::dim(int v) const {
    auto it = rep.find(v);
    if (it == rep.end() || it->second.empty()) return 1;
    return static_cast<int>(it->second[0].rows());
}

std::vector<Mat> trivial_rep(const FiniteGroup &G) {
    return std::vector<Mat>(G.order(), Mat::Identity(1, 1));
}

std::vector<Mat> regular_rep(const FiniteGroup &G) {
    std::vector<Mat> out;
    for (int g = 0; g < G.order(); ++g) out.push_back(regular_action(G, Side::left, g));
    return out;
}

SymmetricSystem make_symmetric_system(const LabeledGraph &graph, const FiniteGroup &G,
                                      const std::vector<Mat> &v1_rep, const std::vector<Mat> &v0_rep) {
    SymmetricSystem s{graph, G, {}};
    for (int v : graph.vertices()) {
        if (graph.alpha(v) == 1) s.rep[v] = v1_rep;
        else s.rep[v] = v0_rep.empty() ? trivial_rep(G) : v0_rep;
        if (static_cast<int>(s.rep[v].size()) != G.order())
            throw UnsupportedSpec("representation has the wrong number of matrices");
    }
    return s;
}

GaugeStructure::GaugeStructure(SymmetricSystem sys) : sys_(std::move(sys)) {
    reps_ = representations(sys_.group);
    std::vector<Subsystem> vs, all;
    for (int v : sys_.graph.vertices()) vs.push_back({vertex_label(v), sys_.dim(v)});
    all = vs;
    for (const auto &e : sys_.graph.edges()) {
        all.push_back({e.label(), sys_.group.order()});
        edim_ *= sys_.group.order();
    }
    vfact_ = Factorization(vs);
    ffact_ = Factorization(all);
    check_cap(ffact_.total_dim(), "gauged Hilbert space");
    PathBounds b;
    b.max_length = static_cast<int>(sys_.graph.vertices().size()) + 1;
    loops_ = enumerate_paths_and_cycles(sys_.graph, PathKind::cycle_in_v1, b);
    lines_ = enumerate_paths_and_cycles(sys_.graph, PathKind::ngc_to_ngc, b);
}

std::vector<int> GaugeStructure::edge_config(long long index) const {
    const int n = sys_.group.order();
    std::vector<int> cfg(num_edges());
    for (int e = num_edges() - 1; e >= 0; --e) {
        cfg[e] = static_cast<int>(index % n);
        index /= n;
    }
    return cfg;
}

long long GaugeStructure::config_index(const std::vector<int> &cfg) const {
    long long idx = 0;
    for (int g : cfg) idx = idx * sys_.group.order() + g;
    return idx;
}

void GaugeStructure::apply_gauge(int v, int g, Mat &M) const {
    const auto dims = ffact_.dims();
    const Mat &u = sys_.rep.at(v)[g];
    if (!u.isIdentity(1e-14)) apply_local(u, dims, {ffact_.index_of(vertex_label(v))}, M);
    const auto &edges = sys_.graph.edges();
    for (int e : sys_.graph.incident(v)) {
        int pos = ffact_.index_of(edges[e].label());
        Side side = edges[e].tail == v ? Side::right : Side::left;
        apply_local(regular_action(sys_.group, side, g), dims, {pos}, M);
    }
}

void GaugeStructure::apply_gauge_set(const std::vector<int> &W, int g, Mat &M) const {
    for (int v : W) apply_gauge(v, g, M);
}

Mat GaugeStructure::gauge_transformation(int v, int g) const {
    check_cap(full_dim(), "dense gauge transformation");
    Mat M = Mat::Identity(full_dim(), full_dim());
    apply_gauge(v, g, M);
    return M;
}

LabeledOperator GaugeStructure::gauge_transformation_local(int v, int g) const {
    std::vector<Subsystem> subs{{vertex_label(v), sys_.dim(v)}};
    std::vector<Mat> parts{sys_.rep.at(v)[g]};
    const auto &edges = sys_.graph.edges();
    for (int e : sys_.graph.incident(v)) {
        subs.push_back({edges[e].label(), sys_.group.order()});
        parts.push_back(regular_action(sys_.group, edges[e].tail == v ? Side::right : Side::left, g));
    }
    return local_operator(kron_all(parts), Factorization(subs));
}

void GaugeStructure::apply_projector(int v, Mat &M) const {
    Mat acc = Mat::Zero(M.rows(), M.cols());
    for (int g = 0; g < sys_.group.order(); ++g) {
        Mat t = M;
        apply_gauge(v, g, t);
        acc += t;
    }
    M = acc / static_cast<double>(sys_.group.order());
}

void GaugeStructure::apply_pi_gi(Mat &M) const {
    for (int v : sys_.graph.V1()) apply_projector(v, M);
}

Mat GaugeStructure::pi_v(int v) const {
    check_cap(full_dim(), "dense projector");
    Mat M = Mat::Identity(full_dim(), full_dim());
    apply_projector(v, M);
    return M;
}

const Mat &GaugeStructure::pi_gi() const {
    std::call_once(pi_once_, [&] {
        check_cap(full_dim(), "dense projector");
        auto M = std::make_shared<Mat>(Mat::Identity(full_dim(), full_dim()));
        apply_pi_gi(*M);
        pi_gi_ = M;
    });
    return *pi_gi_;
}

Mat GaugeStructure::global_symmetry(int g) const {
    std::vector<Mat> parts;
    for (int v : sys_.graph.vertices()) parts.push_back(sys_.rep.at(v)[g]);
    return kron_all(parts);
}

Mat GaugeStructure::ngc_symmetry(int g, const std::vector<int> &W) const {
    for (int v : W)
        if (sys_.graph.alpha(v) != 0) throw UnsupportedSpec(vertex_label(v) + " is not in V0");
    Mat M = Mat::Identity(full_dim(), full_dim());
    apply_gauge_set(W, g, M);
    return M;
}

double GaugeStructure::kappa2() const {
    return std::pow(static_cast<double>(sys_.group.order()), -static_cast<double>(sys_.graph.V1().size()));
}

Mat GaugeStructure::twisted_gauging_map(const FluxAssignment &phi, bool normalize) const {
    if (static_cast<int>(phi.size()) != num_edges()) throw UnsupportedSpec("flux assignment size mismatch");
    const long long dv = vertex_dim();
    const long long eidx = config_index(phi);
    Mat M = Mat::Zero(full_dim(), dv);
    for (long long k = 0; k < dv; ++k) M(k * edim_ + eidx, k) = 1.0;
    apply_pi_gi(M);
    if (normalize) M /= std::sqrt(kappa2());
    return M;
}

Mat GaugeStructure::gauging_map(bool normalize) const {
    return twisted_gauging_map(FluxAssignment(num_edges(), 0), normalize);
}

Mat GaugeStructure::ngc_flux_map(const std::map<int, int> &h) const {
    Mat M = gauging_map(true);
    for (const auto &[v, g] : h) {
        if (sys_.graph.alpha(v) != 0) throw UnsupportedSpec(vertex_label(v) + " is not in V0");
        apply_gauge(v, g, M);
    }
    return M;
}

FluxAssignment GaugeStructure::conjugate_flux(const FluxAssignment &phi, int h) const {
    FluxAssignment out(phi.size());
    const auto &G = sys_.group;
    for (std::size_t e = 0; e < phi.size(); ++e) out[e] = G.op(G.op(G.inverse(h), phi[e]), h);
    return out;
}

Mat GaugeStructure::holonomy(const GraphPath &p, const Irrep &r, const std::vector<int> &cfg) const {
    Mat W = Mat::Identity(r.dim, r.dim);
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        int g = cfg[p.edges[i]];
        W = W * (p.forward[i] ? r.mats[sys_.group.inverse(g)] : r.mats[g]);
    }
    return W;
}

int GaugeStructure::holonomy_element(const GraphPath &p, const std::vector<int> &cfg) const {
    const auto &G = sys_.group;
    int h = 0;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        int g = cfg[p.edges[i]];
        h = G.op(h, p.forward[i] ? G.inverse(g) : g);
    }
    return h;
}

Vec GaugeStructure::wilson_link(int e, const Irrep &r, int i, int j, bool reversed) const {
    Vec d(edim_);
    for (long long x = 0; x < edim_; ++x) {
        int g = edge_config(x)[e];
        d(x) = r.mats[reversed ? sys_.group.inverse(g) : g](i, j);
    }
    return d;
}

Vec GaugeStructure::wilson_path(const GraphPath &p, const Irrep &r, int i, int j) const {
    Vec d(edim_);
    for (long long x = 0; x < edim_; ++x) d(x) = holonomy(p, r, edge_config(x))(i, j);
    return d;
}

Vec GaugeStructure::wilson_loop(const GraphPath &p, const Irrep &r) const {
    if (!p.closed) throw InvalidPath("Wilson loop needs a closed path");
    Vec d(edim_);
    for (long long x = 0; x < edim_; ++x) d(x) = holonomy(p, r, edge_config(x)).trace();
    return d;
}

Vec GaugeStructure::wilson_line(const GraphPath &p, const Irrep &r, int i, int j) const {
    const auto &g = sys_.graph;
    if (p.closed || g.alpha(p.vertices.front()) != 0 || g.alpha(p.vertices.back()) != 0)
        throw InvalidPath("Wilson line must join two V0 vertices");
    return wilson_path(p, r, i, j);
}

Vec GaugeStructure::on_full(const Vec &edge_diag) const {
    Vec d(full_dim());
    for (long long k = 0; k < vertex_dim(); ++k) d.segment(k * edim_, edim_) = edge_diag;
    return d;
}

std::vector<char> GaugeStructure::flux_free_mask() const {
    const Irrep &r = reps_.faithful;
    std::vector<char> mask(edim_, 1);
    const Mat one = Mat::Identity(r.dim, r.dim);
    for (long long x = 0; x < edim_; ++x) {
        auto cfg = edge_config(x);
        for (const auto &l : loops_)
            if (std::abs(holonomy(l, r, cfg).trace() - static_cast<double>(r.dim)) > 1e-9) mask[x] = 0;
        for (const auto &l : lines_)
            if ((holonomy(l, r, cfg) - one).norm() > 1e-9) mask[x] = 0;
    }
    return mask;
}

Mat GaugeStructure::flux_free_projector() const {
    auto mask = flux_free_mask();
    Vec d(edim_);
    for (long long x = 0; x < edim_; ++x) d(x) = mask[x] ? 1.0 : 0.0;
    return on_full(d).asDiagonal() * pi_gi();
}

std::vector<FluxSector> GaugeStructure::flux_sector_decomposition(unsigned seed) const {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    // one weight per (irrep, operator, entry, re/im)
    std::vector<double> value(edim_, 0.0);
    for (const auto &r : reps_.irreps) {
        std::vector<double> wl, wn;
        for (std::size_t k = 0; k < loops_.size() * 2; ++k) wl.push_back(nd(rng));
        for (std::size_t k = 0; k < lines_.size() * r.dim * r.dim * 2; ++k) wn.push_back(nd(rng));
        for (long long x = 0; x < edim_; ++x) {
            auto cfg = edge_config(x);
            double acc = 0.0;
            for (std::size_t l = 0; l < loops_.size(); ++l) {
                cplx t = holonomy(loops_[l], r, cfg).trace();
                acc += wl[2 * l] * t.real() + wl[2 * l + 1] * t.imag();
            }
            std::size_t w = 0;
            for (const auto &l : lines_) {
                Mat h = holonomy(l, r, cfg);
                for (int i = 0; i < r.dim; ++i)
                    for (int j = 0; j < r.dim; ++j) {
                        acc += wn[w] * h(i, j).real() + wn[w + 1] * h(i, j).imag();
                        w += 2;
                    }
            }
            value[x] += acc;
        }
    }
    std::vector<long long> order(edim_);
    for (long long x = 0; x < edim_; ++x) order[x] = x;
    std::sort(order.begin(), order.end(), [&](long long a, long long b) { return value[a] < value[b]; });
    std::vector<FluxSector> sectors;
    const Mat &P = pi_gi();
    for (long long i = 0; i < edim_; ++i) {
        long long x = order[i];
        if (sectors.empty() || value[x] - sectors.back().value > 1e-8) {
            FluxSector s;
            s.mask.assign(edim_, 0);
            s.value = value[x];
            sectors.push_back(std::move(s));
        }
        sectors.back().mask[x] = 1;
    }
    for (auto &s : sectors) {
        double tr = 0.0;
        for (long long k = 0; k < vertex_dim(); ++k)
            for (long long x = 0; x < edim_; ++x)
                if (s.mask[x]) tr += P(k * edim_ + x, k * edim_ + x).real();
        s.rank = std::llround(tr);
    }
    return sectors;
}

Mat GaugeStructure::sector_projector(const FluxSector &s) const {
    Vec d(edim_);
    for (long long x = 0; x < edim_; ++x) d(x) = s.mask[x] ? 1.0 : 0.0;
    return on_full(d).asDiagonal() * pi_gi();
}

Mat GaugeStructure::central_flux_operator(int e, int g) const {
    const auto &c = reps_.center;
    if (std::find(c.begin(), c.end(), g) == c.end())
        throw NotCentral("element " + std::to_string(g) + " is not in the center");
    Mat M = Mat::Identity(full_dim(), full_dim());
    apply_local(regular_action(sys_.group, Side::left, g), ffact_, {sys_.graph.edges()[e].label()}, M);
    return M;
}

LabeledOperator GaugeStructure::dressed_operator(const Mat &O_u, const GraphPath &gamma) const {
    const auto &g = sys_.graph;
    if (gamma.closed || gamma.vertices.size() < 2) throw InvalidPath("dressing needs an open path");
    int u = gamma.vertices.front();
    if (g.alpha(u) != 1 || g.alpha(gamma.vertices.back()) != 0)
        throw InvalidPath("dressing path must run from V1 to V0");
    for (std::size_t i = 1; i + 1 < gamma.vertices.size(); ++i)
        if (g.alpha(gamma.vertices[i]) != 1) throw InvalidPath("path interior leaves V1");
    if (O_u.rows() != sys_.dim(u)) throw LabelMismatch("operator dimension does not match the start vertex");

    std::vector<int> vg(gamma.vertices.begin(), gamma.vertices.end() - 1);
    std::vector<Subsystem> subs;
    for (int v : vg) subs.push_back({vertex_label(v), sys_.dim(v)});
    for (int e : gamma.edges) subs.push_back({g.edges()[e].label(), sys_.group.order()});
    Factorization f(subs);
    const auto dims = f.dims();
    const int nv = static_cast<int>(vg.size());
    const int G = sys_.group.order();

    std::vector<Mat> parts;
    for (int v : vg) parts.push_back(v == u ? O_u : Mat::Identity(sys_.dim(v), sys_.dim(v)));
    for (std::size_t i = 0; i < gamma.edges.size(); ++i) {
        Mat p = Mat::Zero(G, G);
        p(0, 0) = 1.0;
        parts.push_back(p);
    }
    Mat X = kron_all(parts);

    for (int i = 0; i < nv; ++i) {
        int v = vg[i];
        Mat acc = Mat::Zero(X.rows(), X.cols());
        for (int h = 0; h < G; ++h) {
            Mat Y = X;
            auto act = [&](const Mat &m, int pos) {
                apply_local(m, dims, {pos}, Y);
                apply_local_adjoint_right(m, dims, {pos}, Y);
            };
            act(sys_.rep.at(v)[h], i);
            for (std::size_t k = 0; k < gamma.edges.size(); ++k) {
                const Edge &ed = g.edges()[gamma.edges[k]];
                if (ed.tail == v) act(regular_action(sys_.group, Side::right, h), nv + static_cast<int>(k));
                else if (ed.head == v) act(regular_action(sys_.group, Side::left, h), nv + static_cast<int>(k));
            }
            acc += Y;
        }
        X = acc;
    }
    return local_operator(X, f);
}

Mat GaugeStructure::apply_labeled(const LabeledOperator &op, const Mat &M) const {
    Mat out = M;
    apply_local(op.matrix, ffact_, op.fact.labels(), out);
    return out;
}

bool GaugeStructure::undress_hypothesis(const std::set<int> &gamma_vertices, const std::set<int> &gamma_edges) const {
    const auto &g = sys_.graph;
    for (int v : g.V1()) {
        if (gamma_vertices.count(v)) continue;
        std::set<int> seen{v};
        std::vector<int> stack{v};
        bool ok = false;
        while (!stack.empty() && !ok) {
            int x = stack.back();
            stack.pop_back();
            for (int e : g.incident(x)) {
                if (gamma_edges.count(e)) continue;
                int w = g.other_end(e, x);
                if (gamma_vertices.count(w)) continue;
                if (g.alpha(w) == 0) {
                    ok = true;
                    break;
                }
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        if (!ok) return false;
    }
    return true;
}

Mat GaugeStructure::undress_operator(const LabeledOperator &O_gamma, const std::set<int> &gamma_vertices,
                                     const Mat &Gmap, double *support_dev) const {
    Mat O = Gmap.adjoint() * apply_labeled(O_gamma, Gmap);
    std::set<std::string> labels;
    for (int v : gamma_vertices) labels.insert(vertex_label(v));
    double dev = support_deviation(O, vfact_, labels);
    if (support_dev) *support_dev = dev;
    if (dev > 1e-9) throw SupportLeak("undressed operator leaks outside V_Gamma: " + std::to_string(dev));
    return O;
}

Vec symmetric_sector_state(const GaugeStructure &gs, const Vec &psi) {
    if (psi.size() != gs.vertex_dim()) throw LabelMismatch("state dimension mismatch");
    Mat M = Mat::Zero(gs.full_dim(), 1);
    for (long long k = 0; k < gs.vertex_dim(); ++k) M(k * gs.edge_dim(), 0) = psi(k);
    gs.apply_pi_gi(M);
    double n = M.norm();
    if (n < 1e-12) throw NullState("state is annihilated by the gauge projector");
    return M.col(0) / n;
}

double projector_commutator(const Mat &O, const Mat &V) {
    auto leak = [&](const Mat &A) {
        Mat AV = A * V;
        return dev_norm(AV - V * (V.adjoint() * AV));
    };
    return leak(O) + leak(O.adjoint());
}

double diagonal_commutator(const Vec &d, const Mat &P) {
    double acc = 0.0;
    for (long j = 0; j < P.cols(); ++j)
        for (long i = 0; i < P.rows(); ++i) acc += std::norm((d(i) - d(j)) * P(i, j));
    return std::sqrt(acc);
}

DualityResult duality_check(const Mat &map, int order, const std::function<Mat(int)> &left,
                            const std::function<Mat(int)> &right) {
    DualityResult r;
    Mat Q = map;
    // orthonormalize the image for the commutator test
    Eigen::JacobiSVD<Mat> svd(map, Eigen::ComputeThinU);
    long rank = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9) ++rank;
    Q = svd.matrixU().leftCols(rank);
    for (int g = 0; g < order; ++g) {
        Mat R = right(g);
        r.deviation = std::max(r.deviation, dev_norm(map * left(g) - R * map));
        r.commutator = std::max(r.commutator, projector_commutator(R, Q));
    }
    return r;
}

std::pair<long long, long long> recover_rational(double x, long long max_den) {
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double y = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(y);
        long long ai = static_cast<long long>(a);
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = y - a;
        if (std::abs(static_cast<double>(p1) / q1 - x) < 1e-12 * std::max(1.0, std::abs(x)) || frac < 1e-15) break;
        y = 1.0 / frac;
    }
    return {p1, q1};
}

}  // namespace hqg
