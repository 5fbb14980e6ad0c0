#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "hqg/group.hpp"
#include "hqg/lattice.hpp"
#include "hqg/tensor.hpp"

namespace hqg {

// Unconstrained system with an on-site representation of G.
struct SymmetricSystem {
    LabeledGraph graph;
    FiniteGroup group;
    std::map<int, std::vector<Mat>> rep;  // vertex -> U_v(g), g = 0..|G|-1

    int dim(int v) const;
};

// Same representation on every V1 vertex; V0 vertices get v0_rep or the trivial 1-dim rep.
SymmetricSystem make_symmetric_system(const LabeledGraph &graph, const FiniteGroup &G,
                                      const std::vector<Mat> &v1_rep,
                                      const std::vector<Mat> &v0_rep = {});
std::vector<Mat> trivial_rep(const FiniteGroup &G);
std::vector<Mat> regular_rep(const FiniteGroup &G);

using FluxAssignment = std::vector<int>;  // group element per edge index

struct FluxSector {
    std::vector<char> mask;  // over edge configurations
    double value = 0.0;
    long long rank = 0;
};

class GaugeStructure {
public:
    explicit GaugeStructure(SymmetricSystem sys);

    const SymmetricSystem &system() const { return sys_; }
    const LabeledGraph &graph() const { return sys_.graph; }
    const FiniteGroup &group() const { return sys_.group; }
    const RepresentationData &reps() const { return reps_; }
    const Factorization &vertex_fact() const { return vfact_; }
    const Factorization &full_fact() const { return ffact_; }
    long long vertex_dim() const { return vfact_.total_dim(); }
    long long edge_dim() const { return edim_; }
    long long full_dim() const { return ffact_.total_dim(); }
    int num_edges() const { return static_cast<int>(sys_.graph.edges().size()); }

    std::vector<int> edge_config(long long index) const;
    long long config_index(const std::vector<int> &cfg) const;

    // A_v(g) acting on the rows of M (full space).
    void apply_gauge(int v, int g, Mat &M) const;
    void apply_gauge_set(const std::vector<int> &W, int g, Mat &M) const;
    Mat gauge_transformation(int v, int g) const;
    // A_v(g) on the local factorization {v} u E(v).
    LabeledOperator gauge_transformation_local(int v, int g) const;
    void apply_projector(int v, Mat &M) const;
    void apply_pi_gi(Mat &M) const;
    Mat pi_v(int v) const;
    const Mat &pi_gi() const;

    Mat global_symmetry(int g) const;  // U_V(g) on the vertex space
    Mat ngc_symmetry(int g, const std::vector<int> &W) const;
    Mat asymptotic_symmetry(int g) const { return ngc_symmetry(g, sys_.graph.V0()); }

    double kappa2() const;
    // Columns Pi_GI(|k> (x) |phi>), divided by kappa when normalize.
    Mat twisted_gauging_map(const FluxAssignment &phi, bool normalize = true) const;
    Mat gauging_map(bool normalize = true) const;
    Mat ngc_flux_map(const std::map<int, int> &h) const;
    FluxAssignment conjugate_flux(const FluxAssignment &phi, int h) const;

    // Wilson operators as diagonals over the edge configuration space.
    Vec wilson_link(int e, const Irrep &r, int i, int j, bool reversed = false) const;
    Vec wilson_path(const GraphPath &p, const Irrep &r, int i, int j) const;
    Vec wilson_loop(const GraphPath &p, const Irrep &r) const;
    Vec wilson_line(const GraphPath &p, const Irrep &r, int i, int j) const;
    Mat holonomy(const GraphPath &p, const Irrep &r, const std::vector<int> &cfg) const;
    int holonomy_element(const GraphPath &p, const std::vector<int> &cfg) const;
    // Lift an edge diagonal to the full space.
    Vec on_full(const Vec &edge_diag) const;

    const std::vector<GraphPath> &loops() const { return loops_; }
    const std::vector<GraphPath> &lines() const { return lines_; }

    std::vector<char> flux_free_mask() const;
    Mat flux_free_projector() const;
    std::vector<FluxSector> flux_sector_decomposition(unsigned seed = 11) const;
    Mat sector_projector(const FluxSector &s) const;

    Mat central_flux_operator(int e, int g) const;

    // Thm 3.3 dressing along a path from u in V1 to v0 in V0.
    LabeledOperator dressed_operator(const Mat &O_u, const GraphPath &gamma) const;
    // O = G^dagger O_Gamma G with support check on V_Gamma.
    Mat undress_operator(const LabeledOperator &O_gamma, const std::set<int> &gamma_vertices,
                         const Mat &Gmap, double *support_dev = nullptr) const;
    bool undress_hypothesis(const std::set<int> &gamma_vertices, const std::set<int> &gamma_edges) const;

    Mat apply_labeled(const LabeledOperator &op, const Mat &M) const;

private:
    SymmetricSystem sys_;
    RepresentationData reps_;
    Factorization vfact_, ffact_;
    long long edim_ = 1;
    std::vector<GraphPath> loops_, lines_;
    mutable std::once_flag pi_once_;
    mutable std::shared_ptr<Mat> pi_gi_;
};

// V0 = empty: Pi_GI(|psi> (x) |I>_E) / norm, NullState if annihilated.
Vec symmetric_sector_state(const GaugeStructure &gs, const Vec &psi);

struct DualityResult {
    double deviation = 0.0;
    double commutator = 0.0;
};

// max_g ||map left(g) - right(g) map|| and the commutator of right(g) with map map^dagger.
DualityResult duality_check(const Mat &map, int order, const std::function<Mat(int)> &left,
                            const std::function<Mat(int)> &right);
// ||[O, V V^dagger]|| bound via (1-P) O V and (1-P) O^dagger V.
double projector_commutator(const Mat &O, const Mat &V);
// ||[diag(d), P]|| in Frobenius norm.
double diagonal_commutator(const Vec &d, const Mat &P);

// Best rational p/q with q <= max_den.
std::pair<long long, long long> recover_rational(double x, long long max_den = 1LL << 20);

}  // namespace hqg
