#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hqg/gauging.hpp"
#include "hqg/group.hpp"
#include "hqg/lattice.hpp"
#include "hqg/qec.hpp"
#include "hqg/stabilizer.hpp"

namespace hqg {

// {5,4} patch grown by adding every tile that shares a side with the current patch.
struct Tiling {
    int cutoff = 0;
    std::vector<std::array<int, 5>> tiles;  // corner points, counterclockwise
    std::vector<int> layer;
    int num_points = 0;
    std::vector<int> boundary;  // boundary points in cyclic order
};

Tiling pentagon_tiling(int l);

struct TilingRecount {
    int tiles = 0;
    int bonds = 0;
    int dangling = 0;
    int points = 0;
    int euler = 0;              // points - sides + tiles
    bool layers_match = false;  // dual-graph BFS distance equals creation layer
    bool valence_ok = false;    // interior points in 4 tiles, boundary points in at most 3
    std::vector<int> per_layer;
};

TilingRecount recount(const Tiling &t);

// Tiles are V1 vertices 0..T-1, dangling sides are V0 vertices T.. in boundary order.
LabeledGraph happy_graph(const Tiling &t);

enum class BulkProjector { identity, gauge_invariant, flux_free };
std::string projector_name(BulkProjector p);

struct HolographicCode {
    std::string name;
    int cutoff = 0;
    Tiling tiling;
    LabeledGraph graph;
    BulkProjector projector = BulkProjector::identity;
    bool edge_qubits = false;
    // Choi state; inputs v<t> and, with edge qubits, e<t>-<h>.
    StabilizerState encoder;
    std::map<int, std::vector<std::string>> boundary_legs;  // V0 vertex -> output legs
    std::optional<CodeIsometry> dense;                     // unconstrained bulk, small codes only
    // Dense encoder on the full bulk space when the bulk is constrained.
    std::optional<Mat> dense_map;
    Factorization dense_bulk, dense_boundary;

    std::vector<Pauli> bulk_constraints() const;  // stabilizers of Pi on the input legs
    StabilizerState codespace_state() const;     // encoder restricted to the image of Pi
    std::set<int> boundary_qubits(const std::set<int> &R) const;
    std::vector<std::string> input_labels() const;
    // Logical Pauli over the encoder's inputs from per-label letters.
    Pauli logical(const std::map<std::string, char> &ops) const;
    Pauli boundary_pauli(const std::map<std::string, char> &ops) const;
    std::vector<int> boundary_order() const { return graph.V0(); }
};

HolographicCode build_happy(int l);
// Z2 only; layer k of tile t feeds side k, layer 5 is the vertex leg.
HolographicCode build_lote(int l, const FiniteGroup &G, bool gauged);

// Global/global check: X on every boundary leg against X on every bulk vertex leg.
bool happy_global_duality(const HolographicCode &c);

struct Wedge {
    std::set<int> region;    // R in V0
    std::set<int> vertices;  // V1 part
    std::set<int> edges;
    std::set<int> ext;
    int gamma = 0;  // edges with exactly one endpoint in R u vertices
    std::set<int> interior_edges() const;
};

Wedge greedy_wedge(const LabeledGraph &g, const std::set<int> &R, const std::vector<int> &order = {});
// R -> E(R^c)^c u ext E(R^c); ext holds non-dangling edges only.
Wedge complement_wedge(const LabeledGraph &g, const std::set<int> &R);
Wedge make_wedge(const LabeledGraph &g, const std::set<int> &R, const std::set<int> &vertices,
                 const std::set<int> &edges);

struct ProbingReport {
    bool ok = true;
    int condition = 0;  // first violated condition, 1..3
    std::string detail;
};

ProbingReport near_boundary_probing(const LabeledGraph &g, const Wedge &w);
bool greedy_order_independent(const LabeledGraph &g, const std::set<int> &R, int trials, unsigned seed);
// Cyclic arcs of V0 of sizes 1..max_size (the full boundary once).
std::vector<std::set<int>> contiguous_regions(const LabeledGraph &g, int max_size);

// Interior qubit operators plus central flux X_e on ext edges.
std::vector<Pauli> wedge_generators(const HolographicCode &c, const Wedge &w);

struct ReconstructionReport {
    int generators = 0;
    int reconstructed = 0;
    bool ok() const { return generators == reconstructed; }
    std::vector<Pauli> boundary_ops;
};

ReconstructionReport wedge_reconstruction(const HolographicCode &c, const Wedge &w);

// W: L2(G) -> (+)_r H_r (x) (+)_r H_rbar, physical labels "left", "right".
CodeIsometry grand_orthogonality_tensor(const FiniteGroup &G);
Mat grand_left_action(const FiniteGroup &G, int h);   // implements U^L(h)
Mat grand_right_action(const FiniteGroup &G, int h);  // implements U^R(h)

// Z2 gauging map with U_v = X on V1 vertices: inputs v<t>, outputs v<t> and edges.
StabilizerState gauging_map_state(const LabeledGraph &g, const std::string &input_prefix = "p:");
// Flux-free and gauge-invariant stabilizers on the bulk legs.
std::vector<Pauli> z2_flux_free_constraints(const LabeledGraph &g, const std::vector<std::string> &labels);

struct GaugedCodeResult {
    HolographicCode code;
    double duality_deviation = 0.0;  // gauge/global on the image of Pi_FF
    double reconstruction_residual = 0.0;
    int reconstructed = 0;
};

// V' = V G^dagger; trivial group returns the code unchanged.
GaugedCodeResult gauge_code(const HolographicCode &code, const FiniteGroup &G);

struct UngaugedCodeResult {
    HolographicCode code;
    double duality_deviation = 0.0;  // global/global
};

// W' = W G; boundary symmetry per V0 vertex from induce_boundary_symmetry when the bulk is Pi_GI.
UngaugedCodeResult ungauge_code(const HolographicCode &code, const FiniteGroup &G);

struct BoundarySymmetry {
    std::map<int, Pauli> site;  // V0 vertex -> order-2 Pauli on its legs
    double duality_deviation = 0.0;
    bool representation_ok = false;
};

BoundarySymmetry induce_boundary_symmetry(const HolographicCode &code, const FiniteGroup &G);

// Single-tile gauged LOTE as six dense 1 -> 5 blocks with Pi_GI on the 64-dim bulk.
struct BlockDenseLote {
    std::vector<CodeIsometry> blocks;  // block k: logical = leg fed by layer k
    std::vector<std::string> block_inputs;
    Factorization bulk;                // v0 then edges
    Mat pi_gi;
    std::map<int, std::vector<std::string>> boundary_legs;
};

BlockDenseLote block_dense_lote(const HolographicCode &code);

struct DenseBoundarySymmetry {
    std::map<int, LabeledOperator> site;
    double duality_deviation = 0.0;     // sum of block deviations plus [A_V0, Pi_GI]
    double homomorphism_deviation = 0.0;
    std::map<int, Mat> block_lift;      // block -> lifted X on its outputs
};

DenseBoundarySymmetry induce_boundary_symmetry_dense(const BlockDenseLote &b, const FiniteGroup &G);
// ||(1 - P) U_R V Pi|| for the restricted induced symmetry on sites R.
double restricted_symmetry_leak(const BlockDenseLote &b, const DenseBoundarySymmetry &s, const std::set<int> &R);
// 1 - Tr(P U P U^dagger) / Tr P for a dense code projector.
double image_overlap_deficiency(const Mat &P, const Mat &U);
// Same quantity for U_R on the block code with P = V Pi_GI V^dagger, evaluated as
// Tr(Pi B Pi B^dagger) with B = V^dagger U_R V on the 64-dim bulk.
double restricted_image_deficiency(const BlockDenseLote &b, const DenseBoundarySymmetry &s, const std::set<int> &R);

struct EntropyRecord {
    std::string region;
    double lhs = 0.0;
    double rhs = 0.0;
    bool connected = true;
    bool skipped = false;
    double deviation() const { return std::abs(lhs - rhs); }
};

// S(rho^G_A) - S(rho_A) against (|dA| - 1) ln|G|; A keeps its vertices and internal edges.
std::vector<EntropyRecord> gauged_entropy_check(const GaugeStructure &gs, const Vec &psi,
                                                const std::vector<std::set<int>> &regions);
// S_R against S(rho_E(R)) + |gamma_R| ln 2 for a dense unconstrained-bulk code.
std::vector<EntropyRecord> holographic_rt_check(const HolographicCode &c, const Mat &rho_bulk,
                                                const std::vector<std::set<int>> &regions);

struct DomainWallResult {
    bool found = false;
    int radius = 0;
    int regions_tested = 0;
    std::set<int> failing_region;
    std::vector<std::string> witness;  // D_boundary, D_bulk of the last success
};

// Locally removable domain walls for one bulk region (V1 subset).
DomainWallResult domain_wall_removal(const HolographicCode &code, const std::set<int> &R, int radius,
                                     const std::map<int, Pauli> &site_symmetry);
// Every connected bulk region with boundary overlap, up to max_size tiles.
DomainWallResult domain_wall_search(const HolographicCode &code, int radius, const std::map<int, Pauli> &site_symmetry,
                                    int max_size = 3);
std::map<int, Pauli> boundary_x_symmetry(const HolographicCode &code);

// V (V^dagger V)^(-1/2).
Mat restore_isometry(const Mat &V);

}  // namespace hqg
