#pragma once

#include <map>
#include <string>
#include <vector>

#include "hqg/lattice.hpp"
#include "hqg/tensor.hpp"

namespace hqg {

// Sigma = {-N, ..., N}.
struct ChargeTruncation {
    int N = 0;
    int size() const { return 2 * N + 1; }
    bool contains(int n) const { return n >= -N && n <= N; }
};

struct U1SymmetricSystem {
    std::string name;
    LabeledGraph graph;
    std::map<int, std::vector<int>> charges;  // U_v(theta) = diag(e^{i q theta})
};

// Dirichlet kernel sum_{|n|<=N} e^{i n theta}.
double delta_sigma(int N, double theta);
// max |W_r' W_r^dagger - delta_rr'| with the characters integrated by exact quadrature.
double peter_weyl_deviation(int N);

struct TruncatedGauging {
    ChargeTruncation sigma;
    std::vector<int> vertices;                        // graph vertex order
    std::vector<std::vector<int>> vertex_configs;     // column k -> charge per vertex
    std::vector<std::vector<std::vector<int>>> support;  // column k -> admissible edge charges
    std::vector<double> p_sigma;                      // P_Sigma is diagonal: support sizes

    long long vertex_dim() const { return static_cast<long long>(vertex_configs.size()); }
    Mat p_matrix() const;
    // Dense map on the truncated edge space; throws CapExceeded above max_dim rows.
    Mat dense(bool covariant, long long max_dim = 1 << 14) const;
};

TruncatedGauging truncated_gauging(const U1SymmetricSystem &sys, int N);

struct CovariantIsometry {
    TruncatedGauging map;
    double isometry_deviation = 0.0;
    double covariance_deviation = 0.0;  // max over sampled angles
    bool block_covariant = false;       // integer charge balance for every support element
    double representation_deviation = 0.0;
    double commutator_deviation = 0.0;  // [P_Sigma, U_V(theta)]
};

extern const std::vector<double> kU1SampleAngles;

// G_Sigma K_Sigma^{-1}; throws NonPositiveP with the charge signature of a null column.
CovariantIsometry covariant_isometry(const U1SymmetricSystem &sys, int N);

struct Stabilization {
    int threshold = -1;  // first N after which P_Sigma no longer changes, -1 if never within range
    bool monotone = true;
    std::vector<std::vector<double>> spectra;
};

Stabilization p_sigma_stabilization(const U1SymmetricSystem &sys, int n_max);

// Residual of the path-dressed implementation of |q'><q| on vertex v against G~ |q'><q|.
double truncated_dressing_residual(const U1SymmetricSystem &sys, int N, int v, int q_from, int q_to,
                                   const std::vector<int> &path_vertices);

std::vector<U1SymmetricSystem> u1_instances();
U1SymmetricSystem u1_open_line();

}  // namespace hqg
