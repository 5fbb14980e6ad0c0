#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hqg/lattice.hpp"
#include "hqg/tensor.hpp"

namespace hqg {

// i^phase X^x Z^z on n qubits, qubit 0 most significant in dense form.
struct Pauli {
    std::vector<std::uint8_t> x, z;
    int phase = 0;

    Pauli() = default;
    explicit Pauli(int n) : x(n, 0), z(n, 0) {}
    static Pauli from_string(const std::string &s);  // "XZZXI", optional leading sign
    int size() const { return static_cast<int>(x.size()); }
    bool is_identity() const;
    int weight() const;
    std::vector<int> support() const;
    bool commutes(const Pauli &o) const;
    bool hermitian() const;
    Pauli operator*(const Pauli &o) const;
    bool operator==(const Pauli &o) const { return x == o.x && z == o.z && (phase & 3) == (o.phase & 3); }
    bool same_up_to_phase(const Pauli &o) const { return x == o.x && z == o.z; }
    std::string str() const;
    // Transpose and inverse.
    Pauli transpose() const;
    Pauli inverse() const;
    Pauli restrict(const std::vector<int> &qubits) const;
    Mat dense() const;
    // Apply to a state vector in O(2^n).
    Vec apply(const Vec &v) const;
};

struct Leg {
    std::string label;
    bool input = false;
};

// Pure stabilizer state over labeled legs; a Choi state when some legs are inputs.
class StabilizerState {
public:
    StabilizerState() = default;
    StabilizerState(std::vector<Leg> legs, std::vector<Pauli> gens);

    int size() const { return static_cast<int>(legs_.size()); }
    const std::vector<Leg> &legs() const { return legs_; }
    const std::vector<Pauli> &generators() const { return gens_; }
    int leg_index(const std::string &label) const;
    std::vector<int> inputs() const;
    std::vector<int> outputs() const;
    int num_inputs() const { return static_cast<int>(inputs().size()); }

    void set_input(const std::string &label, bool input);
    void relabel(const std::string &from, const std::string &to);

    // Independent, commuting, and n generators.
    bool valid() const;
    // Sign of P in the stabilizer group: +1, -1, or 0 if absent.
    int membership(const Pauli &P) const;
    std::optional<std::vector<std::uint8_t>> decompose(const Pauli &P) const;
    // Project onto +1 eigenspace of P (throws NullState if -P is a stabilizer).
    void project(const Pauli &P);
    // Bell-project legs a and b and remove them.
    void contract(const std::string &a, const std::string &b);
    // Entropy in bits of the reduced state on the listed legs.
    int entropy_bits(const std::vector<int> &legs) const;
    // No nontrivial stabilizer supported on inputs only.
    bool is_isometry() const;

    // Reduced row echelon form with recomputed phases.
    std::vector<Pauli> canonical() const;
    bool same_state(const StabilizerState &o) const;

    Vec dense_state(unsigned seed = 3) const;
    // Outputs x inputs, normalized to an isometry when is_isometry().
    Mat dense_isometry() const;
    Pauli embed(const Pauli &p, const std::vector<int> &qubits) const;

private:
    std::vector<Leg> legs_;
    std::vector<Pauli> gens_;
};

StabilizerState tensor_product(const StabilizerState &a, const StabilizerState &b);
// Contract pairs (label in a, label in b) after concatenation.
StabilizerState compose(const StabilizerState &a, const StabilizerState &b,
                        const std::vector<std::pair<std::string, std::string>> &pairs);

// Leg 0 input, legs 1..5 outputs.
StabilizerState perfect_tensor(const std::string &prefix = "");
StabilizerState six_leg_state(const std::string &prefix = "");
// Legs: in, o1, o2.
StabilizerState copy_tensor_z2(const std::string &prefix = "");

// A logical Pauli on the inputs (indexed over inputs()) implemented on outputs in region.
std::optional<Pauli> pauli_reconstruct(const StabilizerState &iso, const Pauli &logical,
                                       const std::set<int> &region);

// Same, with one elimination shared by all logicals.
std::vector<std::optional<Pauli>> pauli_reconstruct_many(const StabilizerState &iso, const std::vector<Pauli> &logicals,
                                                         const std::set<int> &region);

// Group element agreeing with target (up to phase) on every leg outside free_legs.
std::optional<Pauli> find_stabilizer_matching(const StabilizerState &s, const Pauli &target, const std::set<int> &free_legs);

// outer o inner: each output of inner is contracted with the input of outer carrying the same label.
StabilizerState chain(const StabilizerState &inner, const StabilizerState &outer);
// Choi state of the adjoint map: conjugate state, inputs and outputs swapped.
StabilizerState adjoint_map(const StabilizerState &s);

// {A_v(1) = X_v prod X_e : v in V1}; qubits: vertices in vertex_qubits (ascending), then edges.
std::vector<Pauli> z2_gauge_projector_tableau(const LabeledGraph &g, const std::set<int> &vertex_qubits);
std::vector<Pauli> independent_subset(const std::vector<Pauli> &ps);
int gf2_rank(std::vector<std::vector<std::uint8_t>> rows);
// Basis of {x : rows x = 0} over GF(2).
std::vector<std::vector<std::uint8_t>> gf2_nullspace(const std::vector<std::vector<std::uint8_t>> &rows, int ncols);

}  // namespace hqg
