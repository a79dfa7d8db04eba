#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sbx::qsim {

inline constexpr int kMaxQubits = 12;

/// Dense amplitude vector over the computational basis. Convention: qubit 0
/// is the most-significant bit of the basis index, so on q qubits the bit of
/// qubit k within index i is (i >> (q-1-k)) & 1.
struct StateVector {
    std::vector<std::complex<double>> amplitudes;
    int qubits = 0;

    static StateVector zero_state(int qubits);
    double norm() const;
};

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Tensor product of single-qubit Pauli factors, one per qubit, with
/// factor 0 acting on qubit 0.
struct PauliString {
    std::vector<Pauli> factors;

    static PauliString parse(std::string_view text); // e.g. "ZXI"
    std::string to_string() const;
    int size() const { return static_cast<int>(factors.size()); }
};

/// Angles for the layered Ry/Rz + CNOT-ring ansatz. Layout: for layer l and
/// qubit j, thetas[l*2*qubits + 2*j] feeds Ry and thetas[... + 2*j + 1]
/// feeds Rz, matching the circuit column order.
struct AnsatzParams {
    int qubits = 0;
    int layers = 1;
    std::vector<double> thetas; // size 2 * qubits * layers
};

// Single-qubit rotations, exp(-i theta P / 2) for P in {X, Y, Z}.
StateVector apply_rx(StateVector state, int qubit, double theta);
StateVector apply_ry(StateVector state, int qubit, double theta);
StateVector apply_rz(StateVector state, int qubit, double theta);

StateVector apply_cnot(StateVector state, int control, int target);

/// One qubit per feature: Rx(x_i) applied to |0...0>.
StateVector encode_angle(std::span<const double> x);

/// x zero-padded to the next power of two, normalized, written as
/// amplitudes over ceil(log2(d)) qubits (minimum one qubit).
StateVector encode_amplitude(std::span<const double> x);

/// Layered rotation encoding on n_q qubits: the input is consumed in
/// consecutive segments of length n_q, alternating an Rx row and an Ry row,
/// each layer closed by a CNOT chain j -> j+1. Requires dim(x) divisible by
/// 2*n_q.
StateVector encode_feature_map(std::span<const double> x, int n_q);

/// Per layer: Ry then Rz on every qubit, then the CNOT ring
/// 0->1, 1->2, ..., q-2->q-1, q-1->0.
StateVector apply_yz_circular(StateVector state, const AnsatzParams& params);

/// Exact expectation <psi|P|psi>.
double expect_pauli(const StateVector& state, const PauliString& p);

/// |<i|psi>|^2 for every basis index.
std::vector<double> basis_probabilities(const StateVector& state);

/// The 2q+1 mutually anticommuting strings
///   { Z^(j) X I..., Z^(j) Y I... : j = 0..q-1 } + { Z^q }.
std::vector<PauliString> anticommuting_set(int qubits);

/// Deterministic panel of 2^q non-identity Pauli strings, cheapest first.
/// Ordering: contiguous uniform runs per weight w = 1..q, Z runs before X
/// runs (windows left to right); if more strings are needed, uniform Y runs
/// per weight; finally mixed contiguous {Z,X,Y} window patterns by weight in
/// lexicographic order (Z < X < Y), skipping the uniform ones. Requires
/// q <= 6.
std::vector<PauliString> pauli_panel(int qubits);

} // namespace sbx::qsim
