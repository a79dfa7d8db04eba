#include "sbx/qsim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sbx::qsim {

namespace {

using cplx = std::complex<double>;

void check_register(int qubits) {
    if (qubits < 1 || qubits > kMaxQubits)
        throw std::invalid_argument("register too large");
}

void check_qubit(const StateVector& s, int qubit) {
    if (qubit < 0 || qubit >= s.qubits)
        throw std::invalid_argument("qubit index out of range");
}

inline std::size_t qubit_mask(int qubits, int qubit) {
    return std::size_t{1} << (qubits - 1 - qubit);
}

// In-place 2x2 unitary [[u00,u01],[u10,u11]] on one qubit.
void apply_single(StateVector& s, int qubit, cplx u00, cplx u01, cplx u10, cplx u11) {
    const std::size_t mask = qubit_mask(s.qubits, qubit);
    const std::size_t dim = s.amplitudes.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const cplx a = s.amplitudes[i];
        const cplx b = s.amplitudes[i | mask];
        s.amplitudes[i] = u00 * a + u01 * b;
        s.amplitudes[i | mask] = u10 * a + u11 * b;
    }
}

void rx_inplace(StateVector& s, int qubit, double theta) {
    const double c = std::cos(theta / 2.0), sn = std::sin(theta / 2.0);
    apply_single(s, qubit, {c, 0}, {0, -sn}, {0, -sn}, {c, 0});
}

void ry_inplace(StateVector& s, int qubit, double theta) {
    const double c = std::cos(theta / 2.0), sn = std::sin(theta / 2.0);
    apply_single(s, qubit, {c, 0}, {-sn, 0}, {sn, 0}, {c, 0});
}

void rz_inplace(StateVector& s, int qubit, double theta) {
    const cplx e0 = std::exp(cplx(0, -theta / 2.0));
    const cplx e1 = std::exp(cplx(0, theta / 2.0));
    apply_single(s, qubit, e0, {0, 0}, {0, 0}, e1);
}

void cnot_inplace(StateVector& s, int control, int target) {
    const std::size_t cmask = qubit_mask(s.qubits, control);
    const std::size_t tmask = qubit_mask(s.qubits, target);
    const std::size_t dim = s.amplitudes.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask))
            std::swap(s.amplitudes[i], s.amplitudes[i | tmask]);
    }
}

void cnot_chain_and_ring(StateVector& s, bool close_ring) {
    const int q = s.qubits;
    for (int j = 0; j + 1 < q; ++j) cnot_inplace(s, j, j + 1);
    if (close_ring && q > 1) cnot_inplace(s, q - 1, 0);
}

} // namespace

StateVector StateVector::zero_state(int qubits) {
    check_register(qubits);
    StateVector s;
    s.qubits = qubits;
    s.amplitudes.assign(std::size_t{1} << qubits, cplx{0, 0});
    s.amplitudes[0] = cplx{1, 0};
    return s;
}

double StateVector::norm() const {
    double total = 0.0;
    for (const cplx& a : amplitudes) total += std::norm(a);
    return std::sqrt(total);
}

PauliString PauliString::parse(std::string_view text) {
    PauliString p;
    p.factors.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'I': p.factors.push_back(Pauli::I); break;
            case 'X': p.factors.push_back(Pauli::X); break;
            case 'Y': p.factors.push_back(Pauli::Y); break;
            case 'Z': p.factors.push_back(Pauli::Z); break;
            default: throw std::invalid_argument("PauliString: bad symbol");
        }
    }
    return p;
}

std::string PauliString::to_string() const {
    std::string out;
    out.reserve(factors.size());
    for (Pauli f : factors) {
        switch (f) {
            case Pauli::I: out.push_back('I'); break;
            case Pauli::X: out.push_back('X'); break;
            case Pauli::Y: out.push_back('Y'); break;
            case Pauli::Z: out.push_back('Z'); break;
        }
    }
    return out;
}

StateVector apply_rx(StateVector state, int qubit, double theta) {
    check_qubit(state, qubit);
    rx_inplace(state, qubit, theta);
    return state;
}

StateVector apply_ry(StateVector state, int qubit, double theta) {
    check_qubit(state, qubit);
    ry_inplace(state, qubit, theta);
    return state;
}

StateVector apply_rz(StateVector state, int qubit, double theta) {
    check_qubit(state, qubit);
    rz_inplace(state, qubit, theta);
    return state;
}

StateVector apply_cnot(StateVector state, int control, int target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) throw std::invalid_argument("cnot: control equals target");
    cnot_inplace(state, control, target);
    return state;
}

StateVector encode_angle(std::span<const double> x) {
    const int d = static_cast<int>(x.size());
    if (d < 1 || d > kMaxQubits) throw std::invalid_argument("register too large");
    StateVector s = StateVector::zero_state(d);
    for (int i = 0; i < d; ++i) rx_inplace(s, i, x[i]);
    return s;
}

StateVector encode_amplitude(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("cannot normalize");
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    if (norm2 == 0.0) throw std::invalid_argument("cannot normalize");

    int qubits = 1;
    while ((std::size_t{1} << qubits) < x.size()) ++qubits;
    check_register(qubits);

    StateVector s;
    s.qubits = qubits;
    s.amplitudes.assign(std::size_t{1} << qubits, cplx{0, 0});
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < x.size(); ++i) s.amplitudes[i] = cplx{x[i] * inv, 0};
    return s;
}

StateVector encode_feature_map(std::span<const double> x, int n_q) {
    check_register(n_q);
    const std::size_t d = x.size();
    if (d == 0 || d % (2 * static_cast<std::size_t>(n_q)) != 0)
        throw std::invalid_argument("d must be a multiple of 2*n_q");
    const std::size_t layers = d / (2 * static_cast<std::size_t>(n_q));
    StateVector s = StateVector::zero_state(n_q);
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t base = l * 2 * static_cast<std::size_t>(n_q);
        for (int j = 0; j < n_q; ++j) rx_inplace(s, j, x[base + j]);
        for (int j = 0; j < n_q; ++j) ry_inplace(s, j, x[base + n_q + j]);
        cnot_chain_and_ring(s, /*close_ring=*/false);
    }
    return s;
}

StateVector apply_yz_circular(StateVector state, const AnsatzParams& params) {
    if (params.qubits != state.qubits || params.layers < 1 ||
        params.thetas.size() != static_cast<std::size_t>(2 * params.qubits * params.layers))
        throw std::invalid_argument("ansatz parameter count mismatch");
    const int q = state.qubits;
    for (int l = 0; l < params.layers; ++l) {
        const std::size_t base = static_cast<std::size_t>(l) * 2 * q;
        for (int j = 0; j < q; ++j) {
            ry_inplace(state, j, params.thetas[base + 2 * j]);
            rz_inplace(state, j, params.thetas[base + 2 * j + 1]);
        }
        cnot_chain_and_ring(state, /*close_ring=*/true);
    }
    return state;
}

double expect_pauli(const StateVector& state, const PauliString& p) {
    if (p.size() != state.qubits)
        throw std::invalid_argument("pauli string size mismatch");
    const int q = state.qubits;
    std::size_t flip_mask = 0, y_mask = 0, z_mask = 0;
    int y_count = 0;
    for (int k = 0; k < q; ++k) {
        const std::size_t m = qubit_mask(q, k);
        switch (p.factors[k]) {
            case Pauli::I: break;
            case Pauli::X: flip_mask |= m; break;
            case Pauli::Y: flip_mask |= m; y_mask |= m; ++y_count; break;
            case Pauli::Z: z_mask |= m; break;
        }
    }
    // P|i> = i^{#Y} * (-1)^{popcount(i & (ymask|zmask))} |i ^ flip_mask>
    static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx global = i_pow[y_count & 3];
    const std::size_t sign_mask = y_mask | z_mask;
    cplx acc{0, 0};
    const std::size_t dim = state.amplitudes.size();
    for (std::size_t i = 0; i < dim; ++i) {
        const double sign = (std::popcount(i & sign_mask) & 1) ? -1.0 : 1.0;
        acc += std::conj(state.amplitudes[i ^ flip_mask]) * (sign * state.amplitudes[i]);
    }
    acc *= global;
    return acc.real();
}

std::vector<double> basis_probabilities(const StateVector& state) {
    std::vector<double> probs(state.amplitudes.size());
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(state.amplitudes[i]);
    return probs;
}

std::vector<PauliString> anticommuting_set(int qubits) {
    check_register(qubits);
    std::vector<PauliString> set;
    set.reserve(2 * qubits + 1);
    for (int j = 0; j < qubits; ++j) {
        for (Pauli axis : {Pauli::X, Pauli::Y}) {
            PauliString p;
            p.factors.assign(qubits, Pauli::I);
            for (int k = 0; k < j; ++k) p.factors[k] = Pauli::Z;
            p.factors[j] = axis;
            set.push_back(std::move(p));
        }
    }
    PauliString all_z;
    all_z.factors.assign(qubits, Pauli::Z);
    set.push_back(std::move(all_z));
    return set;
}

namespace {

PauliString window_pattern(int qubits, int start, std::span<const Pauli> pattern) {
    PauliString p;
    p.factors.assign(qubits, Pauli::I);
    for (std::size_t k = 0; k < pattern.size(); ++k)
        p.factors[start + static_cast<int>(k)] = pattern[k];
    return p;
}

} // namespace

std::vector<PauliString> pauli_panel(int qubits) {
    if (qubits < 1 || qubits > 6) throw std::invalid_argument("pauli_panel: q too large");
    const std::size_t want = std::size_t{1} << qubits;
    std::vector<PauliString> panel;
    panel.reserve(want);

    auto push_runs = [&](Pauli axis) {
        for (int w = 1; w <= qubits && panel.size() < want; ++w) {
            std::vector<Pauli> run(w, axis);
            for (int start = 0; start + w <= qubits && panel.size() < want; ++start)
                panel.push_back(window_pattern(qubits, start, run));
        }
    };
    auto push_runs_by_weight = [&](int w, Pauli axis) {
        std::vector<Pauli> run(w, axis);
        for (int start = 0; start + w <= qubits && panel.size() < want; ++start)
            panel.push_back(window_pattern(qubits, start, run));
    };

    // Uniform Z then X runs, weight-major.
    for (int w = 1; w <= qubits && panel.size() < want; ++w) {
        push_runs_by_weight(w, Pauli::Z);
        push_runs_by_weight(w, Pauli::X);
    }
    // Uniform Y runs once the Z/X runs are exhausted (q >= 5).
    push_runs(Pauli::Y);
    // Mixed contiguous window patterns, by weight then lexicographic (Z<X<Y).
    const Pauli axes[3] = {Pauli::Z, Pauli::X, Pauli::Y};
    for (int w = 2; w <= qubits && panel.size() < want; ++w) {
        std::vector<int> digits(w, 0);
        for (;;) {
            bool uniform = true;
            for (int k = 1; k < w; ++k)
                if (digits[k] != digits[0]) { uniform = false; break; }
            if (!uniform) {
                std::vector<Pauli> pattern(w);
                for (int k = 0; k < w; ++k) pattern[k] = axes[digits[k]];
                for (int start = 0; start + w <= qubits && panel.size() < want; ++start)
                    panel.push_back(window_pattern(qubits, start, pattern));
                if (panel.size() >= want) break;
            }
            int pos = w - 1;
            while (pos >= 0 && digits[pos] == 2) digits[pos--] = 0;
            if (pos < 0) break;
            ++digits[pos];
        }
    }
    return panel;
}

} // namespace sbx::qsim
