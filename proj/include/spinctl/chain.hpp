#pragma once

#include <optional>

#include "spinctl/complex_matrix.hpp"

namespace spinctl {

// Isotropic antiferromagnetic Heisenberg chain, hbar = 1. Amplitudes and
// frequencies are in units of the coupling J, times in units of 1/J.
struct ChainSpec {
    int n_spins = 1;
    double coupling = 1.0;

    int dim() const { return 1 << n_spins; }
    void validate() const;
};

enum class Axis { X, Y, Z };
enum class ControlAxis { X, Y };

// (1/2) * (I (x) ... (x) sigma_axis (x) ... (x) I) with sigma_axis at tensor
// slot `site` (1-based); slot 1 is the leftmost, most-significant factor in
// the computational basis |s1 s2 ... s_N>.
HermitianMatrix spin_operator(int site, Axis axis, const ChainSpec& spec);

// H_0 = J sum_i (S_ix S_{i+1,x} + S_iy S_{i+1,y} + S_iz S_{i+1,z})
HermitianMatrix heisenberg_hamiltonian(const ChainSpec& spec);

// amplitude * S_{1,axis}
HermitianMatrix control_hamiltonian(ControlAxis axis, double amplitude, const ChainSpec& spec);

struct GateTarget {
    enum class Kind { XEnd, CnotEnd, SqrtSwapEnd, Custom };

    Kind kind = Kind::XEnd;
    int n_spins = 1;
    std::optional<CMat> custom;

    static GateTarget x_end(int n_spins) { return {Kind::XEnd, n_spins, std::nullopt}; }
    static GateTarget cnot_end(int n_spins) { return {Kind::CnotEnd, n_spins, std::nullopt}; }
    static GateTarget sqrt_swap_end(int n_spins) { return {Kind::SqrtSwapEnd, n_spins, std::nullopt}; }
    static GateTarget custom_gate(int n_spins, CMat u) {
        return {Kind::Custom, n_spins, std::move(u)};
    }
};

// Realizes the target as a d x d unitary. X_end flips the last spin;
// CNOT_end acts on the last two spins with control = spin N_s-1 and
// target = spin N_s; SQRT_SWAP_end is the principal square root of the
// SWAP on the last two spins.
UnitaryMatrix gate_target(const GateTarget& target);

} // namespace spinctl
