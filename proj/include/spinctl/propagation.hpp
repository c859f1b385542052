#pragma once

#include <functional>
#include <vector>

#include "spinctl/chain.hpp"
#include "spinctl/complex_matrix.hpp"
#include "spinctl/eigen_hermitian.hpp"

namespace spinctl {

enum class ControlMode { AlternatingXY, XOnly };

// Piecewise-constant control protocol: N_t pulses of equal duration T on the
// first spin. AlternatingXY alternates x and y pulses (x first), amplitudes
// stored in application order (x1, y1, x2, y2, ...); XOnly drives x in every
// interval. Total evolution time t_f = N_t * T.
struct ControlSequence {
    ChainSpec spec;
    ControlMode mode = ControlMode::AlternatingXY;
    int n_pulses = 0;
    double pulse_duration = 0.0;
    std::vector<double> amplitudes;

    double total_time() const { return n_pulses * pulse_duration; }
    ControlAxis pulse_axis(int k) const {
        return (mode == ControlMode::XOnly || k % 2 == 0) ? ControlAxis::X : ControlAxis::Y;
    }
    void validate() const;
};

// Continuous-time control pair over [0, t_f], plus the time step used by the
// product-formula propagator; step must divide pulse_duration exactly.
struct SampledField {
    std::function<double(double)> hx;
    std::function<double(double)> hy;
    double total_time = 0.0;
    double pulse_duration = 0.0;
    double step = 0.0;
};

// exp(-i H duration) through the spectral form V diag(e^{-i lambda t}) V^dag.
UnitaryMatrix propagator_step(const HermitianMatrix& h, double duration);

// Ordered pulse product, right-most factor acting first.
UnitaryMatrix evolve_sequence(const ControlSequence& seq);

// F = |tr(U^dag target)| / d, invariant under global phase of either side.
double gate_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& target);

// Product-formula propagator for a time-varying field: a product of
// short constant-Hamiltonian exponentials, unitary by construction.
UnitaryMatrix product_formula_evolve(const SampledField& field, const ChainSpec& spec);

// Workspace-carrying evolver for the hot paths (optimizer iterations,
// Monte-Carlo noise sampling). Results are identical to the free functions;
// outputs here skip the UnitaryMatrix validation wrapper.
class PulseEvolver {
public:
    explicit PulseEvolver(const ChainSpec& spec);

    const ChainSpec& spec() const { return spec_; }
    int dim() const { return d_; }
    const CMat& drift() const { return h0_; }
    const CMat& control_op(ControlAxis axis) const {
        return axis == ControlAxis::X ? s1x_ : s1y_;
    }

    // eigensystem of H_0 + amplitude * S_{1,axis}
    void decompose_pulse(ControlAxis axis, double amplitude, double* w, CMat& v);
    // u = v diag(e^{-i w t}) v^dag
    void step_from_eigensystem(const double* w, const CMat& v, double duration, CMat& u);

    void evolve(const ControlSequence& seq, CMat& u);
    double fidelity(const ControlSequence& seq, const CMat& target);
    void product_formula(const SampledField& field, CMat& u);

private:
    ChainSpec spec_;
    int d_;
    CMat h0_, s1x_, s1y_;
    HermitianEigenSolver solver_;
    CMat hwork_, vwork_, wwork_, ustep_, acc_;
    std::vector<double> eigw_;
    std::vector<cxd> phases_;
};

double fidelity_raw(const CMat& u, const CMat& target);

} // namespace spinctl
