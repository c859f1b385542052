#include "spinctl/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spinctl/kernels.hpp"

namespace spinctl {

void ControlSequence::validate() const {
    spec.validate();
    if (n_pulses < 1)
        throw std::invalid_argument("ControlSequence: n_pulses must be >= 1");
    if (!(pulse_duration > 0.0))
        throw std::invalid_argument("ControlSequence: pulse_duration must be > 0");
    if (mode == ControlMode::AlternatingXY && n_pulses % 2 != 0)
        throw std::invalid_argument("ControlSequence: AlternatingXY needs an even pulse count");
    if (static_cast<int>(amplitudes.size()) != n_pulses)
        throw std::invalid_argument("ControlSequence: amplitude count != n_pulses");
}

double fidelity_raw(const CMat& u, const CMat& target) {
    if (u.dim() != target.dim())
        throw std::invalid_argument("gate_fidelity: dimension mismatch");
    const cxd tr = kernels::cdotc(u.data(), target.data(), static_cast<int>(u.size()));
    return std::min(1.0, std::abs(tr) / u.dim());
}

double gate_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& target) {
    return fidelity_raw(u.mat(), target.mat());
}

PulseEvolver::PulseEvolver(const ChainSpec& spec)
    : spec_(spec),
      d_(spec.dim()),
      h0_(heisenberg_hamiltonian(spec).mat()),
      s1x_(spin_operator(1, Axis::X, spec).mat()),
      s1y_(spin_operator(1, Axis::Y, spec).mat()),
      solver_(spec.dim()),
      hwork_(spec.dim()),
      vwork_(spec.dim()),
      wwork_(spec.dim()),
      ustep_(spec.dim()),
      acc_(spec.dim()),
      eigw_(spec.dim()),
      phases_(spec.dim()) {}

void PulseEvolver::decompose_pulse(ControlAxis axis, double amplitude, double* w, CMat& v) {
    hwork_ = h0_;
    kernels::caxpy(hwork_.data(), amplitude, control_op(axis).data(),
                   static_cast<int>(hwork_.size()));
    solver_.compute(hwork_, w, v);
}

void PulseEvolver::step_from_eigensystem(const double* w, const CMat& v, double duration, CMat& u) {
    for (int i = 0; i < d_; ++i) {
        const double a = -w[i] * duration;
        phases_[i] = cxd{std::cos(a), std::sin(a)};
    }
    kernels::colscale(wwork_.data(), v.data(), phases_.data(), d_);
    if (u.dim() != d_) u = CMat(d_);
    kernels::cmatmul_adj_b(u.data(), wwork_.data(), v.data(), d_);
}

void PulseEvolver::evolve(const ControlSequence& seq, CMat& u) {
    seq.validate();
    if (seq.spec.n_spins != spec_.n_spins || seq.spec.coupling != spec_.coupling)
        throw std::invalid_argument("PulseEvolver: sequence chain spec mismatch");
    if (u.dim() != d_) u = CMat(d_);
    u.set_identity();
    for (int k = 0; k < seq.n_pulses; ++k) {
        decompose_pulse(seq.pulse_axis(k), seq.amplitudes[k], eigw_.data(), vwork_);
        step_from_eigensystem(eigw_.data(), vwork_, seq.pulse_duration, ustep_);
        kernels::cmatmul(acc_.data(), ustep_.data(), u.data(), d_);
        std::swap(acc_, u);
    }
}

double PulseEvolver::fidelity(const ControlSequence& seq, const CMat& target) {
    CMat u(d_);
    evolve(seq, u);
    return fidelity_raw(u, target);
}

void PulseEvolver::product_formula(const SampledField& field, CMat& u) {
    if (!(field.step > 0.0))
        throw std::invalid_argument("product_formula: step must be > 0");
    const double ratio = field.pulse_duration / field.step;
    const double m_t = std::round(ratio);
    if (m_t < 1.0 || std::abs(ratio - m_t) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("product_formula: step does not divide pulse_duration");
    const long steps = std::lround(field.total_time / field.step);

    if (u.dim() != d_) u = CMat(d_);
    u.set_identity();
    const double tau = field.step;
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * tau;
        hwork_ = h0_;
        const double hx = field.hx ? field.hx(t) : 0.0;
        const double hy = field.hy ? field.hy(t) : 0.0;
        if (hx != 0.0)
            kernels::caxpy(hwork_.data(), hx, s1x_.data(), static_cast<int>(hwork_.size()));
        if (hy != 0.0)
            kernels::caxpy(hwork_.data(), hy, s1y_.data(), static_cast<int>(hwork_.size()));
        solver_.compute(hwork_, eigw_.data(), vwork_);
        step_from_eigensystem(eigw_.data(), vwork_, tau, ustep_);
        kernels::cmatmul(acc_.data(), ustep_.data(), u.data(), d_);
        std::swap(acc_, u);
    }
}

UnitaryMatrix propagator_step(const HermitianMatrix& h, double duration) {
    if (duration < 0.0)
        throw std::invalid_argument("propagator_step: negative duration");
    EigenSystem sys = eigendecompose(h);
    const int n = h.dim();
    std::vector<cxd> phases(n);
    for (int i = 0; i < n; ++i) {
        const double a = -sys.eigenvalues[i] * duration;
        phases[i] = cxd{std::cos(a), std::sin(a)};
    }
    CMat w(n), u(n);
    kernels::colscale(w.data(), sys.eigenvectors.data(), phases.data(), n);
    kernels::cmatmul_adj_b(u.data(), w.data(), sys.eigenvectors.data(), n);
    return UnitaryMatrix(std::move(u));
}

UnitaryMatrix evolve_sequence(const ControlSequence& seq) {
    seq.validate();
    PulseEvolver evolver(seq.spec);
    CMat u(seq.spec.dim());
    evolver.evolve(seq, u);
    return UnitaryMatrix(std::move(u));
}

UnitaryMatrix product_formula_evolve(const SampledField& field, const ChainSpec& spec) {
    spec.validate();
    PulseEvolver evolver(spec);
    CMat u(spec.dim());
    evolver.product_formula(field, u);
    return UnitaryMatrix(std::move(u));
}

} // namespace spinctl
