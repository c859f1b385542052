#include "spinctl/chain.hpp"

#include <stdexcept>
#include <string>

#include "spinctl/kernels.hpp"

namespace spinctl {

namespace {

CMat pauli(Axis axis) {
    CMat m(2);
    switch (axis) {
        case Axis::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case Axis::Y:
            m(0, 1) = cxd{0.0, -1.0};
            m(1, 0) = cxd{0.0, 1.0};
            break;
        case Axis::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

CMat embed_last(const CMat& gate, int n_spins, int gate_spins) {
    CMat m = CMat::identity(1 << (n_spins - gate_spins));
    return kron(m, gate);
}

} // namespace

void ChainSpec::validate() const {
    if (n_spins < 1)
        throw std::invalid_argument("ChainSpec: n_spins must be >= 1");
    if (!(coupling > 0.0))
        throw std::invalid_argument("ChainSpec: coupling must be > 0");
}

HermitianMatrix spin_operator(int site, Axis axis, const ChainSpec& spec) {
    spec.validate();
    if (site < 1 || site > spec.n_spins)
        throw std::invalid_argument("spin_operator: site " + std::to_string(site) +
                                    " out of range 1.." + std::to_string(spec.n_spins));
    CMat m(1);
    m(0, 0) = 1.0;
    const CMat half_sigma = [&] {
        CMat p = pauli(axis);
        for (std::size_t i = 0; i < p.size(); ++i) p.data()[i] *= 0.5;
        return p;
    }();
    for (int s = 1; s <= spec.n_spins; ++s)
        m = kron(m, s == site ? half_sigma : CMat::identity(2));
    return HermitianMatrix(std::move(m));
}

HermitianMatrix heisenberg_hamiltonian(const ChainSpec& spec) {
    spec.validate();
    const int d = spec.dim();
    CMat h(d);
    for (int i = 1; i < spec.n_spins; ++i) {
        for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
            const CMat a = spin_operator(i, ax, spec).mat();
            const CMat b = spin_operator(i + 1, ax, spec).mat();
            CMat prod(d);
            kernels::cmatmul(prod.data(), a.data(), b.data(), d);
            kernels::caxpy(h.data(), spec.coupling, prod.data(), static_cast<int>(h.size()));
        }
    }
    return HermitianMatrix(std::move(h));
}

HermitianMatrix control_hamiltonian(ControlAxis axis, double amplitude, const ChainSpec& spec) {
    spec.validate();
    const Axis ax = axis == ControlAxis::X ? Axis::X : Axis::Y;
    CMat m = spin_operator(1, ax, spec).mat();
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] *= amplitude;
    return HermitianMatrix(std::move(m));
}

UnitaryMatrix gate_target(const GateTarget& target) {
    const int n = target.n_spins;
    if (n < 1) throw std::invalid_argument("gate_target: n_spins must be >= 1");
    switch (target.kind) {
        case GateTarget::Kind::XEnd:
            return UnitaryMatrix(embed_last(pauli(Axis::X), n, 1));
        case GateTarget::Kind::CnotEnd: {
            if (n < 2)
                throw std::invalid_argument("gate_target: CNOT_end needs n_spins >= 2");
            CMat cnot(4);
            cnot(0, 0) = 1.0;
            cnot(1, 1) = 1.0;
            cnot(2, 3) = 1.0;
            cnot(3, 2) = 1.0;
            return UnitaryMatrix(embed_last(cnot, n, 2));
        }
        case GateTarget::Kind::SqrtSwapEnd: {
            if (n < 2)
                throw std::invalid_argument("gate_target: SQRT_SWAP_end needs n_spins >= 2");
            CMat g(4);
            g(0, 0) = 1.0;
            g(3, 3) = 1.0;
            g(1, 1) = cxd{0.5, 0.5};
            g(1, 2) = cxd{0.5, -0.5};
            g(2, 1) = cxd{0.5, -0.5};
            g(2, 2) = cxd{0.5, 0.5};
            return UnitaryMatrix(embed_last(g, n, 2));
        }
        case GateTarget::Kind::Custom: {
            if (!target.custom)
                throw std::invalid_argument("gate_target: custom target without matrix");
            if (target.custom->dim() != (1 << n))
                throw std::invalid_argument("gate_target: custom matrix dimension mismatch");
            return UnitaryMatrix(*target.custom);
        }
    }
    throw std::invalid_argument("gate_target: unknown kind");
}

} // namespace spinctl
