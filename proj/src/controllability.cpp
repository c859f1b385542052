#include "spinctl/controllability.hpp"

#include <cmath>
#include <stdexcept>

#include "spinctl/kernels.hpp"

namespace spinctl {

namespace {

constexpr double kRejectRatio = 1e-8;   // new-direction threshold, relative
constexpr double kMemberResidual = 1e-8;

double skewness_error(const CMat& m) {
    const int n = m.dim();
    double r = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            r = std::max(r, std::abs(m(i, j) + std::conj(m(j, i))));
    return r;
}

// Re tr(A^dag B): the real inner product on skew-Hermitian matrices.
double inner(const CMat& a, const CMat& b) {
    return kernels::cdotc(a.data(), b.data(), static_cast<int>(a.size())).real();
}

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns the
// residual norm; normalizes into `m` when accepted.
double project_out(CMat& m, const std::vector<CMat>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const CMat& b : basis) {
            const double c = inner(b, m);
            kernels::caxpy(m.data(), -c, b.data(), static_cast<int>(m.size()));
        }
    }
    return frobenius_norm(m);
}

bool try_append(CMat candidate, std::vector<CMat>& basis, double scale) {
    const double res = project_out(candidate, basis);
    if (res <= kRejectRatio * scale || res == 0.0) return false;
    const double inv = 1.0 / res;
    for (std::size_t i = 0; i < candidate.size(); ++i) candidate.data()[i] *= inv;
    basis.push_back(std::move(candidate));
    return true;
}

CMat commutator(const CMat& a, const CMat& b) {
    const int n = a.dim();
    CMat ab(n), ba(n);
    kernels::cmatmul(ab.data(), a.data(), b.data(), n);
    kernels::cmatmul(ba.data(), b.data(), a.data(), n);
    for (std::size_t i = 0; i < ab.size(); ++i) ab.data()[i] -= ba.data()[i];
    return ab;
}

} // namespace

LieBasis lie_closure(const std::vector<CMat>& generators, int max_dim) {
    if (generators.empty())
        throw std::invalid_argument("lie_closure: no generators");
    const int d = generators.front().dim();
    for (const CMat& g : generators) {
        if (g.dim() != d)
            throw std::invalid_argument("lie_closure: generator dimension mismatch");
        if (skewness_error(g) > 1e-10 * std::max(1.0, max_abs(g)))
            throw std::invalid_argument("lie_closure: generator is not skew-Hermitian");
    }

    LieBasis basis;
    basis.dim_ambient = d;
    for (const CMat& g : generators) {
        const double norm = frobenius_norm(g);
        if (norm == 0.0) continue;
        try_append(g, basis.elements, norm);
        if (basis.dimension() >= max_dim) return basis;
    }

    // Breadth-first sweeps: commutate every fresh element against the whole
    // basis until a sweep produces nothing new.
    std::size_t fresh_begin = 0;
    while (fresh_begin < basis.elements.size() && basis.dimension() < max_dim) {
        const std::size_t fresh_end = basis.elements.size();
        for (std::size_t i = fresh_begin; i < fresh_end && basis.dimension() < max_dim; ++i) {
            for (std::size_t j = 0; j < fresh_end && basis.dimension() < max_dim; ++j) {
                if (j >= fresh_begin && j >= i) break;  // [a,b] = -[b,a], skip mirrored fresh pairs
                CMat c = commutator(basis.elements[i], basis.elements[j]);
                const double norm = frobenius_norm(c);
                if (norm == 0.0) continue;
                try_append(std::move(c), basis.elements, norm);
            }
        }
        fresh_begin = fresh_end;
    }
    return basis;
}

MembershipResult algebra_membership(const CMat& element, const LieBasis& basis) {
    if (element.dim() != basis.dim_ambient)
        throw std::invalid_argument("algebra_membership: dimension mismatch");
    CMat residual = element;
    const double res = project_out(residual, basis.elements);
    return {res < kMemberResidual, res};
}

ControllabilityVerdict full_controllability_check(const ChainSpec& spec, ControlSet controls) {
    spec.validate();
    const int d = spec.dim();
    const int max_dim = d * d;

    auto skew = [&](const CMat& h) {
        CMat m(d);
        kernels::caxpy(m.data(), cxd{0.0, -1.0}, h.data(), static_cast<int>(m.size()));
        return m;
    };

    std::vector<CMat> gens;
    gens.push_back(skew(heisenberg_hamiltonian(spec).mat()));
    gens.push_back(skew(spin_operator(1, Axis::X, spec).mat()));
    if (controls == ControlSet::XY)
        gens.push_back(skew(spin_operator(1, Axis::Y, spec).mat()));

    LieBasis basis = lie_closure(gens, max_dim);

    ControllabilityVerdict verdict;
    verdict.controls = controls;
    verdict.n_spins = spec.n_spins;
    verdict.hilbert_dim = d;
    verdict.algebra_dimension = basis.dimension();
    verdict.fully_controllable =
        basis.dimension() == max_dim - 1 || basis.dimension() == max_dim;
    return verdict;
}

} // namespace spinctl
