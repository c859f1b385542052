#pragma once

#include <vector>

#include "spinctl/chain.hpp"
#include "spinctl/complex_matrix.hpp"

namespace spinctl {

// Orthonormal basis (real inner product Re tr(A^dag B)) of a real Lie
// algebra of skew-Hermitian d x d matrices.
struct LieBasis {
    int dim_ambient = 0;  // d
    std::vector<CMat> elements;

    int dimension() const { return static_cast<int>(elements.size()); }
};

// Smallest real Lie algebra containing the generators, built by repeated
// commutators with Gram-Schmidt rejection. A candidate direction is new iff
// its residual after projection exceeds 1e-8 of its own norm. Stops when a
// full sweep adds nothing or the dimension reaches max_dim.
LieBasis lie_closure(const std::vector<CMat>& generators, int max_dim);

struct MembershipResult {
    bool member = false;
    double residual_norm = 0.0;
};

// Projects onto span(basis); member iff the residual Frobenius norm < 1e-8.
MembershipResult algebra_membership(const CMat& element, const LieBasis& basis);

enum class ControlSet { XY, XOnly };

struct ControllabilityVerdict {
    ControlSet controls = ControlSet::XY;
    int n_spins = 0;
    int hilbert_dim = 0;
    int algebra_dimension = 0;
    bool fully_controllable = false;
};

// Closure of {-iH_0, -iS_1x[, -iS_1y]}. The XY set is fully controllable
// iff the closure reaches su(d) (dimension d^2 - 1; d^2 if generators carry
// trace). XOnly reports the subalgebra dimension.
ControllabilityVerdict full_controllability_check(const ChainSpec& spec, ControlSet controls);

} // namespace spinctl
