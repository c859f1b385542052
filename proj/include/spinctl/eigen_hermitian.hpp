#pragma once

#include <vector>

#include "spinctl/complex_matrix.hpp"

namespace spinctl {

// Spectral decomposition of a Hermitian matrix: H = V diag(lambda) V^dag,
// eigenvalues ascending, eigenvector columns orthonormal.
struct EigenSystem {
    std::vector<double> eigenvalues;
    CMat eigenvectors;

    // max-abs entry of V diag(lambda) V^dag - H
    double reconstruction_error(const CMat& h) const;
};

// Dense Hermitian eigensolver: unitary Householder reduction to real
// symmetric tridiagonal form followed by implicit-shift QL iteration with
// eigenvector accumulation. Reusable across calls of the same dimension,
// which keeps the pulse-evolution hot loop allocation-free.
class HermitianEigenSolver {
public:
    explicit HermitianEigenSolver(int n);

    // No hermiticity check here; callers on the hot path guarantee it.
    // w must hold n doubles, v is resized to n x n.
    void compute(const CMat& a, double* w, CMat& v);

    int dim() const { return n_; }

private:
    int n_;
    CMat m_;                   // scratch copy, gets destroyed
    std::vector<cxd> hv_;      // householder vector
    std::vector<cxd> hw_;      // rank-2 update workspace
    std::vector<double> diag_, offdiag_;
};

// Validated entry point; throws on non-Hermitian input.
EigenSystem eigendecompose(const HermitianMatrix& h);

} // namespace spinctl
