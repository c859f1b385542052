#pragma once

// Independent eigensolver oracle for tests: cyclic complex Jacobi rotations.
// Deliberately shares no code path with HermitianEigenSolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spinctl/complex_matrix.hpp"

namespace spinctl::oracles {

struct JacobiResult {
    std::vector<double> eigenvalues;  // ascending
    CMat eigenvectors;                // columns
};

inline JacobiResult jacobi_eigh(const CMat& input) {
    const int n = input.dim();
    CMat a = input;
    CMat v = CMat::identity(n);

    auto offdiag = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return s;
    };

    for (int sweep = 0; sweep < 100 && offdiag() > 1e-30; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cxd g = a(p, q);
                const double ag = std::abs(g);
                if (ag == 0.0) continue;
                const cxd w = g / ag;  // phase so the 2x2 block turns real
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * ag);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(tau, 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J: columns p,q; J(p,p)=c, J(p,q)=s, J(q,p)=-s*conj(w), J(q,q)=c*conj(w)
                for (int i = 0; i < n; ++i) {
                    const cxd aip = a(i, p);
                    const cxd aiq = a(i, q) * std::conj(w);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const cxd apj = a(p, j);
                    const cxd aqj = a(q, j) * w;
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const cxd vip = v(i, p);
                    const cxd viq = v(i, q) * std::conj(w);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    JacobiResult res;
    res.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) res.eigenvalues[i] = a(i, i).real();
    res.eigenvectors = v;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return res.eigenvalues[x] < res.eigenvalues[y]; });
    JacobiResult sorted;
    sorted.eigenvalues.resize(n);
    sorted.eigenvectors = CMat(n);
    for (int c = 0; c < n; ++c) {
        sorted.eigenvalues[c] = res.eigenvalues[order[c]];
        for (int r = 0; r < n; ++r) sorted.eigenvectors(r, c) = res.eigenvectors(r, order[c]);
    }
    return sorted;
}

} // namespace spinctl::oracles
