#include "spinctl/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinctl/kernels.hpp"

namespace spinctl {

CMat CMat::identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void CMat::set_zero() {
    std::fill(a_.begin(), a_.end(), cxd{0.0, 0.0});
}

void CMat::set_identity() {
    set_zero();
    for (int i = 0; i < n_; ++i) (*this)(i, i) = 1.0;
}

CMat adjoint(const CMat& m) {
    const int n = m.dim();
    CMat r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = std::conj(m(j, i));
    return r;
}

CMat kron(const CMat& a, const CMat& b) {
    const int na = a.dim(), nb = b.dim();
    CMat r(na * nb);
    for (int ia = 0; ia < na; ++ia)
        for (int ja = 0; ja < na; ++ja) {
            const cxd f = a(ia, ja);
            if (f == cxd{0.0, 0.0}) continue;
            for (int ib = 0; ib < nb; ++ib)
                for (int jb = 0; jb < nb; ++jb)
                    r(ia * nb + ib, ja * nb + jb) = f * b(ib, jb);
        }
    return r;
}

cxd trace_adjoint_product(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("trace_adjoint_product: dimension mismatch");
    return kernels::cdotc(a.data(), b.data(), static_cast<int>(a.size()));
}

double frobenius_norm(const CMat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        s += std::norm(m.data()[i]);
    return std::sqrt(s);
}

double max_abs(const CMat& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        r = std::max(r, std::abs(m.data()[i]));
    return r;
}

double max_abs_diff(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        r = std::max(r, std::abs(a.data()[i] - b.data()[i]));
    return r;
}

double hermiticity_error(const CMat& m) {
    const int n = m.dim();
    double r = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
    return r;
}

double unitarity_error(const CMat& m) {
    const int n = m.dim();
    CMat g(n);
    kernels::cmatmul_adj_a(g.data(), m.data(), m.data(), n);
    for (int i = 0; i < n; ++i) g(i, i) -= 1.0;
    return max_abs(g);
}

double commutator_norm(const CMat& a, const CMat& b) {
    const int n = a.dim();
    if (b.dim() != n)
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    CMat ab(n), ba(n);
    kernels::cmatmul(ab.data(), a.data(), b.data(), n);
    kernels::cmatmul(ba.data(), b.data(), a.data(), n);
    return max_abs_diff(ab, ba);
}

HermitianMatrix::HermitianMatrix(CMat m) : m_(std::move(m)) {
    if (m_.dim() < 1)
        throw std::invalid_argument("HermitianMatrix: empty matrix");
    const double err = hermiticity_error(m_);
    if (!(err < tolerance))
        throw std::invalid_argument("HermitianMatrix: hermiticity error " + std::to_string(err));
}

UnitaryMatrix::UnitaryMatrix(CMat m) : m_(std::move(m)) {
    if (m_.dim() < 1)
        throw std::invalid_argument("UnitaryMatrix: empty matrix");
    const double err = unitarity_error(m_);
    if (!(err < tolerance))
        throw std::invalid_argument("UnitaryMatrix: unitarity error " + std::to_string(err));
}

} // namespace spinctl
