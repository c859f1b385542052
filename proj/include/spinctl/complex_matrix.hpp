#pragma once

#include <complex>
#include <vector>

namespace spinctl {

using cxd = std::complex<double>;

// Dense complex square matrix, row-major contiguous storage. Hilbert
// dimensions in this project are tiny (d = 2^n_spins <= 16), so everything
// stays L1-resident; the arithmetic kernels live in kernels.hpp.
class CMat {
public:
    CMat() = default;
    explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    static CMat identity(int n);
    static CMat zero(int n) { return CMat(n); }

    int dim() const { return n_; }
    std::size_t size() const { return a_.size(); }

    cxd* data() { return a_.data(); }
    const cxd* data() const { return a_.data(); }

    cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cxd& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    void set_zero();
    void set_identity();

    bool operator==(const CMat& o) const = default;

private:
    int n_ = 0;
    std::vector<cxd> a_;
};

CMat adjoint(const CMat& m);
CMat kron(const CMat& a, const CMat& b);

// tr(A^dag B), the Frobenius inner product
cxd trace_adjoint_product(const CMat& a, const CMat& b);
double frobenius_norm(const CMat& m);

double max_abs(const CMat& m);
double max_abs_diff(const CMat& a, const CMat& b);
// max entry of |A - A^dag|
double hermiticity_error(const CMat& m);
// max entry of |A^dag A - I|
double unitarity_error(const CMat& m);
// max entry of |AB - BA|
double commutator_norm(const CMat& a, const CMat& b);

// Validated wrapper: entries equal their conjugate transpose within 1e-12.
class HermitianMatrix {
public:
    static constexpr double tolerance = 1e-12;

    explicit HermitianMatrix(CMat m);

    const CMat& mat() const { return m_; }
    int dim() const { return m_.dim(); }

private:
    CMat m_;
};

// Validated wrapper: U^dag U within 1e-10 of the identity (max-abs entry).
class UnitaryMatrix {
public:
    static constexpr double tolerance = 1e-10;

    explicit UnitaryMatrix(CMat m);

    const CMat& mat() const { return m_; }
    int dim() const { return m_.dim(); }

private:
    CMat m_;
};

} // namespace spinctl
