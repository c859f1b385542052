#include "spinctl/eigen_hermitian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinctl/kernels.hpp"

namespace spinctl {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

double EigenSystem::reconstruction_error(const CMat& h) const {
    const int n = h.dim();
    CMat w(n), r(n);
    std::vector<cxd> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = eigenvalues[i];
    kernels::colscale(w.data(), eigenvectors.data(), lam.data(), n);
    kernels::cmatmul_adj_b(r.data(), w.data(), eigenvectors.data(), n);
    return max_abs_diff(r, h);
}

HermitianEigenSolver::HermitianEigenSolver(int n)
    : n_(n), m_(n), hv_(n), hw_(n), diag_(n), offdiag_(n) {
    if (n < 1) throw std::invalid_argument("HermitianEigenSolver: dimension must be >= 1");
}

void HermitianEigenSolver::compute(const CMat& a, double* w, CMat& v) {
    const int n = n_;
    if (a.dim() != n) throw std::invalid_argument("HermitianEigenSolver: dimension mismatch");
    if (v.dim() != n) v = CMat(n);
    v.set_identity();

    if (n == 1) {
        w[0] = a(0, 0).real();
        return;
    }

    m_ = a;

    // Householder similarity transforms: zero column entries below the
    // subdiagonal, accumulating the product of reflectors into v.
    for (int k = 0; k + 2 < n; ++k) {
        const int lo = k + 1, len = n - lo;

        double tail = 0.0;
        for (int i = lo + 1; i < n; ++i) tail += std::norm(m_(i, k));
        if (tail == 0.0) continue;

        double normsq = tail + std::norm(m_(lo, k));
        const double norm = std::sqrt(normsq);
        const cxd x0 = m_(lo, k);
        const double ax0 = std::abs(x0);
        const cxd phase = ax0 > 0.0 ? x0 / ax0 : cxd{1.0, 0.0};
        const cxd alpha = -phase * norm;

        hv_[0] = x0 - alpha;
        for (int i = 1; i < len; ++i) hv_[i] = m_(lo + i, k);
        double vnormsq = 0.0;
        for (int i = 0; i < len; ++i) vnormsq += std::norm(hv_[i]);
        if (vnormsq == 0.0) continue;
        const double beta = 2.0 / vnormsq;

        // p = beta * B * hv over the trailing block B = m_(lo.., lo..)
        cxd vtp{0.0, 0.0};
        for (int i = 0; i < len; ++i) {
            cxd acc{0.0, 0.0};
            for (int j = 0; j < len; ++j)
                acc += m_(lo + i, lo + j) * hv_[j];
            hw_[i] = beta * acc;
            vtp += std::conj(hv_[i]) * hw_[i];
        }
        const double kappa = 0.5 * beta * vtp.real();
        for (int i = 0; i < len; ++i) hw_[i] -= kappa * hv_[i];

        // B -= hv hw^dag + hw hv^dag
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j)
                m_(lo + i, lo + j) -= hv_[i] * std::conj(hw_[j]) + hw_[i] * std::conj(hv_[j]);

        m_(lo, k) = alpha;
        m_(k, lo) = std::conj(alpha);
        for (int i = lo + 1; i < n; ++i) {
            m_(i, k) = 0.0;
            m_(k, i) = 0.0;
        }

        // v <- v * (I - beta hv hv^dag) on columns lo..n-1
        for (int r = 0; r < n; ++r) {
            cxd s{0.0, 0.0};
            for (int j = 0; j < len; ++j) s += v(r, lo + j) * hv_[j];
            s *= beta;
            for (int j = 0; j < len; ++j) v(r, lo + j) -= s * std::conj(hv_[j]);
        }
    }

    // Phase-twist the subdiagonal real; fold the phases into v's columns.
    cxd ph{1.0, 0.0};
    diag_[0] = m_(0, 0).real();
    for (int j = 0; j + 1 < n; ++j) {
        const cxd t = m_(j + 1, j);
        const double at = std::abs(t);
        offdiag_[j] = at;
        ph = at > 0.0 ? cxd(ph * t / at) : ph;
        diag_[j + 1] = m_(j + 1, j + 1).real();
        for (int r = 0; r < n; ++r) v(r, j + 1) *= ph;
    }
    offdiag_[n - 1] = 0.0;

    // Implicit-shift QL with eigenvector accumulation.
    double* d = diag_.data();
    double* e = offdiag_.data();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 64)
                    throw std::runtime_error("HermitianEigenSolver: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int row = 0; row < n; ++row) {
                        const cxd fv = v(row, i + 1);
                        v(row, i + 1) = s * v(row, i) + c * fv;
                        v(row, i) = c * v(row, i) - s * fv;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // Ascending order, columns permuted alongside.
    for (int i = 0; i < n; ++i) w[i] = d[i];
    for (int i = 0; i + 1 < n; ++i) {
        int kmin = i;
        for (int j = i + 1; j < n; ++j)
            if (w[j] < w[kmin]) kmin = j;
        if (kmin != i) {
            std::swap(w[i], w[kmin]);
            for (int row = 0; row < n; ++row) {
                const cxd tmp = v(row, i);
                v(row, i) = v(row, kmin);
                v(row, kmin) = tmp;
            }
        }
    }
}

EigenSystem eigendecompose(const HermitianMatrix& h) {
    const int n = h.dim();
    EigenSystem sys;
    sys.eigenvalues.resize(n);
    HermitianEigenSolver solver(n);
    solver.compute(h.mat(), sys.eigenvalues.data(), sys.eigenvectors);
    if (!(sys.reconstruction_error(h.mat()) < 1e-10))
        throw std::runtime_error("eigendecompose: reconstruction tolerance exceeded");
    return sys;
}

} // namespace spinctl
