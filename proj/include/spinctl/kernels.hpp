#pragma once

#include <complex>

// Arithmetic kernels for small dense complex matrices (row-major, n <= ~32).
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant; the active variant is selected at runtime from CPU
// features. The two paths are equivalence-tested against each other.

namespace spinctl::kernels {

using cxd = std::complex<double>;

enum class Backend { Scalar, Avx2 };

Backend best_available();
Backend active_backend();
// Overrides the dispatch (tests, benchmarks). Requesting an unavailable
// backend keeps the current one; returns the backend now active.
Backend set_backend(Backend b);
const char* backend_name(Backend b);

// C = A * B
void cmatmul(cxd* c, const cxd* a, const cxd* b, int n);
// C = A^dag * B
void cmatmul_adj_a(cxd* c, const cxd* a, const cxd* b, int n);
// C = A * B^dag
void cmatmul_adj_b(cxd* c, const cxd* a, const cxd* b, int n);
// sum_i conj(a_i) * b_i
cxd cdotc(const cxd* a, const cxd* b, int len);
// W(i,j) = V(i,j) * p[j]
void colscale(cxd* w, const cxd* v, const cxd* p, int n);
// y += alpha * x
void caxpy(cxd* y, cxd alpha, const cxd* x, int len);

namespace scalar {
void cmatmul(cxd* c, const cxd* a, const cxd* b, int n);
void cmatmul_adj_a(cxd* c, const cxd* a, const cxd* b, int n);
void cmatmul_adj_b(cxd* c, const cxd* a, const cxd* b, int n);
cxd cdotc(const cxd* a, const cxd* b, int len);
void colscale(cxd* w, const cxd* v, const cxd* p, int n);
void caxpy(cxd* y, cxd alpha, const cxd* x, int len);
} // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
void cmatmul(cxd* c, const cxd* a, const cxd* b, int n);
void cmatmul_adj_a(cxd* c, const cxd* a, const cxd* b, int n);
void cmatmul_adj_b(cxd* c, const cxd* a, const cxd* b, int n);
cxd cdotc(const cxd* a, const cxd* b, int len);
void colscale(cxd* w, const cxd* v, const cxd* p, int n);
void caxpy(cxd* y, cxd alpha, const cxd* x, int len);
} // namespace avx2
#endif

} // namespace spinctl::kernels
