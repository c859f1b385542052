// AVX2+FMA kernel variants. Compiled for the generic baseline; every function
// carries a target attribute, so this TU is safe to build without -mavx2 and
// the dispatcher in kernels.cpp only selects these when the CPU supports them.

#if defined(__x86_64__)

#include "spinctl/kernels.hpp"

#include <immintrin.h>

#define SPINCTL_AVX2 __attribute__((target("avx2,fma")))

namespace spinctl::kernels::avx2 {

namespace {

inline const double* re_ptr(const cxd* p) { return reinterpret_cast<const double*>(p); }
inline double* re_ptr(cxd* p) { return reinterpret_cast<double*>(p); }

// 2 complex doubles per __m256d lane pair: [re0, im0, re1, im1]
SPINCTL_AVX2 inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

SPINCTL_AVX2 inline cxd dotc_rows(const cxd* a, const cxd* b, int len) {
    // sum conj(a_i) * b_i
    __m256d acc_d = _mm256_setzero_pd(); // a (.) b      -> re parts
    __m256d acc_s = _mm256_setzero_pd(); // swap(a) (.) b -> im parts
    int i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d va = _mm256_loadu_pd(re_ptr(a + i));
        __m256d vb = _mm256_loadu_pd(re_ptr(b + i));
        acc_d = _mm256_fmadd_pd(va, vb, acc_d);
        acc_s = _mm256_fmadd_pd(swap_pairs(va), vb, acc_s);
    }
    alignas(32) double d[4], s[4];
    _mm256_store_pd(d, acc_d);
    _mm256_store_pd(s, acc_s);
    double re = d[0] + d[1] + d[2] + d[3];
    double im = (s[1] - s[0]) + (s[3] - s[2]);
    for (; i < len; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

} // namespace

SPINCTL_AVX2 void cmatmul(cxd* c, const cxd* a, const cxd* b, int n) {
    const int nv = n & ~1;
    for (int i = 0; i < n; ++i) {
        const cxd* arow = a + static_cast<std::size_t>(i) * n;
        cxd* crow = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < nv; j += 2) {
            __m256d acc = _mm256_setzero_pd();
            for (int k = 0; k < n; ++k) {
                const double* ak = re_ptr(arow + k);
                __m256d ar = _mm256_broadcast_sd(ak);
                __m256d ai = _mm256_broadcast_sd(ak + 1);
                __m256d vb = _mm256_loadu_pd(re_ptr(b + static_cast<std::size_t>(k) * n + j));
                __m256d t = _mm256_mul_pd(ai, swap_pairs(vb));
                acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, vb, t));
            }
            _mm256_storeu_pd(re_ptr(crow + j), acc);
        }
        for (int j = nv; j < n; ++j) {
            cxd acc{0.0, 0.0};
            for (int k = 0; k < n; ++k)
                acc += arow[k] * b[static_cast<std::size_t>(k) * n + j];
            crow[j] = acc;
        }
    }
}

SPINCTL_AVX2 void cmatmul_adj_a(cxd* c, const cxd* a, const cxd* b, int n) {
    const int nv = n & ~1;
    for (int i = 0; i < n; ++i) {
        cxd* crow = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < nv; j += 2) {
            __m256d acc = _mm256_setzero_pd();
            for (int k = 0; k < n; ++k) {
                const double* ak = re_ptr(a + static_cast<std::size_t>(k) * n + i);
                __m256d ar = _mm256_broadcast_sd(ak);
                __m256d ai = _mm256_broadcast_sd(ak + 1);
                __m256d vb = _mm256_loadu_pd(re_ptr(b + static_cast<std::size_t>(k) * n + j));
                __m256d t = _mm256_mul_pd(ai, swap_pairs(vb));
                acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(ar, vb, t));
            }
            _mm256_storeu_pd(re_ptr(crow + j), acc);
        }
        for (int j = nv; j < n; ++j) {
            cxd acc{0.0, 0.0};
            for (int k = 0; k < n; ++k)
                acc += std::conj(a[static_cast<std::size_t>(k) * n + i]) * b[static_cast<std::size_t>(k) * n + j];
            crow[j] = acc;
        }
    }
}

SPINCTL_AVX2 void cmatmul_adj_b(cxd* c, const cxd* a, const cxd* b, int n) {
    for (int i = 0; i < n; ++i) {
        const cxd* arow = a + static_cast<std::size_t>(i) * n;
        cxd* crow = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            // C(i,j) = sum_k A(i,k) conj(B(j,k)) = conj( sum_k conj(A(i,k)) B(j,k) )
            crow[j] = std::conj(dotc_rows(arow, b + static_cast<std::size_t>(j) * n, n));
        }
    }
}

SPINCTL_AVX2 cxd cdotc(const cxd* a, const cxd* b, int len) {
    return dotc_rows(a, b, len);
}

SPINCTL_AVX2 void colscale(cxd* w, const cxd* v, const cxd* p, int n) {
    const int nv = n & ~1;
    for (int i = 0; i < n; ++i) {
        const cxd* vrow = v + static_cast<std::size_t>(i) * n;
        cxd* wrow = w + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < nv; j += 2) {
            __m256d vp = _mm256_loadu_pd(re_ptr(p + j));
            __m256d pr = _mm256_movedup_pd(vp);
            __m256d pi = _mm256_permute_pd(vp, 0xF);
            __m256d vv = _mm256_loadu_pd(re_ptr(vrow + j));
            __m256d t = _mm256_mul_pd(pi, swap_pairs(vv));
            _mm256_storeu_pd(re_ptr(wrow + j), _mm256_fmaddsub_pd(pr, vv, t));
        }
        for (int j = nv; j < n; ++j)
            wrow[j] = vrow[j] * p[j];
    }
}

SPINCTL_AVX2 void caxpy(cxd* y, cxd alpha, const cxd* x, int len) {
    __m256d ar = _mm256_set1_pd(alpha.real());
    __m256d ai = _mm256_set1_pd(alpha.imag());
    int i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d vx = _mm256_loadu_pd(re_ptr(x + i));
        __m256d vy = _mm256_loadu_pd(re_ptr(y + i));
        __m256d t = _mm256_mul_pd(ai, swap_pairs(vx));
        vy = _mm256_add_pd(vy, _mm256_fmaddsub_pd(ar, vx, t));
        _mm256_storeu_pd(re_ptr(y + i), vy);
    }
    for (; i < len; ++i)
        y[i] += alpha * x[i];
}

} // namespace spinctl::kernels::avx2

#endif // __x86_64__
