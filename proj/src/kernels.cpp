#include "spinctl/kernels.hpp"

#include <atomic>

namespace spinctl::kernels {

namespace scalar {

void cmatmul(cxd* c, const cxd* a, const cxd* b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cxd acc{0.0, 0.0};
            for (int k = 0; k < n; ++k)
                acc += a[i * n + k] * b[k * n + j];
            c[i * n + j] = acc;
        }
    }
}

void cmatmul_adj_a(cxd* c, const cxd* a, const cxd* b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cxd acc{0.0, 0.0};
            for (int k = 0; k < n; ++k)
                acc += std::conj(a[k * n + i]) * b[k * n + j];
            c[i * n + j] = acc;
        }
    }
}

void cmatmul_adj_b(cxd* c, const cxd* a, const cxd* b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cxd acc{0.0, 0.0};
            for (int k = 0; k < n; ++k)
                acc += a[i * n + k] * std::conj(b[j * n + k]);
            c[i * n + j] = acc;
        }
    }
}

cxd cdotc(const cxd* a, const cxd* b, int len) {
    cxd acc{0.0, 0.0};
    for (int i = 0; i < len; ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

void colscale(cxd* w, const cxd* v, const cxd* p, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w[i * n + j] = v[i * n + j] * p[j];
}

void caxpy(cxd* y, cxd alpha, const cxd* x, int len) {
    for (int i = 0; i < len; ++i)
        y[i] += alpha * x[i];
}

} // namespace scalar

namespace {

struct Table {
    void (*cmatmul)(cxd*, const cxd*, const cxd*, int);
    void (*cmatmul_adj_a)(cxd*, const cxd*, const cxd*, int);
    void (*cmatmul_adj_b)(cxd*, const cxd*, const cxd*, int);
    cxd (*cdotc)(const cxd*, const cxd*, int);
    void (*colscale)(cxd*, const cxd*, const cxd*, int);
    void (*caxpy)(cxd*, cxd, const cxd*, int);
};

constexpr Table kScalar{scalar::cmatmul, scalar::cmatmul_adj_a, scalar::cmatmul_adj_b,
                        scalar::cdotc,   scalar::colscale,      scalar::caxpy};

#if defined(__x86_64__)
constexpr Table kAvx2{avx2::cmatmul, avx2::cmatmul_adj_a, avx2::cmatmul_adj_b,
                      avx2::cdotc,   avx2::colscale,      avx2::caxpy};
#endif

std::atomic<const Table*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::Scalar};

const Table* table_for(Backend b) {
#if defined(__x86_64__)
    if (b == Backend::Avx2) return &kAvx2;
#endif
    return &kScalar;
}

const Table& active() {
    const Table* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        Backend b = best_available();
        t = table_for(b);
        g_backend.store(b, std::memory_order_relaxed);
        g_table.store(t, std::memory_order_release);
    }
    return *t;
}

} // namespace

Backend best_available() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::Avx2;
#endif
    return Backend::Scalar;
}

Backend active_backend() {
    active();
    return g_backend.load(std::memory_order_relaxed);
}

Backend set_backend(Backend b) {
#if defined(__x86_64__)
    if (b == Backend::Avx2 && best_available() != Backend::Avx2)
        b = active_backend();
#else
    b = Backend::Scalar;
#endif
    g_backend.store(b, std::memory_order_relaxed);
    g_table.store(table_for(b), std::memory_order_release);
    return b;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Avx2: return "avx2";
        case Backend::Scalar: return "scalar";
    }
    return "scalar";
}

void cmatmul(cxd* c, const cxd* a, const cxd* b, int n) { active().cmatmul(c, a, b, n); }
void cmatmul_adj_a(cxd* c, const cxd* a, const cxd* b, int n) { active().cmatmul_adj_a(c, a, b, n); }
void cmatmul_adj_b(cxd* c, const cxd* a, const cxd* b, int n) { active().cmatmul_adj_b(c, a, b, n); }
cxd cdotc(const cxd* a, const cxd* b, int len) { return active().cdotc(a, b, len); }
void colscale(cxd* w, const cxd* v, const cxd* p, int n) { active().colscale(w, v, p, n); }
void caxpy(cxd* y, cxd alpha, const cxd* x, int len) { active().caxpy(y, alpha, x, len); }

} // namespace spinctl::kernels
