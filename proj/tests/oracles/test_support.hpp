#pragma once

// Shared helpers for tests: random matrices/sequences from the project RNG,
// adaptive quadrature, dense Fourier-transform reference, finite differences.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "spinctl/complex_matrix.hpp"
#include "spinctl/propagation.hpp"
#include "spinctl/rng.hpp"

namespace spinctl::oracles {

inline CMat random_matrix(int n, Xoshiro256pp& rng, double scale = 1.0) {
    CMat m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = cxd{rng.uniform_symmetric(scale), rng.uniform_symmetric(scale)};
    return m;
}

inline CMat random_hermitian(int n, Xoshiro256pp& rng, double scale = 1.0) {
    CMat m = random_matrix(n, rng, scale);
    CMat h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return h;
}

inline ControlSequence random_sequence(int n_spins, ControlMode mode, int n_pulses, double t,
                                       Xoshiro256pp& rng, double halfwidth = 2.0) {
    ControlSequence seq;
    seq.spec.n_spins = n_spins;
    seq.mode = mode;
    seq.n_pulses = n_pulses;
    seq.pulse_duration = t;
    seq.amplitudes.resize(n_pulses);
    for (double& a : seq.amplitudes) a = rng.uniform_symmetric(halfwidth);
    return seq;
}

// Adaptive Simpson quadrature with error control.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 24) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double x0, double x2, double f0, double f1, double f2, double whole, double eps,
            int d) -> double {
        const double x1l = 0.5 * (x0 + 0.5 * (x0 + x2));
        const double xm = 0.5 * (x0 + x2);
        const double x1r = 0.5 * (xm + x2);
        const double fl = f(x1l), fr = f(x1r);
        const double left = (xm - x0) / 6.0 * (f0 + 4.0 * fl + f1);
        const double right = (x2 - xm) / 6.0 * (f1 + 4.0 * fr + f2);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(x0, xm, f0, fl, f1, left, 0.5 * eps, d - 1) +
               rec(xm, x2, f1, fr, f2, right, 0.5 * eps, d - 1);
    };
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, tol, depth);
}

// Midpoint-rule Fourier transform of a densely sampled field over [0, t_f]:
// the reference for the closed-form power spectrum.
inline cxd dense_fourier(const std::function<double(double)>& h, double t_f, double omega,
                         long samples) {
    const double dt = t_f / samples;
    cxd acc{0.0, 0.0};
    for (long j = 0; j < samples; ++j) {
        const double t = (j + 0.5) * dt;
        acc += h(t) * cxd{std::cos(omega * t), -std::sin(omega * t)};
    }
    return acc * dt;
}

inline std::vector<double> central_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
    double step) {
    std::vector<double> g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double keep = x[k];
        x[k] = keep + step;
        const double fp = f(x);
        x[k] = keep - step;
        const double fm = f(x);
        x[k] = keep;
        g[k] = (fp - fm) / (2.0 * step);
    }
    return g;
}

} // namespace spinctl::oracles
