#include "spinctl/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace spinctl::special {

namespace {

constexpr double kSeriesCutoff = 4.0;

double si_series(double x) {
    // sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!) -- alternating, mild cancellation
    // for |x| <= 4 (largest term ~4 against a result ~1.76).
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 64; ++k) {
        const double two_k = 2.0 * k;
        term *= -x2 / (two_k * (two_k + 1.0));
        sum += term / (two_k + 1.0);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// E1(ix) by the modified Lentz continued fraction,
// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))).
// Converges quickly for x > ~2; we use it beyond the series cutoff.
std::complex<double> e1_ix(double x) {
    const std::complex<double> z{0.0, x};
    const double tiny = 1e-300;
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i <= 300; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < std::numeric_limits<double>::epsilon()) break;
    }
    return h * std::complex<double>{std::cos(x), -std::sin(x)};
}

} // namespace

double si(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    double r;
    if (ax <= kSeriesCutoff) {
        r = si_series(ax);
    } else if (std::isinf(ax)) {
        r = std::numbers::pi / 2.0;
    } else {
        // Si(x) = pi/2 + Im E1(ix) for x > 0
        r = std::numbers::pi / 2.0 + e1_ix(ax).imag();
    }
    return x < 0.0 ? -r : r;
}

double erf(double x) {
    return std::erf(x);
}

} // namespace spinctl::special
