#pragma once

namespace spinctl::special {

// Sine integral Si(x) = \int_0^x sin(t)/t dt. Odd; Si(x) -> pi/2 as
// x -> +inf. Maclaurin series for small |x|, continued fraction for the
// exponential integral E1(ix) otherwise; absolute accuracy ~1e-15.
double si(double x);

// Standard error function (thin wrapper over the C library implementation,
// kept here so both closed-form filter kernels live behind one interface).
double erf(double x);

} // namespace spinctl::special
