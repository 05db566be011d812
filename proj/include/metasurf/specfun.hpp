// metasurf/specfun.hpp
//
// Special functions backing all kernel evaluations: Bessel/Hankel functions
// of real argument, the complex-argument complementary error function (via
// the Faddeeva function), and exponential integrals E_n.

#pragma once

#include "metasurf/types.hpp"

namespace metasurf::specfun {

// Hankel function of the first kind, order 0 or 1, real argument z > 0.
// Refuses z <= 0 (branch cut of the logarithmic singularity).
Complex hankel1(int order, double z);

double bessel_j0(double z);
double bessel_j1(double z);
double bessel_y0(double z);
double bessel_y1(double z);

// Faddeeva function w(z) = exp(-z^2) erfc(-i z) for Im(z) >= 0.
// The lower half-plane is reached through w(-z) = 2 exp(-z^2) - w(z), which
// overflows where the true value does.
Complex faddeeva_w(Complex z);

// Complementary error function of complex argument.
Complex erfc(Complex z);

// Scaled complement erfcx(z) = exp(z^2) erfc(z).
Complex erfcx(Complex z);
double erfcx(double x);

// Exponential integrals E_n(x) for x > 0, n = 0..n_max inclusive.
// E_0(x) = exp(-x)/x; E_1 from the library; the rest by forward recurrence.
void expint_en(double x, int n_max, double* out);

// E_1(x) + log(x), entire in x; stable for small x where E_1 alone has the
// log singularity.  Used by the regularized Green's function split.
double expint_e1_plus_log(double x);

}  // namespace metasurf::specfun
