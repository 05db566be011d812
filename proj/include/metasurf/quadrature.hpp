// metasurf/quadrature.hpp
//
// Singular-quadrature building blocks for the Nystrom solver: the
// integration-by-parts treatment of log-kernel integrals, the arctan
// substitution for Poisson-kernel integrals, and plain Gauss rules.

#pragma once

#include <functional>
#include <vector>

#include "metasurf/types.hpp"

namespace metasurf::quadrature {

// Weights L_j such that sum_j L_j phi(s_j) ~ Int_0^L phi(s) log|s - tau| ds,
// where s_j = (j + 1/2) L / n are midpoint nodes of n uniform panels and tau
// lies strictly inside (0, L).  Built from the identity
//   Int phi log|u| du = [log|u| Phi(u)] - Int Phi(u)/u du,  Phi(u) = Int_0^u phi,
// with local quadratic models of phi supplying the antiderivative.
std::vector<double> log_kernel_weights(double length, int n, double tau);

// Int phi(t) log|t| dt over (-eps1, eps2) from midpoint samples of phi on n
// uniform panels.  Requires n >= 4.  Error O(n^-2) (verified against oracles).
double log_kernel_integral(double eps1, double eps2, const std::vector<double>& phi);
Complex log_kernel_integral(double eps1, double eps2, const std::vector<Complex>& phi);

// Int_0^T phi(t) (1/m) / (t^2 + 1/m^2) dt evaluated through t = tan(u)/m,
// which condenses nodes near t = 0.  phi must be evaluable anywhere in (0,T).
double poisson_kernel_integral(const std::function<double(double)>& phi, double T,
                               double m, int n_nodes = 64);

// Nodes/weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Gauss-Chebyshev points for Int_{-eps}^{eps} g(t)/(pi sqrt(eps^2-t^2)) dt
// ~ (1/n) sum g(t_j).
std::vector<double> chebyshev_nodes(double eps, int n);

}  // namespace metasurf::quadrature
