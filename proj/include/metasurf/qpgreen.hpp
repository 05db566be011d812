// metasurf/qpgreen.hpp
//
// Quasi-periodic half-plane Green's function for the Helmholtz operator with
// a Dirichlet ground line, in the spectral-sum and Ewald-accelerated forms,
// together with the free-space kernel and the singular splits the Nystrom
// solver consumes.
//
// Conventions.  The wave vector is (k1, k2) with k2 < 0 and k^2 = k1^2+k2^2.
// gamma(z, x) solves (Laplace_x + k^2) gamma = delta_z in the half-plane
// strip of width `period`, vanishes on x2 = 0, is outgoing in the paper's
// sense (proportional to e^{i k2 x2}), and is quasi-periodic with factor
// e^{-i k1 period} under z1 -> z1 + period and e^{+i k1 period} under
// x1 -> x1 + period.  The propagating mode carried in x is e^{+i k1 x1}.

#pragma once

#include "metasurf/config.hpp"
#include "metasurf/types.hpp"

#include <vector>

namespace metasurf {

struct WaveVec {
    double k = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;  // < 0

    static WaveVec from_scaled(const ScaledProblem& sp) { return {sp.dk, sp.dk1, sp.dk2}; }
    WaveVec conjugate_momentum() const { return {k, -k1, k2}; }
};

struct EwaldParams {
    double split_a = 0.0;  // 0: sqrt(pi)/period
    int images = 0;        // 0: from tolerance
    int modes = 0;
    int q_terms = 0;
};

class QpGreen {
  public:
    QpGreen(WaveVec wave, double period, double ewald_tol = 1e-10,
            double spectral_tol = 1e-10, double wood_band_rel = 1e-2,
            EwaldParams params = {});

    const WaveVec& wave() const { return wave_; }
    double period() const { return period_; }
    double split_a() const { return a_; }
    // Slowest evanescent decay rate min_{n != 0} s_n.
    double s1() const { return s1_; }

    // Ewald evaluation (valid for any z != x, both with positive x2/z2 or on
    // the ground).
    Complex value(Point2 z, Point2 x) const;
    // Plain spectral sum; refuses when |x2 - z2| is too small for the tail
    // bound (the Ewald form is the only permitted evaluator there).
    Complex value_spectral(Point2 z, Point2 x) const;
    // Gradient with respect to the second argument.  omit_source_image drops
    // the central (m = 0) spatial image of the source, which is the
    // principal-value kernel on a straight panel through z.
    Vec2c grad_x(Point2 z, Point2 x, bool omit_source_image = false) const;
    // R_{Gamma,+}(z, x) = gamma(z, x) - log|x-z|/(2 pi); finite at x == z,
    // evaluated by explicit cancellation of the central image.
    Complex regular(Point2 z, Point2 x) const;

    // Propagating-mode coefficients.  As z2 -> infinity,
    //   gamma(z, x) = e^{-i k1 z1} e^{i k2 z2} far_coeff_z(x) + O(e^{-s1 z2});
    // as x2 -> infinity,
    //   gamma(z, x) = e^{+i k1 x1} e^{i k2 x2} far_coeff_x(z) + O(e^{-s1 x2}).
    Complex far_coeff_z(Point2 x) const;
    Vec2c far_coeff_z_grad(Point2 x) const;
    Complex far_coeff_x(Point2 z) const;

    // Analytic coefficient returned by the far-field form of the n = 0 mode,
    // with the evanescent-tail bound at the given separation; refuses when
    // the bound exceeds the requested tolerance.
    Complex value_far(Point2 z, Point2 x, double tail_tol) const;

    int spectral_modes_needed(double dy_min) const;

  private:
    struct ModeTerm {
        double beta;       // k1 + 2 pi n / period
        Complex s;         // sqrt(beta^2 - k^2), +i branch when propagating
        bool propagating;
    };

    Complex no_ground_value(double dx1, double dy) const;
    Complex no_ground_regular_m0(double dx1, double dy) const;
    Vec2c no_ground_grad(double dx1, double dy, bool omit_m0) const;

    WaveVec wave_;
    double period_;
    double a_;
    double tol_;
    double spectral_tol_;
    int images_;
    int q_terms_;
    double s1_;
    std::vector<ModeTerm> modes_;
    std::vector<double> q_coeff_;  // (k/(2a))^{2q} / q!
};

namespace freespace {

// gamma^k(z, x) = -(i/4) H0^(1)(k |z - x|), the paper's free-space kernel.
Complex gamma(double k, Point2 z, Point2 x);
// Gradient with respect to x.
Vec2c grad_x(double k, Point2 z, Point2 x);
// gamma^k - log r / (2 pi) as a function of r >= 0 (finite limit at r = 0).
Complex regular(double k, double r);

}  // namespace freespace

}  // namespace metasurf
