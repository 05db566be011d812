// qpgreen.cpp
//
// Ewald split: with u0 = 1/(4 a^2) and r_m the distance to the m-th periodic
// image of the source,
//   G = -(1/4 pi) sum_m e^{i k1 m d} sum_q (k/2a)^{2q}/q! E_{q+1}(a^2 r_m^2)
//       -(1/4 d) sum_n e^{i beta_n dx} B_n(dy)/s_n,
//   B_n(dy) = e^{-s_n dy} erfc(s_n/2a - a dy) + e^{s_n dy} erfc(s_n/2a + a dy),
// and the half-plane kernel is the source/ground-image difference of G.
// The propagating mode (s_0 = -i k2) enters B_0 through the complex erfc.

#include "metasurf/qpgreen.hpp"

#include <algorithm>
#include <cmath>

#include "metasurf/specfun.hpp"

namespace metasurf {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// e^{sig * s * dy} erfc(s/(2a) + sig * a * dy) for real s > 0, overflow-free.
double scaled_erfc_term(double s, double a, double dy, double sig) {
    const double t = 0.5 * s / a + sig * a * dy;
    const double e0 = 0.25 * s * s / (a * a) + a * a * dy * dy;
    if (t >= 0.0) return std::exp(-e0) * specfun::erfcx(t);
    return 2.0 * std::exp(sig * s * dy) - std::exp(-e0) * specfun::erfcx(-t);
}

}  // namespace

QpGreen::QpGreen(WaveVec wave, double period, double ewald_tol, double spectral_tol,
                 double wood_band_rel, EwaldParams params)
    : wave_(wave), period_(period), tol_(ewald_tol), spectral_tol_(spectral_tol) {
    if (!(period > 0.0))
        fail(ErrorKind::invalid_argument, "period > 0", "period must be positive");
    if (!(wave.k > 0.0) || !(wave.k2 < 0.0))
        fail(ErrorKind::invalid_argument, "k > 0 and k2 < 0",
             "wave vector must have k > 0 and downward k2");

    // Single-propagating-mode condition and Wood-anomaly band.
    double inf_beta = 1e300;
    for (int n = -4; n <= 4; ++n) {
        if (n == 0) continue;
        inf_beta = std::min(inf_beta, std::abs(wave.k1 + kTwoPi * n / period));
    }
    if (!(wave.k < inf_beta))
        fail(ErrorKind::validation, "(delta*k)^2 < inf_{n!=0} |2*pi*n - delta*k1|^2",
             "wavenumber admits more than one propagating mode; this regime is not supported");
    if (std::abs(wave.k - inf_beta) < wood_band_rel * wave.k)
        fail(ErrorKind::numerical, "outside Wood-anomaly band",
             "wavenumber lies in the empty-resonance (Wood anomaly) band where the "
             "lattice sum is unstable");

    a_ = params.split_a > 0.0 ? params.split_a : std::sqrt(M_PI) / period;

    const double log_tol = std::log(1.0 / tol_);
    if (params.images > 0) {
        images_ = params.images;
    } else {
        const double reach = std::sqrt(log_tol) / a_ + 0.5 * period;
        images_ = std::max(2, static_cast<int>(std::ceil(reach / period)) + 1);
    }

    // q-series: coefficients (k/2a)^{2q}/q!, truncated once the tail cannot
    // matter even against E_{q+1}(0) = 1/q.
    const double ratio = std::pow(0.5 * wave.k / a_, 2);
    double coeff = 1.0;
    q_coeff_.push_back(coeff);
    for (int q = 1; q < 80; ++q) {
        coeff *= ratio / q;
        q_coeff_.push_back(coeff);
        if (coeff / q < tol_ * 1e-3 && q >= 4) break;
    }
    if (params.q_terms > 0 && static_cast<int>(q_coeff_.size()) > params.q_terms)
        q_coeff_.resize(params.q_terms);
    q_terms_ = static_cast<int>(q_coeff_.size());

    // Spectral modes of the Ewald sum: cut when exp(-(s/2a)^2) is below tol.
    const double s_cut = 2.0 * a_ * std::sqrt(log_tol) + 2.0;
    const int n_span = params.modes > 0
                           ? params.modes
                           : static_cast<int>(std::ceil((s_cut + std::abs(wave.k1) + wave.k) *
                                                        period / kTwoPi)) +
                                 1;
    s1_ = 1e300;
    for (int n = -n_span; n <= n_span; ++n) {
        ModeTerm term;
        term.beta = wave.k1 + kTwoPi * n / period;
        const double b2k2 = term.beta * term.beta - wave.k * wave.k;
        term.propagating = b2k2 < 0.0;
        term.s = term.propagating ? Complex(0.0, std::sqrt(-b2k2)) : Complex(std::sqrt(b2k2), 0.0);
        if (n != 0) s1_ = std::min(s1_, term.s.real());
        modes_.push_back(term);
    }
}

Complex QpGreen::no_ground_value(double dx1, double dy) const {
    Complex spatial = 0.0;
    const double ady2 = a_ * a_ * dy * dy;
    if (ady2 < 650.0) {
        std::vector<double> en(q_terms_ + 1);
        for (int m = -images_; m <= images_; ++m) {
            const double dxm = dx1 - m * period_;
            const double u = a_ * a_ * dxm * dxm + ady2;
            if (u > 650.0) continue;
            specfun::expint_en(u, q_terms_, en.data());
            double qsum = 0.0;
            for (int q = 0; q < q_terms_; ++q) qsum += q_coeff_[q] * en[q + 1];
            spatial += std::polar(1.0, wave_.k1 * m * period_) * qsum;
        }
    }
    Complex spectral = 0.0;
    for (const ModeTerm& mt : modes_) {
        Complex bracket;
        if (mt.propagating) {
            const Complex t_minus = 0.5 * mt.s / a_ - a_ * dy;
            const Complex t_plus = 0.5 * mt.s / a_ + a_ * dy;
            bracket = std::exp(-mt.s * dy) * specfun::erfc(t_minus) +
                      std::exp(mt.s * dy) * specfun::erfc(t_plus);
        } else {
            const double s = mt.s.real();
            bracket = scaled_erfc_term(s, a_, dy, -1.0) + scaled_erfc_term(s, a_, dy, 1.0);
        }
        spectral += std::polar(1.0, mt.beta * dx1) * bracket / mt.s;
    }
    return -spatial / (4.0 * M_PI) - spectral / (4.0 * period_);
}

Complex QpGreen::no_ground_regular_m0(double dx1, double dy) const {
    // As no_ground_value but with the m = 0, q = 0 term replaced by its
    // log-free part: -(1/4pi) E1tilde(u) + log(a)/(2pi), where
    // E1tilde = E1 + log is entire.  Subtracting log r/(2 pi) elsewhere is
    // then unnecessary; valid at u = 0.
    Complex spatial = 0.0;
    std::vector<double> en(q_terms_ + 1);
    for (int m = -images_; m <= images_; ++m) {
        const double dxm = dx1 - m * period_;
        const double u = a_ * a_ * (dxm * dxm + dy * dy);
        double qsum = 0.0;
        if (m == 0) {
            qsum = specfun::expint_e1_plus_log(u) - 2.0 * std::log(a_);
            if (u <= 0.0) {
                for (int q = 1; q < q_terms_; ++q) qsum += q_coeff_[q] / q;
            } else if (u <= 650.0) {
                specfun::expint_en(u, q_terms_, en.data());
                for (int q = 1; q < q_terms_; ++q) qsum += q_coeff_[q] * en[q + 1];
            }
        } else {
            if (u > 650.0) continue;
            specfun::expint_en(u, q_terms_, en.data());
            for (int q = 0; q < q_terms_; ++q) qsum += q_coeff_[q] * en[q + 1];
        }
        spatial += std::polar(1.0, wave_.k1 * m * period_) * qsum;
    }
    Complex spectral = 0.0;
    for (const ModeTerm& mt : modes_) {
        Complex bracket;
        if (mt.propagating) {
            bracket = std::exp(-mt.s * dy) * specfun::erfc(0.5 * mt.s / a_ - a_ * dy) +
                      std::exp(mt.s * dy) * specfun::erfc(0.5 * mt.s / a_ + a_ * dy);
        } else {
            const double s = mt.s.real();
            bracket = scaled_erfc_term(s, a_, dy, -1.0) + scaled_erfc_term(s, a_, dy, 1.0);
        }
        spectral += std::polar(1.0, mt.beta * dx1) * bracket / mt.s;
    }
    return -spatial / (4.0 * M_PI) - spectral / (4.0 * period_);
}

Vec2c QpGreen::no_ground_grad(double dx1, double dy, bool omit_m0) const {
    Complex sp1 = 0.0, sp2 = 0.0;
    const double ady2 = a_ * a_ * dy * dy;
    if (ady2 < 650.0) {
        std::vector<double> en(q_terms_ + 1);
        for (int m = -images_; m <= images_; ++m) {
            if (omit_m0 && m == 0) continue;
            const double dxm = dx1 - m * period_;
            const double u = a_ * a_ * dxm * dxm + ady2;
            if (u > 650.0) continue;
            if (u == 0.0)
                fail(ErrorKind::invalid_argument, "z != x",
                     "kernel gradient requested at the source point");
            specfun::expint_en(u, std::max(0, q_terms_ - 1), en.data());
            double qsum = 0.0;
            for (int q = 0; q < q_terms_; ++q) qsum += q_coeff_[q] * en[q];
            const Complex phase = std::polar(1.0, wave_.k1 * m * period_);
            sp1 += phase * qsum * dxm;
            sp2 += phase * qsum * dy;
        }
        sp1 *= a_ * a_ / (2.0 * M_PI);
        sp2 *= a_ * a_ / (2.0 * M_PI);
    }

    Complex sc1 = 0.0, sc2 = 0.0;
    for (const ModeTerm& mt : modes_) {
        Complex term_m, term_p;  // e^{-+ s dy} erfc(s/2a -+ a dy)
        if (mt.propagating) {
            term_m = std::exp(-mt.s * dy) * specfun::erfc(0.5 * mt.s / a_ - a_ * dy);
            term_p = std::exp(mt.s * dy) * specfun::erfc(0.5 * mt.s / a_ + a_ * dy);
        } else {
            const double s = mt.s.real();
            term_m = scaled_erfc_term(s, a_, dy, -1.0);
            term_p = scaled_erfc_term(s, a_, dy, 1.0);
        }
        const Complex phase = std::polar(1.0, mt.beta * dx1);
        sc1 += kImag * mt.beta * phase * (term_m + term_p) / mt.s;
        sc2 += phase * (term_p - term_m);  // bracket' = -s (term_m - term_p)
    }
    Vec2c g;
    g.c1 = sp1 - sc1 / (4.0 * period_);
    g.c2 = sp2 - sc2 / (4.0 * period_);
    return g;
}

namespace {

// Reduce dx to [-d/2, d/2]; returns the quasi-periodic phase factor picked up.
double reduce_shift(double dx, double d, int& j) {
    j = static_cast<int>(std::lround(dx / d));
    return dx - j * d;
}

}  // namespace

Complex QpGreen::value(Point2 z, Point2 x) const {
    int j = 0;
    const double dx1 = reduce_shift(x.x1 - z.x1, period_, j);
    const Complex phase = std::polar(1.0, wave_.k1 * j * period_);
    const Complex src = no_ground_value(dx1, x.x2 - z.x2);
    const Complex img = no_ground_value(dx1, x.x2 + z.x2);
    return phase * (src - img);
}

Complex QpGreen::regular(Point2 z, Point2 x) const {
    int j = 0;
    const double dx1 = reduce_shift(x.x1 - z.x1, period_, j);
    const Complex phase = std::polar(1.0, wave_.k1 * j * period_);
    const Complex img = no_ground_value(dx1, x.x2 + z.x2);
    if (j == 0) {
        const Complex src = no_ground_regular_m0(dx1, x.x2 - z.x2);
        return phase * (src - img);
    }
    // Shifted away from the central cell: the raw difference is regular.
    const double r = std::hypot(x.x1 - z.x1, x.x2 - z.x2);
    const Complex src = no_ground_value(dx1, x.x2 - z.x2);
    return phase * (src - img) - std::log(r) / (2.0 * M_PI);
}

Vec2c QpGreen::grad_x(Point2 z, Point2 x, bool omit_source_image) const {
    int j = 0;
    const double dx1 = reduce_shift(x.x1 - z.x1, period_, j);
    const Complex phase = std::polar(1.0, wave_.k1 * j * period_);
    const Vec2c src = no_ground_grad(dx1, x.x2 - z.x2, omit_source_image && j == 0);
    const Vec2c img = no_ground_grad(dx1, x.x2 + z.x2, false);
    return {phase * (src.c1 - img.c1), phase * (src.c2 - img.c2)};
}

Complex QpGreen::value_spectral(Point2 z, Point2 x) const {
    const double dx1 = x.x1 - z.x1;
    const double dy_s = std::abs(x.x2 - z.x2);
    const double dy_i = x.x2 + z.x2;
    const double dy_min = std::min(dy_s, dy_i);
    const int n_needed = spectral_modes_needed(dy_min);

    Complex acc = 0.0;
    const double d = period_;
    for (int n = -n_needed; n <= n_needed; ++n) {
        const double beta = wave_.k1 + kTwoPi * n / d;
        const double b2k2 = beta * beta - wave_.k * wave_.k;
        const Complex phase = std::polar(1.0, beta * dx1);
        // Uniform branch: s = -i k2 for the propagating mode, so that
        // -e^{-s dy}/(2s) reproduces e^{i k2 dy}/(2 i k2).
        const Complex s =
            b2k2 < 0.0 ? Complex(0.0, std::sqrt(-b2k2)) : Complex(std::sqrt(b2k2), 0.0);
        acc -= phase * (std::exp(-s * dy_s) - std::exp(-s * dy_i)) / (2.0 * s);
    }
    return acc / d;
}

int QpGreen::spectral_modes_needed(double dy_min) const {
    if (!(dy_min > 0.0))
        fail(ErrorKind::numerical, "spectral sum needs vertical separation",
             "plain spectral sum does not converge at coincident heights; use the Ewald form");
    // First neglected term bound e^{-s_n dy} / (2 s_n d) < tol.
    const double target = std::log(1.0 / spectral_tol_);
    double s_needed = (target + 2.0) / dy_min;
    s_needed = std::max(s_needed, 1.0);
    const double beta_needed = std::sqrt(s_needed * s_needed + wave_.k * wave_.k);
    const double n_real = (beta_needed + std::abs(wave_.k1)) * period_ / kTwoPi + 1.0;
    if (n_real > 1e6)
        fail(ErrorKind::numerical, "spectral truncation below 1e6 modes",
             "spectral tail bound needs more than 1e6 modes at this separation; "
             "use the Ewald form");
    return static_cast<int>(std::ceil(n_real));
}

Complex QpGreen::far_coeff_z(Point2 x) const {
    const Complex ik2(0.0, wave_.k2);
    return std::polar(1.0, wave_.k1 * x.x1) *
           (std::exp(-ik2 * x.x2) - std::exp(ik2 * x.x2)) / (2.0 * ik2 * period_);
}

Vec2c QpGreen::far_coeff_z_grad(Point2 x) const {
    const Complex ik2(0.0, wave_.k2);
    const Complex horiz = std::polar(1.0, wave_.k1 * x.x1);
    Vec2c g;
    g.c1 = kImag * wave_.k1 * horiz * (std::exp(-ik2 * x.x2) - std::exp(ik2 * x.x2)) /
           (2.0 * ik2 * period_);
    g.c2 = -horiz * (std::exp(-ik2 * x.x2) + std::exp(ik2 * x.x2)) / (2.0 * period_);
    return g;
}

Complex QpGreen::far_coeff_x(Point2 z) const {
    const Complex ik2(0.0, wave_.k2);
    return std::polar(1.0, -wave_.k1 * z.x1) *
           (std::exp(-ik2 * z.x2) - std::exp(ik2 * z.x2)) / (2.0 * ik2 * period_);
}

Complex QpGreen::value_far(Point2 z, Point2 x, double tail_tol) const {
    const double sep = z.x2 - x.x2;
    if (!(sep > 0.0))
        fail(ErrorKind::invalid_argument, "z2 > x2 + margin",
             "far-field form needs the first argument above the second");
    const double tail = std::exp(-s1_ * sep) / (2.0 * s1_ * period_);
    if (tail > tail_tol)
        fail(ErrorKind::numerical, "evanescent tail below tolerance",
             "separation too small for the far-field form: tail bound " +
                 std::to_string(tail));
    return std::polar(1.0, -wave_.k1 * z.x1 + wave_.k2 * z.x2) * far_coeff_z(x);
}

namespace freespace {

Complex gamma(double k, Point2 z, Point2 x) {
    const double r = std::hypot(x.x1 - z.x1, x.x2 - z.x2);
    if (!(r > 0.0))
        fail(ErrorKind::invalid_argument, "z != x", "free-space kernel at coincident points");
    return Complex(0.0, -0.25) * specfun::hankel1(0, k * r);
}

Vec2c grad_x(double k, Point2 z, Point2 x) {
    const double r = std::hypot(x.x1 - z.x1, x.x2 - z.x2);
    if (!(r > 0.0))
        fail(ErrorKind::invalid_argument, "z != x", "free-space gradient at coincident points");
    const Complex fac = Complex(0.0, 0.25) * k * specfun::hankel1(1, k * r) / r;
    return {fac * (x.x1 - z.x1), fac * (x.x2 - z.x2)};
}

Complex regular(double k, double r) {
    constexpr double kEulerGamma = 0.57721566490153286060651209008240;
    if (r < 0.0)
        fail(ErrorKind::invalid_argument, "r >= 0", "negative distance");
    if (r == 0.0)
        return Complex((std::log(0.5 * k) + kEulerGamma) / (2.0 * M_PI), -0.25);
    return gamma(k, {0.0, 0.0}, {r, 0.0}) - std::log(r) / (2.0 * M_PI);
}

}  // namespace freespace

}  // namespace metasurf
