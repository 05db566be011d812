// quadrature.cpp

#include "metasurf/quadrature.hpp"

#include <cmath>

namespace metasurf::quadrature {

namespace {

// Local quadratic model of the sampled density at node j: slope and second
// difference from neighbours, one-sided at the ends of the side.
struct LocalModel {
    int j0;  // stencil base index: coefficients apply to phi[j0], phi[j0+1], phi[j0+2]
    double c_d1[3];
    double c_d2[3];
};

LocalModel local_model(int j, int n, double hp) {
    LocalModel m{};
    int base = j;
    if (j == 0)
        base = 0;
    else if (j == n - 1)
        base = n - 3;
    else
        base = j - 1;
    m.j0 = base;
    const int rel = j - base;  // position of node j within the 3-point stencil
    // d1 ~ phi'(s_j), d2 ~ phi''(s_j) on the stencil {base, base+1, base+2}.
    const double ih = 1.0 / hp;
    const double ih2 = ih * ih;
    // Second difference is position independent.
    m.c_d2[0] = ih2;
    m.c_d2[1] = -2.0 * ih2;
    m.c_d2[2] = ih2;
    if (rel == 0) {  // forward difference with curvature correction
        m.c_d1[0] = -1.5 * ih;
        m.c_d1[1] = 2.0 * ih;
        m.c_d1[2] = -0.5 * ih;
    } else if (rel == 1) {
        m.c_d1[0] = -0.5 * ih;
        m.c_d1[1] = 0.0;
        m.c_d1[2] = 0.5 * ih;
    } else {
        m.c_d1[0] = 0.5 * ih;
        m.c_d1[1] = -2.0 * ih;
        m.c_d1[2] = 1.5 * ih;
    }
    return m;
}

}  // namespace

std::vector<double> log_kernel_weights(double length, int n, double tau) {
    if (n < 4)
        fail(ErrorKind::invalid_argument, "log kernel needs >= 4 samples",
             "log_kernel_weights requires at least 4 panels");
    if (!(tau > 0.0 && tau < length))
        fail(ErrorKind::invalid_argument, "log kernel target inside interval",
             "log_kernel_weights requires tau strictly inside (0, length)");

    const double hp = length / n;
    std::vector<double> lam(n, 0.0);

    // Everything below is linear in the samples; lam accumulates the final
    // functional.  alpha[i] collects the coefficient of Phi(e_i).
    std::vector<double> alpha(n + 1, 0.0);

    auto edge = [&](int i) { return i * hp - tau; };
    auto node = [&](int j) { return (j + 0.5) * hp - tau; };

    int p = static_cast<int>(std::floor(tau / hp));
    if (p < 0) p = 0;
    if (p > n - 1) p = n - 1;

    // Model of phi around u = 0 (panel p), recentered: phi(u) ~ g0 + g1 u + g2 u^2/2.
    const LocalModel mp = local_model(p, n, hp);
    const double up = node(p);
    double g0_w[3], g1_w[3], g2_w[3];
    for (int t = 0; t < 3; ++t) {
        g0_w[t] = (t == p - mp.j0 ? 1.0 : 0.0) - mp.c_d1[t] * up + 0.5 * mp.c_d2[t] * up * up;
        g1_w[t] = mp.c_d1[t] - mp.c_d2[t] * up;
        g2_w[t] = mp.c_d2[t];
    }
    auto add_g = [&](double w0, double w1, double w2) {
        for (int t = 0; t < 3; ++t)
            lam[mp.j0 + t] += w0 * g0_w[t] + w1 * g1_w[t] + w2 * g2_w[t];
    };

    // Boundary term [log|u| Phi(u)] at the ends of the side.
    alpha[n] += std::log(std::abs(edge(n)));
    alpha[0] -= std::log(std::abs(edge(0)));

    // Minus Int Phi(u)/u du, panel by panel.
    for (int j = 0; j < n; ++j) {
        const double ej = edge(j);
        const double ej1 = edge(j + 1);
        const bool central = (j == p) || std::min(std::abs(ej), std::abs(ej1)) <= 0.1 * hp;
        if (central) {
            // Phi(u)/u = g0 + g1 u/2 + g2 u^2/6 integrated exactly.
            const double w0 = ej1 - ej;
            const double w1 = 0.25 * (ej1 * ej1 - ej * ej);
            const double w2 = (ej1 * ej1 * ej1 - ej * ej * ej) / 18.0;
            add_g(-w0, -w1, -w2);
            continue;
        }
        // Phi(u) = Phi(e_j) + I_j(v), v = u - u_j; rational part integrated exactly.
        const double uj = node(j);
        const double lr = std::log(std::abs(ej1 / ej));
        alpha[j] -= lr;

        const LocalModel mj = local_model(j, n, hp);
        // I_j(v) = b0 + b1 v + b2 v^2 + b3 v^3 with stencil-valued coefficients.
        double b0[3], b1[3], b2[3], b3[3];
        for (int t = 0; t < 3; ++t) {
            const double phi_t = (t == j - mj.j0 ? 1.0 : 0.0);
            b0[t] = phi_t * 0.5 * hp - mj.c_d1[t] * hp * hp / 8.0 + mj.c_d2[t] * hp * hp * hp / 48.0;
            b1[t] = phi_t;
            b2[t] = 0.5 * mj.c_d1[t];
            b3[t] = mj.c_d2[t] / 6.0;
        }
        const double h3_12 = hp * hp * hp / 12.0;
        for (int t = 0; t < 3; ++t) {
            const double rho = b0[t] - b1[t] * uj + b2[t] * uj * uj - b3[t] * uj * uj * uj;
            const double quot_const = b1[t] - b2[t] * uj + b3[t] * uj * uj;
            lam[mj.j0 + t] -= b3[t] * h3_12 + quot_const * hp + rho * lr;
        }
    }

    // Phi at the anchor edges around panel p: T_dn = Phi(e_p), T_up = Phi(e_{p+1}).
    // Phi(u) = g0 u + g1 u^2/2 + g2 u^3/6 near zero.
    const double ep = edge(p);
    const double ep1 = edge(p + 1);
    auto phi_model_weights_at = [&](double u, double out[3]) {
        for (int t = 0; t < 3; ++t)
            out[t] = g0_w[t] * u + 0.5 * g1_w[t] * u * u + g2_w[t] * u * u * u / 6.0;
    };
    double t_dn[3], t_up[3];
    phi_model_weights_at(ep, t_dn);
    phi_model_weights_at(ep1, t_up);

    // Panel integrals P_j with the hp^3/24 curvature correction.
    // Distribute sum_i alpha_i Phi(e_i) through prefix sums.
    std::vector<double> suffix(n + 2, 0.0);  // suffix[i] = sum_{i' >= i} alpha[i']
    for (int i = n; i >= 0; --i) suffix[i] = suffix[i + 1] + alpha[i];
    std::vector<double> prefix(n + 2, 0.0);  // prefix[i] = sum_{i' <= i} alpha[i']
    prefix[0] = alpha[0];
    for (int i = 1; i <= n; ++i) prefix[i] = prefix[i - 1] + alpha[i];

    const double a_dn = prefix[p];     // multiplies T_dn
    const double a_up = suffix[p + 1];  // multiplies T_up
    for (int t = 0; t < 3; ++t) {
        lam[mp.j0 + t] += a_dn * t_dn[t] + a_up * t_up[t];
    }
    // Panels j > p contribute P_j to Phi(e_i) for i >= j+1; j < p to i <= j with sign -1.
    for (int j = 0; j < n; ++j) {
        double w;
        if (j > p)
            w = suffix[j + 1];
        else if (j < p)
            w = -prefix[j];
        else
            continue;
        const LocalModel mj = local_model(j, n, hp);
        for (int t = 0; t < 3; ++t) {
            const double phi_t = (t == j - mj.j0 ? 1.0 : 0.0);
            lam[mj.j0 + t] += w * (hp * phi_t + mj.c_d2[t] * hp * hp * hp / 24.0);
        }
    }
    return lam;
}

double log_kernel_integral(double eps1, double eps2, const std::vector<double>& phi) {
    const int n = static_cast<int>(phi.size());
    if (n < 4)
        fail(ErrorKind::invalid_argument, "log kernel needs >= 4 samples",
             "log_kernel_integral requires at least 4 samples");
    const std::vector<double> lam = log_kernel_weights(eps1 + eps2, n, eps1);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += lam[j] * phi[j];
    return acc;
}

Complex log_kernel_integral(double eps1, double eps2, const std::vector<Complex>& phi) {
    const int n = static_cast<int>(phi.size());
    if (n < 4)
        fail(ErrorKind::invalid_argument, "log kernel needs >= 4 samples",
             "log_kernel_integral requires at least 4 samples");
    const std::vector<double> lam = log_kernel_weights(eps1 + eps2, n, eps1);
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) acc += lam[j] * phi[j];
    return acc;
}

double poisson_kernel_integral(const std::function<double(double)>& phi, double T,
                               double m, int n_nodes) {
    if (!(m >= 1.0) || !(T > 0.0))
        fail(ErrorKind::invalid_argument, "poisson kernel scale m >= 1, T > 0",
             "poisson_kernel_integral requires m >= 1 and T > 0");
    const double upper = std::atan(m * T);
    std::vector<double> u, w;
    gauss_legendre(n_nodes, 0.0, upper, u, w);
    double acc = 0.0;
    for (int i = 0; i < n_nodes; ++i) acc += w[i] * phi(std::tan(u[i]) / m);
    return acc;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const int mid = (n + 1) / 2;
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    for (int i = 0; i < mid; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = xm - xl * x;
        nodes[n - 1 - i] = xm + xl * x;
        weights[i] = 2.0 * xl / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

std::vector<double> chebyshev_nodes(double eps, int n) {
    std::vector<double> t(n);
    for (int j = 0; j < n; ++j) t[j] = eps * std::cos((2.0 * j + 1.0) * M_PI / (2.0 * n));
    return t;
}

}  // namespace metasurf::quadrature
