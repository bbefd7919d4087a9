#include "mocktheta/theta.hpp"

#include <cmath>

namespace mocktheta::th {

cx theta_kernel_sum(double a0, int p, cx tau_like, cx w, double tol) {
    const double ys = tau_like.imag();
    if (!(ys > 0.0)) throw bad_input("theta kernel needs Im(tau) > 0");
    const double alpha = kPi * ys;
    const double center = -w.imag() / ys;
    const double M = std::exp(alpha * center * center);
    auto f = [&](double nu) -> cx {
        const cx ex = kPi * kI * nu * nu * tau_like + 2.0 * kPi * kI * nu * w;
        const cx t = std::exp(ex);
        return p == 0 ? t : nu * t;
    };
    return sum_lattice_gaussian(f, a0, center, alpha, M, std::abs(center), p, tol);
}

cx jacobi_theta(cx z, const TauPoint& tau, double tol) {
    return theta_kernel_sum(0.5, 0, tau.value(), z + 0.5, tol);
}

cx theta_char(const ThetaCharacteristic& spec, cx z, const TauPoint& tau, double tol) {
    return theta_kernel_sum(spec.a, 0, tau.value(), z + spec.b, tol);
}

cx theta_index_component(long long m, long long l, cx z, const TauPoint& tau, double tol) {
    if (m < 1) throw bad_input("index m must be positive");
    // lambda = 2m nu with nu in l/2m + Z gives a plain theta at (2m tau, 2m z).
    const double a0 = double(l) / double(2 * m);
    return theta_kernel_sum(a0, 0, 2.0 * double(m) * tau.value(),
                            2.0 * double(m) * z, tol);
}

cx unary_g(const UnaryThetaSpec& spec, const TauPoint& tau, double tol) {
    if (spec.weight != 1.5) throw bad_input("unary_g expects the weight-3/2 marker");
    return theta_kernel_sum(spec.a, 1, tau.value(), cx(spec.b, 0.0), tol);
}

cx unary_g_at(double a, double b, cx tau_like, double tol) {
    return theta_kernel_sum(a, 1, tau_like, cx(b, 0.0), tol);
}

cx dedekind_eta(const TauPoint& tau, double tol) {
    const cx q = std::exp(2.0 * kPi * kI * tau.value());
    const cx q24 = std::exp(2.0 * kPi * kI * tau.value() / 24.0);
    return q24 * pochhammer_value(q, q, tol);
}

cx pochhammer_value(cx z, cx q, double tol) {
    const double aq = std::abs(q);
    if (!(aq < 1.0)) throw bad_input("pochhammer value needs |q| < 1");
    cx p = 1.0;
    cx zq = z;
    // |log prod_{k>n}| <= |z| |q|^n / (1-|q|); stop once the remaining factors
    // cannot move the product by more than tol.
    for (int n = 0;; ++n) {
        const double rem = std::abs(zq) / (1.0 - aq);
        if (rem <= 0.25 * tol) break;
        if (n > 100000) throw truncation_failure("pochhammer product stalled");
        p *= (1.0 - zq);
        zq *= q;
    }
    return p;
}

cx theta_deriv0_fd(const TauPoint& tau, double tol, double h) {
    auto th = [&](cx z) { return jacobi_theta(z, tau, tol); };
    return (8.0 * (th(cx(h, 0)) - th(cx(-h, 0))) -
            (th(cx(2 * h, 0)) - th(cx(-2 * h, 0)))) /
           (12.0 * h);
}

cx theta_deriv0(const TauPoint& tau, double tol) {
    const cx eta = dedekind_eta(tau, tol);
    return -2.0 * kPi * eta * eta * eta;
}

}  // namespace mocktheta::th
