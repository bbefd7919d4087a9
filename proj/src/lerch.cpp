#include "mocktheta/lerch.hpp"

#include <cmath>

#include "mocktheta/theta.hpp"

namespace mocktheta::lerch {

namespace {

constexpr double kLatticeEps = 1e-8;

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

double parity(long long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

EllipticPoint EllipticPoint::diff(cx u, const TauPoint& tau) {
    const LatticeCoords c = lattice_coords_diff(u, tau);
    return {u, c.a, c.b, CoordConvention::kDiff};
}

EllipticPoint EllipticPoint::sum(cx z, const TauPoint& tau) {
    const LatticeCoords c = lattice_coords_sum(z, tau);
    return {z, c.a, c.b, CoordConvention::kSum};
}

cx EllipticPoint::reconstruct(const TauPoint& tau) const {
    return convention == CoordConvention::kDiff ? a * tau.value() - b
                                                : a * tau.value() + b;
}

void MuArgs::validate() const {
    for (const cx w : {u, v}) {
        if (lattice_linf_distance(lattice_coords_sum(w, tau)) < kLatticeEps)
            throw pole_proximity("argument too close to the lattice Z tau + Z");
    }
}

cx mordell_h(cx z, const TauPoint& tau, double tol) {
    const cx tv = tau.value();
    auto f = [&](double x) -> cx {
        return std::exp(kPi * kI * tv * x * x - 2.0 * kPi * z * x) /
               std::cosh(kPi * x);
    };
    GaussianDecay d;
    d.y = tau.y;
    d.shift = std::abs(z.real()) - 0.5;  // 1/cosh(pi x) <= 2 e^{-pi |x|}
    d.scale = 2.0;
    d.freq = std::abs(tv);
    return integrate_real_line(f, d, tol);
}

double erf_like_E(double x) { return std::erf(std::sqrt(kPi) * x); }

cx erf_like_E(cx z) {
    if (z.imag() == 0.0) return erf_like_E(z.real());
    // power series 2 sum_n (-pi)^n z^{2n+1} / (n! (2n+1))
    cx term = 2.0 * z;
    cx sum = term;
    const cx z2 = z * z;
    for (int n = 1; n < 400; ++n) {
        term *= -kPi * z2 / double(n);
        const cx add = term / double(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) &&
            double(n) > kPi * std::norm(z))
            return sum;
    }
    throw truncation_failure("E(z) power series did not settle");
}

double beta_tail(double x) {
    if (x < 0.0) throw bad_input("beta_tail requires x >= 0");
    return std::erfc(std::sqrt(kPi * x));
}

double beta_tail_scaled(double x) {
    if (x < 0.0) throw bad_input("beta_tail requires x >= 0");
    return erfcx(std::sqrt(kPi * x));
}

cx lerch_mu(const MuArgs& args, double tol) {
    args.validate();
    const TauPoint& tau = args.tau;
    const double y = tau.y;
    const cx tv = tau.value();
    const cx u = args.u, v = args.v;
    const double imu = u.imag(), imv = v.imag();

    const cx theta_v = th::jacobi_theta(v, tau, tol * 1e-3);
    const cx pref = std::exp(kPi * kI * u) / theta_v;
    const double pmag = std::max(std::abs(pref), 1e-30);

    // Majorants: for n -> +inf the terms behave like e^{-pi y (n + cp)^2} up
    // to the peak factor Mp; for n -> -inf (after factoring the denominator)
    // like e^{-pi y (n + cm)^2} times Mm.
    const double alpha = kPi * y;
    const double cp = 0.5 + imv / y;
    const double cm = -0.5 + imv / y;
    const double Mp = std::exp(alpha * cp * cp);
    const double Mm = std::exp(alpha * cm * cm + 2.0 * kPi * imu);
    if (!std::isfinite(Mp) || !std::isfinite(Mm))
        throw truncation_failure("Lerch sum outside the supported envelope");
    const double bfac = 1.0 / (1.0 - std::exp(-kPi * y));
    const long long n_plus = std::max<long long>(1, (long long)std::ceil(0.5 - imu / y));
    const long long n_minus = std::max<long long>(1, (long long)std::ceil(0.5 + imu / y));

    const double budget = 0.5 * tol / pmag;
    long long W = std::max<long long>({n_plus, n_minus,
                                       (long long)std::ceil(std::abs(cp)) + 1,
                                       (long long)std::ceil(std::abs(cm)) + 1, 2});
    for (;; ++W) {
        const double tp = bfac * Mp * gaussian_tail_bound(W + 1 + cp, alpha, 0, 0);
        const double tm = bfac * Mm * gaussian_tail_bound(W + 1 - cm, alpha, 0, 0);
        if (tp + tm <= budget) break;
        if (W > 2000000) throw truncation_failure("Lerch window not certified");
    }

    cx sum = 0.0;
    for (long long n = -W; n <= W; ++n) {
        const cx X = kPi * kI * double(n * n + n) * tv + 2.0 * kPi * kI * double(n) * v;
        const cx w = 2.0 * kPi * kI * (double(n) * tv + u);
        const double sn = parity(n);
        if (w.real() <= 0.0) {
            sum += sn * std::exp(X) / (1.0 - std::exp(w));
        } else {
            sum += -sn * std::exp(X - w) / (1.0 - std::exp(-w));
        }
    }
    return pref * sum;
}

cx correction_R(cx u, const TauPoint& tau, double tol) {
    const double y = tau.y;
    const double a = u.imag() / y;
    const cx tv = tau.value();

    // sign-difference part: finitely many nu in 1/2+Z between -a and 0
    cx fin = 0.0;
    const long long k_lo = (long long)std::floor(std::min(0.0, -a)) - 2;
    const long long k_hi = (long long)std::ceil(std::max(0.0, -a)) + 2;
    for (long long k = k_lo; k <= k_hi; ++k) {
        const double nu = double(k) + 0.5;
        const double s1 = sgn(nu), s2 = sgn(nu + a);
        if (s1 == s2) continue;
        const cx ex = -kPi * kI * nu * nu * tv - 2.0 * kPi * kI * nu * u;
        fin += (s1 - s2) * parity(k) * std::exp(ex);
    }

    // beta part: sign(nu+a) beta(2(nu+a)^2 y) e^{-pi i nu^2 tau - 2 pi i nu u},
    // evaluated in scaled form; modulus is e^{-pi y ((nu+a)^2 + a^2)}.
    auto f = [&](double nu) -> cx {
        const double t = nu + a;
        const double s = sgn(t);
        if (s == 0.0) return 0.0;
        const double scaled = erfcx(std::sqrt(2.0 * kPi * y) * std::abs(t));
        const cx ex = -kPi * kI * nu * nu * tv - 2.0 * kPi * kI * nu * u -
                      2.0 * kPi * t * t * y;
        const long long k = std::llround(nu - 0.5);
        return s * parity(k) * scaled * std::exp(ex);
    };
    const cx beta_part =
        sum_lattice_gaussian(f, 0.5, -a, kPi * y, 1.0, 0.0, 0, tol);
    return fin + beta_part;
}

cx completed_mu(const MuArgs& args, double tol) {
    return lerch_mu(args, tol) +
           0.5 * kI * correction_R(args.u - args.v, args.tau, tol);
}

namespace {

// C with |g_{A,B}(z0 + i s)| <= C e^{-pi nu0sq (h0 + s)} along the ray.
double ray_bound_constant(double A, double h0, double nu0sq) {
    double C = 0.0;
    for (long long k = -300; k <= 300; ++k) {
        const double nu = A + double(k);
        C += std::abs(nu) * std::exp(-kPi * h0 * (nu * nu - nu0sq));
    }
    return C;
}

// int_{-conj(tau)}^{i inf} g_{A,B}(z)/sqrt(-i(z+tau)) dz for a lattice shift A
// with min |A+Z| = nu0 > 0.
cx ray_from_minus_conj_tau(double A, double B, const TauPoint& tau, double tol) {
    const double nu0 = dist_to_int(A);  // min |A + Z|
    if (nu0 < 1e-12) throw boundary_characteristic("ray decay rate vanished");
    const cx z0(-tau.x, tau.y);
    RayDecay d{nu0 * nu0, ray_bound_constant(A, tau.y, nu0 * nu0)};
    auto g = [&](cx z) { return th::unary_g_at(A, B, z, tol * 0.05); };
    return integrate_vertical_ray(g, z0, tau, d, tol);
}

}  // namespace

cx period_integral_R(double a, double b, const TauPoint& tau, double tol) {
    if (!(std::abs(a) < 0.5))
        throw boundary_characteristic("period integral needs a in (-1/2, 1/2)");
    return ray_from_minus_conj_tau(a + 0.5, b + 0.5, tau, tol);
}

cx period_integral_h(double a, double b, const TauPoint& tau, double tol) {
    if (!(std::abs(a) < 0.5) || !(std::abs(b) < 0.5))
        throw boundary_characteristic("period integral needs a, b in (-1/2, 1/2)");
    const double A = a + 0.5, B = b + 0.5;
    const cx i1 = ray_from_minus_conj_tau(A, B, tau, 0.5 * tol);

    // [0, -conj(tau)] maps under z -> -1/z to the ray from 1/conj(tau) at
    // modulus -1/tau; the integrand picks the factor i e^{2 pi i A B}/sqrt(-i tau)
    // and g flips to g_{B,-A}.
    const cx tv = tau.value();
    const cx z0p = 1.0 / std::conj(tv);
    const TauPoint taup(-1.0 / tv);
    const double nu0 = dist_to_int(B);  // min |B + Z|
    if (nu0 < 1e-12) throw boundary_characteristic("mapped ray decay vanished");
    RayDecay d{nu0 * nu0, ray_bound_constant(B, z0p.imag(), nu0 * nu0)};
    auto g = [&](cx w) { return th::unary_g_at(B, -A, w, tol * 0.05); };
    const cx ray2 = integrate_vertical_ray(g, z0p, taup, d, 0.5 * tol);
    const cx i2 = kI * unit_phase(A * B) / sqrt_principal_neg_i_tau(tau) * ray2;
    return i1 + i2;
}

cx contour_residue(const std::function<cx(cx)>& f, cx u0, double radius, int nodes) {
    cx s = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const cx w = std::polar(radius, 2.0 * kPi * (j + 0.5) / nodes);
        s += f(u0 + w) * w;
    }
    return s / double(nodes);
}

}  // namespace mocktheta::lerch
