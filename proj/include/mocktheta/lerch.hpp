#pragma once
// The Mordell integral h, the normalized Lerch sum mu, the real-analytic
// correction R, the completed sum mu-tilde, and period integrals of
// weight-3/2 unary theta functions.

#include "mocktheta/core.hpp"

namespace mocktheta::lerch {

// Lattice coordinates of a point; the two sign conventions in use are
//   u = a*tau - b  (period-integral context) and z = a*tau + b (elsewhere).
enum class CoordConvention { kDiff, kSum };

struct EllipticPoint {
    cx u;
    double a = 0.0;
    double b = 0.0;
    CoordConvention convention = CoordConvention::kDiff;

    static EllipticPoint diff(cx u, const TauPoint& tau);  // u = a*tau - b
    static EllipticPoint sum(cx z, const TauPoint& tau);   // z = a*tau + b
    cx reconstruct(const TauPoint& tau) const;
};

struct MuArgs {
    cx u, v;
    TauPoint tau;
    // throws pole_proximity if u or v is within 1e-8 of Z tau + Z
    void validate() const;
};

// h(z;tau) = int_R e^{pi i tau x^2 - 2 pi z x} / cosh(pi x) dx
cx mordell_h(cx z, const TauPoint& tau, double tol);

// E(z) = 2 int_0^z e^{-pi u^2} du. Real arguments are exact to machine
// precision (error-function route); complex arguments use the entire power
// series, accurate for |z| <= ~2.5.
cx erf_like_E(cx z);
double erf_like_E(double x);

// beta(x) = int_x^inf u^{-1/2} e^{-pi u} du = erfc(sqrt(pi x)), x >= 0
double beta_tail(double x);
// beta(x) e^{pi x}; keeps Gaussian-tail products representable
double beta_tail_scaled(double x);

// mu(u,v;tau) = e^{pi i u}/theta(v;tau) *
//   sum_n (-1)^n e^{pi i (n^2+n) tau + 2 pi i n v} / (1 - e^{2 pi i n tau + 2 pi i u})
cx lerch_mu(const MuArgs& args, double tol);

// R(u;tau) = sum_{nu in 1/2+Z} {sign(nu) - E((nu+a) sqrt(2y))}
//            (-1)^{nu-1/2} e^{-pi i nu^2 tau - 2 pi i nu u},  a = Im(u)/y
cx correction_R(cx u, const TauPoint& tau, double tol);

// mu-tilde = mu + (i/2) R(u - v)
cx completed_mu(const MuArgs& args, double tol);

// int_{-conj(tau)}^{i inf} g_{a+1/2, b+1/2}(z) / sqrt(-i(z+tau)) dz,
// for a in (-1/2, 1/2); equals -e^{-pi i a^2 tau + 2 pi i a (b+1/2)} R(a tau - b).
cx period_integral_R(double a, double b, const TauPoint& tau, double tol);

// int_0^{i inf} of the same integrand, for a, b in (-1/2, 1/2); equals
// -e^{-pi i a^2 tau + 2 pi i a (b+1/2)} h(a tau - b). Computed by splitting at
// -conj(tau) and mapping [0, -conj(tau)] through z -> -1/z.
cx period_integral_h(double a, double b, const TauPoint& tau, double tol);

// Residue of a meromorphic f at u0 by a circular contour average.
cx contour_residue(const std::function<cx(cx)>& f, cx u0, double radius = 1e-2,
                   int nodes = 32);

}  // namespace mocktheta::lerch
