#pragma once
// Holomorphic building blocks: the Jacobi theta function theta(z;tau), the
// Dedekind eta function, theta functions with real characteristics, index-m
// components theta_{m,l}, and the weight-3/2 unary theta g_{a,b}.

#include "mocktheta/core.hpp"

namespace mocktheta::th {

struct ThetaCharacteristic {
    double a = 0.0;  // shift of the summation lattice
    double b = 0.0;  // shift in the phase
};

struct UnaryThetaSpec {
    double a = 0.0;
    double b = 0.0;
    double weight = 1.5;  // 1/2 for theta-type, 3/2 for g-type
};

// Certified kernel shared by every theta series here:
//   sum_{nu in a0 + Z} nu^p e^{pi i nu^2 tau_like + 2 pi i nu w},  p in {0,1},
// where tau_like is any complex number with positive imaginary part.
cx theta_kernel_sum(double a0, int p, cx tau_like, cx w, double tol);

// theta(z;tau) = sum_{nu in 1/2+Z} e^{pi i nu^2 tau + 2 pi i nu (z + 1/2)}
cx jacobi_theta(cx z, const TauPoint& tau, double tol);

// theta_{a,b}(z;tau) = sum_{lambda in a+Z} e^{pi i lambda^2 tau + 2 pi i lambda (z+b)}
cx theta_char(const ThetaCharacteristic& spec, cx z, const TauPoint& tau, double tol);

// theta_{m,l}(z;tau) = sum_{lambda = l mod 2m} e^{pi i lambda^2 tau / 2m + 2 pi i lambda z}
cx theta_index_component(long long m, long long l, cx z, const TauPoint& tau, double tol);

// g_{a,b}(tau) = sum_{nu in a+Z} nu e^{pi i nu^2 tau + 2 pi i nu b}
cx unary_g(const UnaryThetaSpec& spec, const TauPoint& tau, double tol);
cx unary_g_at(double a, double b, cx tau_like, double tol);  // complex argument

// eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n)
cx dedekind_eta(const TauPoint& tau, double tol);

// prod_{n>=1} (1 - z q^{n-1+off}) numerically (|q| < 1); used for numeric
// Pochhammer values such as (q)_inf = eta-free Euler products.
cx pochhammer_value(cx z, cx q, double tol);

// theta'(0;tau) by a fourth-order central difference (test utility).
cx theta_deriv0_fd(const TauPoint& tau, double tol, double h = 1e-2);

// theta'(0;tau) = -2 pi eta(tau)^3 (used by the identity suites).
cx theta_deriv0(const TauPoint& tau, double tol);

}  // namespace mocktheta::th
