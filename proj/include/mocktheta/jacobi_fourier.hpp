#pragma once
// Theta decomposition of Jacobi forms: the Appell-type building block f_u,
// its real-analytic completion f-tilde via R_{m,l}, and the Fourier-
// coefficient decomposition of meromorphic index-m forms with simple poles.

#include <functional>
#include <vector>

#include "mocktheta/core.hpp"

namespace mocktheta::jf {

// A pole position in lattice coordinates: u(tau) = alpha*tau + beta.
struct PolePosition {
    double alpha = 0.0;
    double beta = 0.0;
    cx at(const TauPoint& tau) const { return alpha * tau.value() + beta; }
};

struct JacobiFormSpec {
    int weight = 0;
    long long index = 1;  // m > 0
    std::function<cx(cx, const TauPoint&)> eval;
    std::vector<PolePosition> poles;  // one per lattice cell; order 1 each
};

struct FourierVector {
    long long index = 1;
    std::vector<cx> h;  // 2m components, l = 0..2m-1
};

// f_u(z;tau) = sum_{lambda} e^{2 pi i m lambda^2 tau + 4 pi i m lambda z} /
//              (1 - e^{2 pi i lambda tau + 2 pi i (z-u)})
cx block_f(cx u, cx z, const TauPoint& tau, long long m, double tol);

// R_{m,l}(u;tau) = sum_{lambda = l mod 2m}
//   {sign(lambda+1/2) - E((lambda + 2m Im(u)/y) sqrt(y/m))}
//   e^{-pi i lambda^2 tau/2m - 2 pi i lambda u}
cx correction_R_ml(long long m, long long l, cx u, const TauPoint& tau, double tol);

// f-tilde_u = f_u - (1/2) sum_{l mod 2m} R_{m,l}(u) theta_{m,l}(z)
cx completed_block_f(cx u, cx z, const TauPoint& tau, long long m, double tol);

// h_l(tau) = e^{-pi i l^2 tau/2m} int_p^{p+1} phi(z) e^{-2 pi i l z} dz for a
// holomorphic phi satisfying the elliptic law; reconstruction against
// sum h_l theta_{m,l} is validated at probe points.
FourierVector theta_decompose_holomorphic(const JacobiFormSpec& phi,
                                          const TauPoint& tau, cx p, double tol);

struct MeromorphicDecomposition {
    FourierVector h;
    std::vector<std::pair<cx, cx>> finite_parts;  // (u, d_u)
};

// Decomposition with simple poles:
//   phi = sum_l h_l theta_{m,l} + sum_u d_u f-tilde_u,
//   d_u = -2 pi i Res_{z=u} phi,
//   h_l = e^{-pi i l^2 tau/2m} int phi e^{-2 pi i l z} + (1/2) sum_u d_u R_{m,l}(u).
MeromorphicDecomposition decompose_meromorphic_simple(const JacobiFormSpec& phi,
                                                      const TauPoint& tau, cx p,
                                                      double tol);

// Evaluates sum_l h_l theta_{m,l}(z) + sum_u d_u f-tilde_u(z).
cx reconstruct(const MeromorphicDecomposition& dec, cx z, const TauPoint& tau,
               double tol);

// Default base point p = -tau/2 - 1/2 + 0.01(1+i).
cx default_base_point(const TauPoint& tau);

// The index-13 weight-1 quotient with a single simple pole per cell:
// (theta_{0,0} theta_{0,1/2} theta_{1/2,0})^9 / (Delta * theta_{1/2,1/2})
// with Delta = eta^24.
JacobiFormSpec pole_quotient_example();

// Laplace transform of the shadow: the stated d/d(conj tau) of the example's
// h_l, namely 256 sqrt(13) y^{-1/2} sum_{lambda in l/26+Z} lambda e^{-26 pi i lambda^2 conj(tau)}.
cx example_shadow(long long l, const TauPoint& tau, double tol);

}  // namespace mocktheta::jf
