#pragma once
// Shared numeric kernel: complex conventions, certified series summation,
// and adaptive quadrature for integrands with Gaussian or exponential decay.
//
// Everything here is a pure function of its arguments. Absolute error is the
// contract throughout: a call with tolerance `tol` returns a value whose
// truncation error is bounded by `tol` (roundoff excluded).

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace mocktheta {

using cx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cx kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct bad_input : error { using error::error; };
struct truncation_failure : error { using error::error; };
struct quadrature_failure : error { using error::error; };
struct pole_proximity : error { using error::error; };
struct wall_proximity : error { using error::error; };
struct not_in_cone : error { using error::error; };
struct properness_violation : error { using error::error; };
struct inversion_error : error { using error::error; };
struct no_decay : error { using error::error; };
struct membership_error : error { using error::error; };
struct boundary_characteristic : error { using error::error; };
struct contour_error : error { using error::error; };

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

// A point in the upper half plane, tau = x + iy with y > 0.
struct TauPoint {
    double x = 0.0;
    double y = 1.0;

    TauPoint() = default;
    TauPoint(double re, double im) : x(re), y(im) {
        if (!(y > 0.0)) throw bad_input("tau not in upper half plane");
    }
    explicit TauPoint(cx t) : TauPoint(t.real(), t.imag()) {}

    cx value() const { return {x, y}; }
};

struct ToleranceProfile {
    double target_abs = 1e-9;  // absolute tolerance for function values
    double tail_budget = 0.1;  // fraction of target_abs spent on truncation
    double fd_step = 1e-5;     // step for finite-difference derivative checks

    void validate() const {
        if (!(target_abs > 0.0)) throw bad_input("target_abs must be positive");
        if (!(tail_budget > 0.0 && tail_budget < 1.0))
            throw bad_input("tail_budget must lie in (0,1)");
    }
};

struct QuadratureSpec {
    int panel_order = 16;     // Gauss-Legendre nodes per panel
    int max_panels = 16384;   // refinement cap
    double radius_margin = 1.0;  // multiplies the analytic truncation radius

    void validate() const {
        if (panel_order < 8) throw bad_input("panel order must be >= 8");
        if (max_panels < 16) throw bad_input("max panels must be >= 16");
    }
};

// The double-precision evaluators are calibrated for y >= 0.25 and
// characteristic magnitudes <= 8; outside that region results are still
// computed but callers should surface a degraded-precision flag.
inline bool degraded_region(const TauPoint& tau, double char_magnitude = 0.0) {
    return tau.y < 0.25 || std::abs(char_magnitude) > 8.0;
}

// ---------------------------------------------------------------------------
// Branch conventions
// ---------------------------------------------------------------------------

// Principal square root of -i*w. For Im(w) > 0 the argument -i*w has positive
// real part, so the result has positive real part as well.
cx sqrt_neg_i(cx w);

// sqrt(-i*tau) with the principal branch; Re > 0 for all tau in H.
cx sqrt_principal_neg_i_tau(const TauPoint& tau);

// (-i*tau)^{3/2} computed as (-i*tau) * sqrt(-i*tau).
cx pow_neg_i_tau_32(const TauPoint& tau);

// e^{2*pi*i*t}
cx unit_phase(double t);

// ---------------------------------------------------------------------------
// Scaled complementary error function
// ---------------------------------------------------------------------------

// erfcx(t) = e^{t^2} erfc(t), t >= 0. Direct product for small t, Laplace
// continued fraction for large t (no overflow for any t).
double erfcx(double t);

// ---------------------------------------------------------------------------
// Certified summation
// ---------------------------------------------------------------------------

// Closed-form tail control for a term generator indexed by n = 0,1,2,...
// tail(n) must bound sum_{k>=n} |term(k)| for all n >= valid_from.
struct TailMajorant {
    std::function<double(std::int64_t)> tail;
    std::int64_t valid_from = 0;
};

// Sums term(0) + term(1) + ... stopping at the first n >= valid_from with
// tail(n) <= tol; the partial sum then satisfies |S - S_n| <= tol.
// Throws truncation_failure if max_terms is exhausted first.
cx sum_with_tail_bound(const std::function<cx(std::int64_t)>& term,
                       const TailMajorant& majorant, double tol,
                       std::int64_t max_terms = 2000000);

// Certified sum over a shifted 1-D lattice nu in a0 + Z of f(nu), given the
// majorant |f(nu)| <= M * (K + |nu-c|)^p * e^{-alpha (nu-c)^2} with p in {0,1}.
// Enumerates outward from the lattice point nearest the Gaussian center c.
cx sum_lattice_gaussian(const std::function<cx(double)>& f, double a0,
                        double center, double alpha, double M, double K, int p,
                        double tol);

// Closed-form bound on sum_{k>=0} (K + d + k)^p e^{-alpha (d+k)^2} for d > 0,
// p in {0,1}; +inf for d <= 0.
double gaussian_tail_bound(double d, double alpha, double K, int p);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

// Adaptive composite Gauss-Legendre on [a,b]: panels are bisected globally
// until two successive estimates differ by less than tol.
cx integrate_interval(const std::function<cx(double)>& f, double a, double b,
                      double tol, const QuadratureSpec& spec = {},
                      int initial_panels = 8);

// Integral over the real line of f with |f(x)| <= scale * e^{-pi y x^2 + 2 pi shift |x|}.
// `freq` estimates the local oscillation scale (|tau| for Gaussian kernels);
// it only affects the initial panel count, not correctness.
struct GaussianDecay {
    double y;
    double shift = 0.0;
    double scale = 1.0;
    double freq = 1.0;
};
cx integrate_real_line(const std::function<cx(double)>& f,
                       const GaussianDecay& decay, double tol,
                       const ToleranceProfile& prof = {},
                       const QuadratureSpec& spec = {});

// Integral over the vertical ray {z0 + i s : s >= 0} of g(z)/sqrt(-i(z+tau)),
// given |g(z0 + i s)| <= scale * e^{-pi nu0_sq (Im z0 + s)} with nu0_sq > 0.
// Requires Im(z0 + tau) > 0 so the weight stays on the principal branch.
struct RayDecay {
    double nu0_sq;
    double scale = 1.0;
};
cx integrate_vertical_ray(const std::function<cx(cx)>& g, cx z0,
                          const TauPoint& tau, const RayDecay& decay,
                          double tol, const ToleranceProfile& prof = {},
                          const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Lattice coordinates on Z tau + Z
// ---------------------------------------------------------------------------

struct LatticeCoords {
    double a = 0.0;
    double b = 0.0;
};

// z = a*tau + b
LatticeCoords lattice_coords_sum(cx z, const TauPoint& tau);
// u = a*tau - b
LatticeCoords lattice_coords_diff(cx u, const TauPoint& tau);

double dist_to_int(double t);
// sup-distance of (a,b) to Z^2; zero exactly on the lattice Z tau + Z.
double lattice_linf_distance(const LatticeCoords& c);

// ---------------------------------------------------------------------------
// Derivative stencils (used by verification suites and tests)
// ---------------------------------------------------------------------------

// d/d(conj w) of a real-analytic f at w, via central differences of step h.
cx wirtinger_dbar(const std::function<cx(cx)>& f, cx w, double h);

// Weight-1/2 Casimir  -4 y^2 d^2/(dtau dtaubar) + i y d/dtaubar + 3/16
// applied to f at tau by finite differences (5-point Laplacian stencil).
cx casimir_weight_half(const std::function<cx(TauPoint)>& f,
                       const TauPoint& tau, double h);

// ---------------------------------------------------------------------------
// Deterministic sampling
// ---------------------------------------------------------------------------

// mt19937_64 with a platform-independent mapping to doubles in [a,b).
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform(double a, double b) {
        const double u = double(eng() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }
};

}  // namespace mocktheta
