#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mocktheta/lerch.hpp"
#include "mocktheta/theta.hpp"

using namespace mocktheta;
using namespace mocktheta::lerch;

namespace {
constexpr double kTol = 1e-11;

MuArgs margs(cx u, cx v, const TauPoint& tau) { return {u, v, tau}; }
}  // namespace

TEST_CASE("mordell h: evenness") {
    const TauPoint tau(0, 1);
    const cx z(0.3, 0.1);
    CHECK(std::abs(mordell_h(z, tau, kTol) - mordell_h(-z, tau, kTol)) < 1e-10);
}

TEST_CASE("mordell h: shift by one") {
    const TauPoint tau(0, 1);
    const cx z(0.2, 0.0);
    const cx lhs = mordell_h(z, tau, kTol) + mordell_h(z + 1.0, tau, kTol);
    const cx zz = (z + 0.5) * (z + 0.5);
    const cx rhs = 2.0 / sqrt_principal_neg_i_tau(tau) *
                   std::exp(kPi * kI * zz / tau.value());
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("mordell h: shift by tau") {
    const TauPoint tau(0.3, 1.2);
    const cx z(0.15, -0.1);
    const cx tv = tau.value();
    const cx lhs = mordell_h(z, tau, kTol) +
                   std::exp(-2.0 * kPi * kI * z - kPi * kI * tv) *
                       mordell_h(z + tv, tau, kTol);
    const cx rhs = 2.0 * std::exp(-kPi * kI * z - kPi * kI * tv / 4.0);
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("mordell h: modular inversion") {
    const TauPoint tau(0.4, 1.1);
    const cx tv = tau.value();
    const cx z(0.25, 0.05);
    const cx lhs = mordell_h(z / tv, TauPoint(-1.0 / tv), kTol);
    const cx rhs = sqrt_principal_neg_i_tau(tau) *
                   std::exp(-kPi * kI * z * z / tv) * mordell_h(z, tau, kTol);
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("mordell h: three-term relation with tau+1 and tau/(tau+1)") {
    const TauPoint tau(0.2, 0.9);
    const cx tv = tau.value();
    const cx z(0.3, 0.1);
    const cx t1 = tv + 1.0;
    const cx lhs = mordell_h(z, tau, kTol);
    const cx rhs = std::exp(kPi * kI / 4.0) * mordell_h(z, TauPoint(t1), kTol) +
                   std::exp(-kPi * kI / 4.0) * std::exp(kPi * kI * z * z / t1) /
                       std::sqrt(t1) * mordell_h(z / t1, TauPoint(tv / t1), kTol);
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("mordell h(0; i): high-resolution Simpson oracle") {
    // oracle: composite Simpson over |x| <= 8 with 10^6 points
    const int n = 1000000;
    const double X = 8.0;
    const double h = 2.0 * X / n;
    auto f = [](double x) { return std::exp(-kPi * x * x) / std::cosh(kPi * x); };
    double acc = f(-X) + f(X);
    for (int k = 1; k < n; ++k) acc += f(-X + k * h) * ((k % 2) ? 4.0 : 2.0);
    acc *= h / 3.0;
    const cx v = mordell_h(0.0, TauPoint(0, 1), 1e-12);
    CHECK(std::abs(v - acc) < 1e-10);
    CHECK(std::abs(v.imag()) < 1e-11);
}

TEST_CASE("E and beta basics") {
    CHECK(erf_like_E(0.0) == 0.0);
    CHECK(erf_like_E(-0.7) == -erf_like_E(0.7));
    CHECK(std::abs(erf_like_E(cx(0.0, 0.0))) == 0.0);
    // E(x) = sign(x)(1 - beta(x^2)) on the real line
    for (double x : {0.3, 1.3, 2.7}) {
        CHECK(erf_like_E(x) == doctest::Approx(1.0 - beta_tail(x * x)).epsilon(1e-14));
        CHECK(erf_like_E(-x) == doctest::Approx(-(1.0 - beta_tail(x * x))).epsilon(1e-14));
    }
    CHECK(beta_tail(0.0) == doctest::Approx(1.0));
    CHECK(beta_tail(1.0) <= std::exp(-kPi));
    CHECK(beta_tail(2.0) <= std::exp(-2.0 * kPi));
    CHECK_THROWS_AS(beta_tail(-0.5), bad_input);
    // complex power series agrees with the real route on the axis segment
    for (double x : {0.1, 0.9, 1.8}) {
        CHECK(std::abs(erf_like_E(cx(x, 1e-30)) - erf_like_E(x)) < 1e-12);
    }
    // and with a independently computed Simpson integral off the axis
    {
        const cx z(0.7, 0.4);
        const int n = 20000;
        cx acc = 1.0 + std::exp(-kPi * z * z);  // endpoints of 2 e^{-pi (tz)^2} z dt
        for (int k = 1; k < n; ++k) {
            const double t = double(k) / n;
            acc += std::exp(-kPi * t * t * z * z) * ((k % 2) ? 4.0 : 2.0);
        }
        acc *= 2.0 * z / (3.0 * double(n));
        CHECK(std::abs(erf_like_E(z) - acc) < 1e-10);
    }
}

TEST_CASE("lerch mu: symmetry and parity") {
    const TauPoint tau(0, 1);
    const cx u(0.2, 0.1), v(0.31, -0.05);
    const cx m0 = lerch_mu(margs(u, v, tau), kTol);
    CHECK(std::abs(lerch_mu(margs(v, u, tau), kTol) - m0) < 1e-9);
    CHECK(std::abs(lerch_mu(margs(-u, -v, tau), kTol) - m0) < 1e-9);
}

TEST_CASE("lerch mu: elliptic laws in u") {
    const TauPoint tau(0.2, 1.3);
    const cx tv = tau.value();
    const cx u(0.23, 0.11), v(-0.17, 0.26);
    const cx m0 = lerch_mu(margs(u, v, tau), kTol);
    CHECK(std::abs(lerch_mu(margs(u + 1.0, v, tau), kTol) + m0) < 1e-9);
    CHECK(std::abs(lerch_mu(margs(u, v + 1.0, tau), kTol) + m0) < 1e-9);
    // mu(u,v) + e^{-2 pi i(u-v) - pi i tau} mu(u+tau, v) = -i e^{-pi i(u-v) - pi i tau/4}
    const cx lhs = m0 + std::exp(-2.0 * kPi * kI * (u - v) - kPi * kI * tv) *
                            lerch_mu(margs(u + tv, v, tau), kTol);
    const cx rhs = -kI * std::exp(-kPi * kI * (u - v) - kPi * kI * tv / 4.0);
    CHECK(std::abs(lhs - rhs) < 1e-9);
    // double shift invariance
    CHECK(std::abs(lerch_mu(margs(u + tv, v + tv, tau), kTol) - m0) < 1e-9);
}

TEST_CASE("lerch mu: residue at u=0 via contour average") {
    const TauPoint tau(0, 1);
    const cx v(0.3, 0.12);
    auto f = [&](cx u) { return lerch_mu(margs(u, v, tau), kTol); };
    const cx res = contour_residue(f, 0.0, 1e-2, 32);
    const cx expect = -1.0 / (2.0 * kPi * kI * th::jacobi_theta(v, tau, kTol));
    CHECK(std::abs(res - expect) < 1e-10);
}

TEST_CASE("lerch mu: quotient identity for the shift by z") {
    const TauPoint tau(0.1, 1.0);
    const cx u(0.21, 0.13), v(-0.12, 0.31), z(0.15, -0.22);
    const double tol = kTol;
    const cx lhs = lerch_mu(margs(u + z, v + z, tau), tol) - lerch_mu(margs(u, v, tau), tol);
    const cx rhs = th::theta_deriv0(tau, tol) * th::jacobi_theta(u + v + z, tau, tol) *
                   th::jacobi_theta(z, tau, tol) /
                   (2.0 * kPi * kI * th::jacobi_theta(u, tau, tol) *
                    th::jacobi_theta(v, tau, tol) * th::jacobi_theta(u + z, tau, tol) *
                    th::jacobi_theta(v + z, tau, tol));
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("lerch mu: modular T and S laws") {
    const TauPoint tau(0.3, 1.1);
    const cx tv = tau.value();
    const cx u(0.2, 0.1), v(0.05, -0.2);
    const cx m0 = lerch_mu(margs(u, v, tau), kTol);
    const cx mT = lerch_mu(margs(u, v, TauPoint(tau.x + 1, tau.y)), kTol);
    CHECK(std::abs(mT - std::exp(-kPi * kI / 4.0) * m0) < 1e-9);

    const cx d = u - v;
    const cx lhs = lerch_mu(margs(u / tv, v / tv, TauPoint(-1.0 / tv)), kTol) *
                       std::exp(kPi * kI * d * d / tv) /
                       sqrt_principal_neg_i_tau(tau) +
                   m0;
    const cx rhs = mordell_h(d, tau, kTol) / (2.0 * kI);
    CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("lerch mu: pole proximity raises") {
    const TauPoint tau(0, 1);
    CHECK_THROWS_AS(lerch_mu(margs(cx(1e-10, 0), cx(0.3, 0), tau), kTol), pole_proximity);
    CHECK_THROWS_AS(lerch_mu(margs(cx(0.3, 0), cx(1.0, 1.0) + 1e-10, tau), kTol),
                    pole_proximity);
}

TEST_CASE("R: parity and elliptic laws") {
    {
        const TauPoint tau(0, 1);
        const cx u(0.2, 0.3);
        CHECK(std::abs(correction_R(-u, tau, kTol) - correction_R(u, tau, kTol)) < 1e-10);
    }
    {
        const TauPoint tau(0, 2);
        const cx u(0.1, 0.0);
        const cx tv = tau.value();
        const cx lhs = correction_R(u, tau, kTol) +
                       std::exp(-2.0 * kPi * kI * u - kPi * kI * tv) *
                           correction_R(u + tv, tau, kTol);
        const cx rhs = 2.0 * std::exp(-kPi * kI * u - kPi * kI * tv / 4.0);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
    {
        const TauPoint tau(0.4, 0.9);
        const cx u(0.2, -0.3);
        const cx r = correction_R(u, tau, kTol);
        CHECK(std::abs(correction_R(u + 1.0, tau, kTol) + r) < 1e-10);
    }
}

TEST_CASE("R: modular inversion against the Mordell integral") {
    for (const TauPoint tau : {TauPoint(0, 1), TauPoint(0.3, 1.2)}) {
        const cx tv = tau.value();
        const cx u(0.3, 0.05);
        const cx lhs = std::exp(kPi * kI * u * u / tv) / sqrt_principal_neg_i_tau(tau) *
                           correction_R(u / tv, TauPoint(-1.0 / tv), kTol) +
                       correction_R(u, tau, kTol);
        CHECK(std::abs(lhs - mordell_h(u, tau, kTol)) < 1e-9);
    }
}

TEST_CASE("R: T-transform picks up e^{-pi i/4}") {
    const TauPoint tau(0.2, 1.4);
    const cx u(0.14, 0.21);
    const cx lhs = correction_R(u, TauPoint(tau.x + 1, tau.y), kTol);
    CHECK(std::abs(lhs - std::exp(-kPi * kI / 4.0) * correction_R(u, tau, kTol)) < 1e-10);
}

TEST_CASE("R: d/d(conj u) differential equation") {
    const TauPoint tau(0.3, 1.1);
    const cx u(0.23, 0.31);
    auto f = [&](cx w) { return correction_R(w, tau, 1e-12); };
    const cx lhs = wirtinger_dbar(f, u, 1e-5);
    const double y = tau.y;
    const double a = u.imag() / y;
    const cx rhs = std::sqrt(2.0) / std::sqrt(y) * std::exp(-2.0 * kPi * a * a * y) *
                   th::jacobi_theta(std::conj(u), TauPoint(-tau.x, tau.y), 1e-12);
    CHECK(std::abs(lhs - rhs) < 1e-4);
}

TEST_CASE("completed mu: elliptic invariance and symmetry group") {
    const TauPoint tau(0.2, 1.0);
    const cx tv = tau.value();
    const cx u(0.23, 0.17), v(-0.11, -0.07);
    const cx m = completed_mu(margs(u, v, tau), kTol);
    CHECK(std::abs(completed_mu(margs(u + 1.0, v, tau), kTol) + m) < 1e-9);
    CHECK(std::abs(completed_mu(margs(u + tv, v + tv, tau), kTol) - m) < 1e-9);
    CHECK(std::abs(completed_mu(margs(-u, -v, tau), kTol) - m) < 1e-9);
    CHECK(std::abs(completed_mu(margs(v, u, tau), kTol) - m) < 1e-9);

    // full elliptic law for k,l,m,n in {-1,0,1}
    for (int k = -1; k <= 1; ++k) {
        for (int l = -1; l <= 1; ++l) {
            for (int mm = -1; mm <= 1; ++mm) {
                for (int n = -1; n <= 1; ++n) {
                    const cx lhs = completed_mu(
                        margs(u + double(k) * tv + double(l),
                              v + double(mm) * tv + double(n), tau),
                        kTol);
                    const double km = k - mm;
                    const cx phase = ((k + l + mm + n) % 2 ? -1.0 : 1.0) *
                                     std::exp(kPi * kI * km * km * tv +
                                              2.0 * kPi * kI * km * (u - v));
                    CHECK(std::abs(lhs - phase * m) < 1e-8 * (1.0 + std::abs(phase)));
                }
            }
        }
    }
}

TEST_CASE("completed mu: S-transform") {
    const TauPoint tau(0, 1);
    const cx tv = tau.value();
    const cx u(0.2, 0.1), v(-0.1, 0.2);
    const cx lhs = completed_mu(margs(u / tv, v / tv, TauPoint(-1.0 / tv)), kTol);
    const cx d = u - v;
    const cx rhs = -sqrt_principal_neg_i_tau(tau) * std::exp(-kPi * kI * d * d / tv) *
                   completed_mu(margs(u, v, tau), kTol);
    CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("completed mu: T-transform") {
    const TauPoint tau(0.3, 0.8);
    const cx u(0.21, 0.09), v(-0.14, 0.22);
    const cx lhs = completed_mu(margs(u, v, TauPoint(tau.x + 1, tau.y)), kTol);
    const cx rhs = std::exp(-kPi * kI / 4.0) * completed_mu(margs(u, v, tau), kTol);
    CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("period integral: R side") {
    const struct { double a, b; TauPoint tau; } cases[] = {
        {0.2, 0.1, TauPoint(0, 1)},
        {0.0, 0.3, TauPoint(0.2, 1.1)},
        {-0.3, -0.2, TauPoint(-0.1, 0.8)},
    };
    for (const auto& c : cases) {
        const cx integral = period_integral_R(c.a, c.b, c.tau, 1e-9);
        const cx tv = c.tau.value();
        const cx arg = c.a * tv - c.b;
        const cx rhs = -std::exp(-kPi * kI * c.a * c.a * tv) * unit_phase(c.a * (c.b + 0.5)) *
                       correction_R(arg, c.tau, 1e-11);
        CHECK(std::abs(integral - rhs) < 1e-7);
    }
}

TEST_CASE("period integral: h side") {
    const struct { double a, b; TauPoint tau; } cases[] = {
        {0.2, 0.1, TauPoint(0, 1)},
        {0.0, 0.0, TauPoint(0, 1)},
        {-0.25, 0.3, TauPoint(0.3, 1.2)},
    };
    for (const auto& c : cases) {
        const cx integral = period_integral_h(c.a, c.b, c.tau, 1e-9);
        const cx tv = c.tau.value();
        const cx arg = c.a * tv - c.b;
        const cx rhs = -std::exp(-kPi * kI * c.a * c.a * tv) * unit_phase(c.a * (c.b + 0.5)) *
                       mordell_h(arg, c.tau, 1e-11);
        CHECK(std::abs(integral - rhs) < 1e-7);
    }
}

TEST_CASE("period integral: boundary characteristics are rejected") {
    CHECK_THROWS_AS(period_integral_R(0.5, 0.1, TauPoint(0, 1), 1e-8),
                    boundary_characteristic);
    CHECK_THROWS_AS(period_integral_h(0.2, -0.5, TauPoint(0, 1), 1e-8),
                    boundary_characteristic);
}

TEST_CASE("elliptic point coordinates reconstruct") {
    const TauPoint tau(0.37, 1.21);
    const cx u(0.4, -0.6);
    const auto pd = EllipticPoint::diff(u, tau);
    CHECK(std::abs(pd.reconstruct(tau) - u) < 1e-12);
    const auto ps = EllipticPoint::sum(u, tau);
    CHECK(std::abs(ps.reconstruct(tau) - u) < 1e-12);
}
