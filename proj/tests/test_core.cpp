#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mocktheta/core.hpp"

using namespace mocktheta;

TEST_CASE("principal sqrt of -i tau") {
    CHECK(std::abs(sqrt_principal_neg_i_tau(TauPoint(0, 1)) - cx(1, 0)) < 1e-15);
    CHECK(std::abs(sqrt_principal_neg_i_tau(TauPoint(0, 2)) - cx(std::sqrt(2.0), 0)) < 1e-15);

    // square must return -i tau, real part strictly positive
    Rng rng(7);
    for (int k = 0; k < 1000; ++k) {
        const TauPoint tau(rng.uniform(-10, 10), rng.uniform(0.1, 10));
        const cx r = sqrt_principal_neg_i_tau(tau);
        CHECK(r.real() > 0.0);
        CHECK(std::abs(r * r - cx(tau.y, -tau.x)) < 1e-14 * (1.0 + std::abs(r * r)));
    }
}

TEST_CASE("(-i tau)^{3/2} composes root and square") {
    const TauPoint tau(0.7, 1.3);
    const cx r = sqrt_principal_neg_i_tau(tau);
    CHECK(std::abs(pow_neg_i_tau_32(tau) - r * r * r) < 1e-14);
}

TEST_CASE("erfcx matches erfc on the crossover and beyond") {
    for (double t : {0.0, 0.5, 1.0, 2.0, 2.4999, 2.5, 3.0, 5.0, 8.0, 12.0}) {
        const double direct = std::exp(t * t) * std::erfc(t);
        CHECK(erfcx(t) == doctest::Approx(direct).epsilon(1e-12));
    }
    // asymptotic sanity: erfcx(t) ~ 1/(t sqrt(pi))
    CHECK(erfcx(50.0) == doctest::Approx(1.0 / (50.0 * std::sqrt(kPi))).epsilon(1e-3));
    CHECK(std::isfinite(erfcx(1e4)));
}

TEST_CASE("sum_with_tail_bound: geometric series") {
    const double r = 0.5;
    auto term = [&](std::int64_t n) -> cx { return std::pow(r, double(n)); };
    TailMajorant maj;
    maj.tail = [&](std::int64_t n) { return std::pow(r, double(n)) / (1.0 - r); };
    const cx s = sum_with_tail_bound(term, maj, 1e-12);
    CHECK(std::abs(s - 2.0) < 1e-12);
}

TEST_CASE("sum_with_tail_bound: Gaussian terms vs long partial sum") {
    auto term = [&](std::int64_t n) -> cx { return std::exp(-kPi * double(n) * double(n)); };
    TailMajorant maj;
    maj.valid_from = 1;
    maj.tail = [&](std::int64_t n) {
        // e^{-pi n^2} decays faster than geometric with ratio e^{-pi n}
        return std::exp(-kPi * double(n) * double(n)) /
               (1.0 - std::exp(-kPi * double(n)));
    };
    const cx s = sum_with_tail_bound(term, maj, 1e-12);
    double brute = 0.0;  // independent oracle to n = 50
    for (int n = 50; n >= 0; --n) brute += std::exp(-kPi * double(n) * double(n));
    CHECK(std::abs(s - brute) < 1e-12);
}

TEST_CASE("sum_with_tail_bound: empty generator returns zero") {
    auto term = [&](std::int64_t) -> cx { FAIL("term must not be called"); return 0.0; };
    TailMajorant maj;
    maj.tail = [](std::int64_t) { return 0.0; };
    CHECK(sum_with_tail_bound(term, maj, 1e-12) == cx(0.0));
}

TEST_CASE("sum_with_tail_bound: budget exhaustion reports truncation failure") {
    auto term = [&](std::int64_t) -> cx { return 1e-3; };
    TailMajorant maj;
    maj.tail = [](std::int64_t) { return 1.0; };
    CHECK_THROWS_AS(sum_with_tail_bound(term, maj, 1e-12, 100), truncation_failure);
}

TEST_CASE("sum result stable under doubling the term budget") {
    auto term = [&](std::int64_t n) -> cx {
        return std::exp(-0.3 * double(n)) * unit_phase(0.17 * double(n));
    };
    TailMajorant maj;
    maj.tail = [&](std::int64_t n) { return std::exp(-0.3 * double(n)) / (1.0 - std::exp(-0.3)); };
    const cx a = sum_with_tail_bound(term, maj, 1e-11, 1000000);
    const cx b = sum_with_tail_bound(term, maj, 1e-11, 2000000);
    CHECK(std::abs(a - b) == 0.0);
}

TEST_CASE("integrate_real_line: Gaussian normalization") {
    auto f = [](double x) -> cx { return std::exp(-kPi * x * x); };
    const cx v = integrate_real_line(f, {1.0, 0.0, 1.0, 1.0}, 1e-12);
    CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("integrate_real_line: sech(pi x) integrates to 1") {
    auto f = [](double x) -> cx { return 1.0 / std::cosh(kPi * x); };
    // sech(pi x) <= 2 e^{-pi |x|}: exponential envelope, y = 0
    GaussianDecay d;
    d.y = 0.0;
    d.shift = -0.5;
    d.scale = 2.0;
    const cx v = integrate_real_line(f, d, 1e-10);

    // independent oracle: brute-force Simpson quadrature
    const double X = 9.0;
    const int n = 400000;
    const double h = 2.0 * X / n;
    cx acc = f(-X) + f(X);
    for (int k = 1; k < n; ++k) acc += f(-X + k * h) * ((k % 2) ? 4.0 : 2.0);
    acc *= h / 3.0;
    CHECK(std::abs(v - 1.0) < 1e-10);
    CHECK(std::abs(acc - 1.0) < 1e-10);
    CHECK(std::abs(v - acc) < 1e-10);
}

TEST_CASE("integrate_real_line: odd integrand vanishes") {
    auto f = [](double x) -> cx { return x * std::exp(-kPi * x * x); };
    const cx v = integrate_real_line(f, {1.0, 0.0, 1.0, 1.0}, 1e-12);
    CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("integrate_real_line: even integrand equals twice the half line") {
    auto f = [](double x) -> cx {
        return std::exp(-kPi * 0.8 * x * x) * std::cos(x);
    };
    const cx whole = integrate_real_line(f, {0.8, 0.0, 1.0, 1.0}, 1e-11);
    const cx half = integrate_interval(f, 0.0, 12.0, 1e-12, {}, 32);
    CHECK(std::abs(whole - 2.0 * half) < 1e-10);
}

TEST_CASE("integrate_vertical_ray: zero integrand") {
    auto g = [](cx) -> cx { return 0.0; };
    const cx v = integrate_vertical_ray(g, cx(0, 1), TauPoint(0, 1), {1.0, 1.0}, 1e-12);
    CHECK(std::abs(v) == 0.0);
}

TEST_CASE("integrate_vertical_ray matches a composite Simpson oracle") {
    // g(z) = e^{pi i z} along z = i + i s, tau = i
    const TauPoint tau(0, 1);
    const cx z0(0, 1);
    auto g = [](cx z) -> cx { return std::exp(kPi * kI * z); };
    const cx v = integrate_vertical_ray(g, z0, tau, {1.0, 1.0}, 1e-10);

    // oracle: fine Simpson rule on s in [0, S]
    auto integrand = [&](double s) -> cx {
        const cx z = z0 + cx(0, s);
        return g(z) * kI / sqrt_neg_i(z + tau.value());
    };
    const double S = 14.0;
    const int n = 200000;  // even
    const double h = S / n;
    cx acc = integrand(0.0) + integrand(S);
    for (int k = 1; k < n; ++k) acc += integrand(k * h) * ((k % 2) ? 4.0 : 2.0);
    acc *= h / 3.0;
    CHECK(std::abs(v - acc) < 1e-9);
}

TEST_CASE("integrate_vertical_ray rejects vanishing decay") {
    auto g = [](cx) -> cx { return 1.0; };
    CHECK_THROWS_AS(
        integrate_vertical_ray(g, cx(0, 1), TauPoint(0, 1), {0.0, 1.0}, 1e-10),
        no_decay);
}

TEST_CASE("ray weight at the base: tau = i, z0 = -conj(tau)") {
    const TauPoint tau(0, 1);
    const cx z0(0, 1);  // -conj(i) = i
    CHECK(std::abs(sqrt_neg_i(z0 + tau.value()) - cx(std::sqrt(2.0), 0)) < 1e-15);
}

TEST_CASE("lattice coordinates round trip") {
    const TauPoint tau(0.3, 1.7);
    const cx u(0.4, -0.2);
    const auto d = lattice_coords_diff(u, tau);
    CHECK(std::abs(d.a * tau.value() - d.b - u) < 1e-12);
    const auto s = lattice_coords_sum(u, tau);
    CHECK(std::abs(s.a * tau.value() + s.b - u) < 1e-12);
}

TEST_CASE("tau point validation") {
    CHECK_THROWS_AS(TauPoint(0.0, -1.0), bad_input);
    CHECK_THROWS_AS(TauPoint(0.0, 0.0), bad_input);
    CHECK(degraded_region(TauPoint(0, 0.1)));
    CHECK(!degraded_region(TauPoint(0, 0.5)));
    CHECK(degraded_region(TauPoint(0, 1.0), 9.0));
}
