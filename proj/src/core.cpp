#include "mocktheta/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

namespace mocktheta {

cx sqrt_neg_i(cx w) { return std::sqrt(cx(w.imag(), -w.real())); }

cx sqrt_principal_neg_i_tau(const TauPoint& tau) {
    // -i*tau = y - i*x has real part y > 0, so the principal root has Re > 0.
    return std::sqrt(cx(tau.y, -tau.x));
}

cx pow_neg_i_tau_32(const TauPoint& tau) {
    const cx w(tau.y, -tau.x);
    return w * std::sqrt(w);
}

cx unit_phase(double t) {
    return std::polar(1.0, 2.0 * kPi * t);
}

double erfcx(double t) {
    if (t < 0.0) throw bad_input("erfcx requires t >= 0");
    if (t < 2.5) return std::exp(t * t) * std::erfc(t);
    // Laplace continued fraction:
    //   sqrt(pi) e^{t^2} erfc(t) = 1/(t + (1/2)/(t + 1/(t + (3/2)/(t + ...))))
    double cf = 0.0;
    for (int k = 64; k >= 1; --k) cf = (0.5 * k) / (t + cf);
    return 1.0 / ((t + cf) * std::sqrt(kPi));
}

// ---------------------------------------------------------------------------
// Certified summation
// ---------------------------------------------------------------------------

cx sum_with_tail_bound(const std::function<cx(std::int64_t)>& term,
                       const TailMajorant& majorant, double tol,
                       std::int64_t max_terms) {
    cx s = 0.0;
    for (std::int64_t n = 0;; ++n) {
        if (n >= majorant.valid_from && majorant.tail(n) <= tol) return s;
        if (n >= max_terms)
            throw truncation_failure("series tail not certified within term budget");
        s += term(n);
    }
}

// Uses e^{-alpha(d+k)^2} <= e^{-alpha d^2} x^k with x = e^{-2 alpha d}.
double gaussian_tail_bound(double d, double alpha, double K, int p) {
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    const double x = std::exp(-2.0 * alpha * d);
    const double head = std::exp(-alpha * d * d);
    const double geo = 1.0 / (1.0 - x);
    if (p == 0) return head * geo;
    return head * ((K + d) * geo + x * geo * geo);
}

cx sum_lattice_gaussian(const std::function<cx(double)>& f, double a0,
                        double center, double alpha, double M, double K, int p,
                        double tol) {
    if (!(alpha > 0.0)) throw bad_input("lattice sum needs positive Gaussian rate");
    const std::int64_t n0 = std::llround(center - a0);
    // Enumeration: offsets 0, +1, -1, +2, -2, ... around n0. After index j the
    // un-summed points are at distance >= floor((j-1)/2) + 1 - 1/2 from the
    // center (the nearest lattice point is within 1/2 of it).
    auto offset = [](std::int64_t j) -> std::int64_t {
        if (j == 0) return 0;
        const std::int64_t k = (j + 1) / 2;
        return (j % 2 == 1) ? k : -k;
    };
    auto term = [&](std::int64_t j) -> cx {
        return f(a0 + double(n0 + offset(j)));
    };
    TailMajorant maj;
    maj.valid_from = 3;
    maj.tail = [=](std::int64_t j) -> double {
        const double d = double((j - 1) / 2) + 0.5;
        return 2.0 * M * gaussian_tail_bound(d, alpha, K, p);
    };
    return sum_with_tail_bound(term, maj, tol);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre panels
// ---------------------------------------------------------------------------

namespace {

struct GlRule {
    std::vector<double> nodes;    // on (-1,1)
    std::vector<double> weights;
};

GlRule make_gl_rule(int n) {
    GlRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
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
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

const GlRule& gl_rule(int n) {
    static std::mutex mu;
    static std::map<int, GlRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gl_rule(n)).first;
    return it->second;
}

cx gl_fixed(const std::function<cx(double)>& f, double a, double b, int panels,
            const GlRule& rule) {
    const double h = (b - a) / panels;
    cx s = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double m = a + (k + 0.5) * h;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * f(m + 0.5 * h * rule.nodes[i]);
    }
    return s * (0.5 * h);
}

}  // namespace

cx integrate_interval(const std::function<cx(double)>& f, double a, double b,
                      double tol, const QuadratureSpec& spec,
                      int initial_panels) {
    spec.validate();
    if (a == b) return 0.0;
    const GlRule& rule = gl_rule(spec.panel_order);
    int panels = std::max(1, initial_panels);
    cx prev = gl_fixed(f, a, b, panels, rule);
    while (2 * panels <= spec.max_panels) {
        panels *= 2;
        const cx cur = gl_fixed(f, a, b, panels, rule);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw quadrature_failure("panel refinement did not converge");
}

cx integrate_real_line(const std::function<cx(double)>& f,
                       const GaussianDecay& decay, double tol,
                       const ToleranceProfile& prof, const QuadratureSpec& spec) {
    prof.validate();
    spec.validate();
    if (!(decay.y > 0.0) && !(decay.y == 0.0 && decay.shift < 0.0))
        throw bad_input("integrand needs Gaussian or exponential decay");
    const double tail_tol = tol * prof.tail_budget;
    const double s = decay.shift;
    // Truncation radius X: for x >= X the exponent derivative is
    // <= -2 pi (yX - s), so the two tails together are bounded by
    //   2 scale e^{-pi y X^2 + 2 pi s X} / (2 pi (yX - s)).
    double X = decay.y > 0.0
                   ? std::max(1.0, 2.0 * std::max(0.0, s) / decay.y + 1.0)
                   : 1.0;
    for (int it = 0;; ++it) {
        const double slope = 2.0 * kPi * (decay.y * X - s);
        const double bound =
            2.0 * decay.scale *
            std::exp(-kPi * decay.y * X * X + 2.0 * kPi * s * X) / slope;
        if (slope > 0.0 && bound <= tail_tol) break;
        X *= 1.5;
        if (it > 200) throw quadrature_failure("no usable truncation radius");
    }
    X *= spec.radius_margin;
    const double quad_tol = tol * (1.0 - prof.tail_budget);
    const int init = std::max<int>(
        8, int(std::ceil(2.0 * X * std::max(1.0, decay.freq * X / 6.0))));
    return integrate_interval(f, -X, X, quad_tol, spec, init);
}

cx integrate_vertical_ray(const std::function<cx(cx)>& g, cx z0,
                          const TauPoint& tau, const RayDecay& decay,
                          double tol, const ToleranceProfile& prof,
                          const QuadratureSpec& spec) {
    prof.validate();
    spec.validate();
    if (!(decay.nu0_sq > 0.0)) throw no_decay("ray integrand has no decay");
    const double h0 = z0.imag();
    const double base = (z0 + tau.value()).imag();
    if (!(base > 0.0)) throw bad_input("ray base must satisfy Im(z0 + tau) > 0");
    const double rate = kPi * decay.nu0_sq;
    const double tail_tol = tol * prof.tail_budget;
    // |integrand(s)| <= scale e^{-rate (h0+s)} / sqrt(base + s); tail beyond S
    // is bounded by scale e^{-rate (h0+S)} / (rate sqrt(base + S)).
    double S = 1.0;
    for (int it = 0;; ++it) {
        const double bound = decay.scale * std::exp(-rate * (h0 + S)) /
                             (rate * std::sqrt(base + S));
        if (bound <= tail_tol) break;
        S = S * 1.5 + 1.0;
        if (it > 400) throw quadrature_failure("no usable ray truncation height");
    }
    S *= spec.radius_margin;
    auto integrand = [&](double s) -> cx {
        const cx z = z0 + cx(0.0, s);
        return g(z) * kI / sqrt_neg_i(z + tau.value());
    };
    // Dyadic segments; the integrand mass on [s,inf) decays like e^{-rate s},
    // so split the quadrature tolerance proportionally.
    const double quad_tol = tol * (1.0 - prof.tail_budget);
    std::vector<double> cuts{0.0, 1.0};
    while (cuts.back() < S) cuts.push_back(std::min(S, 2.0 * cuts.back()));
    cx total = 0.0;
    double mass = 0.0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) mass += std::exp(-rate * cuts[k]);
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double frac = std::exp(-rate * cuts[k]) / mass;
        total += integrate_interval(integrand, cuts[k], cuts[k + 1],
                                    quad_tol * frac, spec, 8);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Lattice coordinates
// ---------------------------------------------------------------------------

LatticeCoords lattice_coords_sum(cx z, const TauPoint& tau) {
    LatticeCoords c;
    c.a = z.imag() / tau.y;
    c.b = z.real() - c.a * tau.x;
    return c;
}

LatticeCoords lattice_coords_diff(cx u, const TauPoint& tau) {
    LatticeCoords c;
    c.a = u.imag() / tau.y;
    c.b = c.a * tau.x - u.real();
    return c;
}

double dist_to_int(double t) {
    return std::abs(t - std::round(t));
}

double lattice_linf_distance(const LatticeCoords& c) {
    return std::max(dist_to_int(c.a), dist_to_int(c.b));
}

// ---------------------------------------------------------------------------
// Derivative stencils
// ---------------------------------------------------------------------------

cx wirtinger_dbar(const std::function<cx(cx)>& f, cx w, double h) {
    const cx fx = (f(w + h) - f(w - h)) / (2.0 * h);
    const cx fy = (f(w + cx(0.0, h)) - f(w - cx(0.0, h))) / (2.0 * h);
    return 0.5 * (fx + kI * fy);
}

cx casimir_weight_half(const std::function<cx(TauPoint)>& f,
                       const TauPoint& tau, double h) {
    // d^2/(dtau dtaubar) = (1/4) (d^2/dx^2 + d^2/dy^2)
    const cx f0 = f(tau);
    const cx fxp = f(TauPoint(tau.x + h, tau.y));
    const cx fxm = f(TauPoint(tau.x - h, tau.y));
    const cx fyp = f(TauPoint(tau.x, tau.y + h));
    const cx fym = f(TauPoint(tau.x, tau.y - h));
    const cx lap = (fxp + fxm + fyp + fym - 4.0 * f0) / (h * h);
    const cx dbar = 0.5 * ((fxp - fxm) / (2.0 * h) + kI * (fyp - fym) / (2.0 * h));
    const double y = tau.y;
    return -y * y * lap + kI * y * dbar + (3.0 / 16.0) * f0;
}

}  // namespace mocktheta
