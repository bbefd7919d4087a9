#include "mocktheta/jacobi_fourier.hpp"

#include <algorithm>
#include <cmath>

#include "mocktheta/lerch.hpp"
#include "mocktheta/theta.hpp"

namespace mocktheta::jf {

namespace {

constexpr double kLatticeEps = 1e-8;
constexpr double kContourEps = 1e-6;

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

}  // namespace

cx block_f(cx u, cx z, const TauPoint& tau, long long m, double tol) {
    if (m < 1) throw bad_input("index m must be positive");
    const double y = tau.y;
    const cx tv = tau.value();
    if (lattice_linf_distance(lattice_coords_sum(z - u, tau)) < kLatticeEps)
        throw pole_proximity("z - u too close to the lattice");

    const double imz = z.imag(), imzu = (z - u).imag();
    const double alpha = 2.0 * kPi * double(m) * y;
    // numerator Gaussian centers (plain and denominator-factored form)
    const double c0 = -imz / y;
    const double c1 = -imz / y + 1.0 / (2.0 * double(m));
    const double M0 = std::exp(alpha * c0 * c0);
    const double M1 = std::exp(alpha * c1 * c1 + 2.0 * kPi * imzu);
    if (!std::isfinite(M0) || !std::isfinite(M1))
        throw truncation_failure("block sum outside the supported envelope");
    const double bfac = 1.0 / (1.0 - std::exp(-kPi * y));
    const long long n_plus = std::max<long long>(1, (long long)std::ceil(0.5 - imzu / y));
    const long long n_minus = std::max<long long>(1, (long long)std::ceil(0.5 + imzu / y));

    long long W = std::max<long long>({n_plus, n_minus,
                                       (long long)std::ceil(std::abs(c0)) + 1,
                                       (long long)std::ceil(std::abs(c1)) + 1, 2});
    for (;; ++W) {
        const double tp = bfac * M0 * gaussian_tail_bound(W + 1 + c0, alpha, 0, 0);
        const double tm = bfac * M1 * gaussian_tail_bound(W + 1 - c1, alpha, 0, 0);
        if (tp + tm <= 0.5 * tol) break;
        if (W > 2000000) throw truncation_failure("block window not certified");
    }

    cx sum = 0.0;
    for (long long lam = -W; lam <= W; ++lam) {
        const cx X = 2.0 * kPi * kI * double(m) * double(lam) * double(lam) * tv +
                     4.0 * kPi * kI * double(m) * double(lam) * z;
        const cx w = 2.0 * kPi * kI * (double(lam) * tv + (z - u));
        if (w.real() <= 0.0) {
            sum += std::exp(X) / (1.0 - std::exp(w));
        } else {
            sum += -std::exp(X - w) / (1.0 - std::exp(-w));
        }
    }
    return sum;
}

cx correction_R_ml(long long m, long long l, cx u, const TauPoint& tau, double tol) {
    if (m < 1) throw bad_input("index m must be positive");
    const double y = tau.y;
    const cx tv = tau.value();
    const double au = u.imag() / y;
    const double shift = 2.0 * double(m) * au;  // E argument offset

    auto phase = [&](double lam) -> cx {
        return -kPi * kI * lam * lam * tv / (2.0 * double(m)) -
               2.0 * kPi * kI * lam * u;
    };

    // finite sign-difference part: lambda between -shift and -1/2
    cx fin = 0.0;
    {
        const double lo = std::min(-shift, -0.5) - 2.0 * double(m);
        const double hi = std::max(-shift, -0.5) + 2.0 * double(m);
        long long k_lo = (long long)std::floor((lo - double(l)) / double(2 * m));
        long long k_hi = (long long)std::ceil((hi - double(l)) / double(2 * m));
        for (long long k = k_lo; k <= k_hi; ++k) {
            const double lam = double(l + 2 * m * k);
            const double s1 = sgn(lam + 0.5), s2 = sgn(lam + shift);
            if (s1 == s2) continue;
            fin += (s1 - s2) * std::exp(phase(lam));
        }
    }

    // beta part, Gaussian in lambda around -shift
    const double alpha_k = 2.0 * kPi * double(m) * y;  // per unit step in k
    const double kcenter = (-shift - double(l)) / double(2 * m);
    auto f = [&](double kk) -> cx {
        const double lam = double(l) + 2.0 * double(m) * kk;
        const double t = lam + shift;
        const double s = sgn(t);
        if (s == 0.0) return 0.0;
        const double scaled = erfcx(std::sqrt(kPi * y / double(m)) * std::abs(t));
        const cx ex = phase(lam) - kPi * t * t * y / double(m);
        return s * scaled * std::exp(ex);
    };
    const cx beta_part = sum_lattice_gaussian(f, 0.0, kcenter, alpha_k, 1.0, 0.0, 0, tol);
    return fin + beta_part;
}

cx completed_block_f(cx u, cx z, const TauPoint& tau, long long m, double tol) {
    cx s = block_f(u, z, tau, m, 0.5 * tol);
    const double per = 0.25 * tol / double(2 * m);
    for (long long l = 0; l < 2 * m; ++l) {
        s -= 0.5 * correction_R_ml(m, l, u, tau, per) *
             th::theta_index_component(m, l, z, tau, per);
    }
    return s;
}

cx default_base_point(const TauPoint& tau) {
    return -0.5 * tau.value() - 0.5 + cx(0.01, 0.01);
}

namespace {

void check_elliptic_law(const JacobiFormSpec& phi, const TauPoint& tau) {
    const cx tv = tau.value();
    const cx probes[2] = {cx(0.31, 0.11) - 0.5 * tv, cx(-0.22, 0.07) - 0.3 * tv};
    for (const cx z : probes) {
        const cx v = phi.eval(z, tau);
        const double scale = std::max(1.0, std::abs(v));
        if (std::abs(phi.eval(z + 1.0, tau) - v) > 1e-6 * scale)
            throw bad_input("elliptic law fails at probe points (period 1)");
        const cx lam = std::exp(-2.0 * kPi * kI * double(phi.index) * (tv + 2.0 * z));
        const double lscale = std::max(1.0, std::abs(lam * v));
        if (std::abs(phi.eval(z + tv, tau) - lam * v) > 1e-6 * lscale)
            throw bad_input("elliptic law fails at probe points (period tau)");
    }
}

// trapezoid Fourier coefficients along the period, spectrally accurate for
// the analytic periodic integrand; doubles nodes until stable. The integral
// for residue class l is contour-independent within the pole-free strip
// Im z in (-y, 0) that the base point selects, so each l is extracted on the
// horizontal line Im z = -(l/2m) y (clamped off the strip walls): there the
// growth of the prefactor e^{-pi i l^2 tau/2m} is exactly offset by the decay
// of the mode e^{-2 pi i l z}, keeping every coefficient well conditioned.
std::vector<cx> fourier_integrals(const JacobiFormSpec& phi, const TauPoint& tau,
                                  cx p, double tol) {
    const double ap = -p.imag() / tau.y;
    if (!(ap > 0.0 && ap < 1.0))
        throw contour_error("base point must select the strip Im z in (-y, 0)");
    const long long m = phi.index;
    const long long L = 2 * m;
    std::vector<cx> out(L);
    for (long long l = 0; l < L; ++l) {
        const double al = std::clamp(double(l) / double(L), 0.02, 0.98);
        const cx pl(p.real(), -al * tau.y);
        const cx pref =
            std::exp(-kPi * kI * double(l * l) * tau.value() / double(2 * m));
        cx prev = 0.0;
        int N = 128;
        for (int pass = 0;; ++pass) {
            cx cur = 0.0;
            for (int j = 0; j < N; ++j) {
                const cx z = pl + double(j) / double(N);
                cur += phi.eval(z, tau) * std::exp(-2.0 * kPi * kI * double(l) * z);
            }
            cur *= pref / double(N);
            if (pass > 0 && std::abs(cur - prev) <= tol) {
                out[l] = cur;
                break;
            }
            prev = cur;
            N *= 2;
            if (N > (1 << 16))
                throw quadrature_failure("Fourier quadrature did not settle");
        }
    }
    return out;
}

}  // namespace

FourierVector theta_decompose_holomorphic(const JacobiFormSpec& phi,
                                          const TauPoint& tau, cx p, double tol) {
    if (!phi.poles.empty())
        throw bad_input("holomorphic decomposition on a form with a pole catalog");
    check_elliptic_law(phi, tau);
    FourierVector out;
    out.index = phi.index;
    out.h = fourier_integrals(phi, tau, p, tol);
    return out;
}

MeromorphicDecomposition decompose_meromorphic_simple(const JacobiFormSpec& phi,
                                                      const TauPoint& tau, cx p,
                                                      double tol) {
    check_elliptic_law(phi, tau);
    const long long m = phi.index;
    MeromorphicDecomposition out;
    out.h.index = m;

    // pole representatives inside P_p = p + (0,1)tau + (0,1)
    std::vector<cx> reps;
    for (const PolePosition& pp : phi.poles) {
        const LatticeCoords rel = lattice_coords_sum(pp.at(tau) - p, tau);
        const double fa = rel.a - std::floor(rel.a);
        const double fb = rel.b - std::floor(rel.b);
        if (fa < kContourEps || fa > 1.0 - kContourEps || fb < kContourEps ||
            fb > 1.0 - kContourEps)
            throw contour_error("pole on the cell boundary; move the base point");
        reps.push_back(p + fa * tau.value() + fb);
    }

    for (const cx u : reps) {
        const cx res = lerch::contour_residue(
            [&](cx z) { return phi.eval(z, tau); }, u, 1e-3, 64);
        out.finite_parts.emplace_back(u, -2.0 * kPi * kI * res);
    }

    out.h.h = fourier_integrals(phi, tau, p, tol);
    for (long long l = 0; l < 2 * m; ++l) {
        for (const auto& [u, du] : out.finite_parts)
            out.h.h[l] += 0.5 * du * correction_R_ml(m, l, u, tau, tol);
    }
    return out;
}

cx reconstruct(const MeromorphicDecomposition& dec, cx z, const TauPoint& tau,
               double tol) {
    const long long m = dec.h.index;
    cx s = 0.0;
    for (long long l = 0; l < 2 * m; ++l)
        s += dec.h.h[l] * th::theta_index_component(m, l, z, tau, tol);
    for (const auto& [u, du] : dec.finite_parts)
        s += du * completed_block_f(u, z, tau, m, tol);
    return s;
}

JacobiFormSpec pole_quotient_example() {
    JacobiFormSpec spec;
    spec.weight = 1;
    spec.index = 13;
    spec.poles = {{0.0, 0.0}};
    spec.eval = [](cx z, const TauPoint& tau) -> cx {
        const double tol = 1e-13;
        const cx t00 = th::theta_char({0.0, 0.0}, z, tau, tol);
        const cx t01 = th::theta_char({0.0, 0.5}, z, tau, tol);
        const cx t10 = th::theta_char({0.5, 0.0}, z, tau, tol);
        const cx t11 = th::theta_char({0.5, 0.5}, z, tau, tol);
        const cx eta = th::dedekind_eta(tau, tol);
        const cx delta = std::pow(eta, 24.0);
        const cx num = std::pow(t00 * t01 * t10, 9.0);
        return num / (delta * t11);
    };
    return spec;
}

cx example_shadow(long long l, const TauPoint& tau, double tol) {
    const cx tbar_scaled = -26.0 * std::conj(tau.value());
    const cx sum = th::theta_kernel_sum(double(l) / 26.0, 1, tbar_scaled, 0.0, tol);
    return 256.0 * std::sqrt(13.0) / std::sqrt(tau.y) * sum;
}

}  // namespace mocktheta::jf
