#include "mocktheta/indefinite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

#include "mocktheta/lerch.hpp"

namespace mocktheta::indef {

namespace {

constexpr double kWallEps = 1e-8;   // proximity of B(c,a) to Z at a cusp wall
constexpr double kSignEps = 1e-9;   // shared zero threshold for sign(B(c,nu))

double sgn_eps(double t) {
    if (std::abs(t) < kSignEps) return 0.0;
    return t > 0.0 ? 1.0 : -1.0;
}

Eigen::MatrixXd to_eigen(const MatZ& A) {
    const int r = int(A.size());
    Eigen::MatrixXd M(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) M(i, j) = double(A[i][j]);
    return M;
}

Eigen::VectorXd to_eigen(const VecD& v) {
    Eigen::VectorXd x(v.size());
    for (size_t i = 0; i < v.size(); ++i) x[i] = v[i];
    return x;
}

VecD prim_to_d(const VecZ& v) {
    VecD out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = double(v[i]);
    return out;
}

double lambda_min(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    return es.eigenvalues().minCoeff();
}

// smallest half-width K with coef * d * T1(K) * S1^{d-1} <= tol
int box_halfwidth(int d, double crate, double coef, double tol) {
    const double S1 = 3.0 + 2.0 * gaussian_tail_bound(0.5, crate, 0, 0);
    for (int K = 2;; ++K) {
        const double T1 = 2.0 * gaussian_tail_bound(std::max(0.5, K - 0.5), crate, 0, 0);
        if (coef * d * T1 * std::pow(S1, d - 1) <= tol) return K;
        if (K > 4000) throw truncation_failure("lattice box did not certify");
    }
}

// sum of f over integer points k with |f(k)| <= coef e^{-crate ||k-center||^2}
cx box_lattice_sum(int d, double crate, const VecD& center, double coef,
                   double tol, const std::function<cx(const VecZ&)>& f) {
    if (!(crate > 0.0)) throw truncation_failure("lattice majorant degenerated");
    if (coef <= tol) return 0.0;
    const int K = box_halfwidth(d, crate, coef, tol);
    VecZ lo(d), hi(d), k(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = std::llround(center[i]) - K;
        hi[i] = std::llround(center[i]) + K;
        k[i] = lo[i];
    }
    cx s = 0.0;
    while (true) {
        s += f(k);
        int i = 0;
        for (; i < d; ++i) {
            if (++k[i] <= hi[i]) break;
            k[i] = lo[i];
        }
        if (i == d) break;
    }
    return s;
}

VecD reduced_characteristic(const VecD& a) {
    VecD out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - std::round(a[i]);
    return out;
}

long long det_bareiss(MatZ A) {
    const int r = int(A.size());
    long long prev = 1;
    long long sign = 1;
    for (int k = 0; k + 1 < r; ++k) {
        if (A[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < r; ++i)
                if (A[i][k] != 0) { swap = i; break; }
            if (swap < 0) return 0;
            std::swap(A[k], A[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < r; ++i) {
            for (int j = k + 1; j < r; ++j)
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    return sign * A[r - 1][r - 1];
}

}  // namespace

// ---------------------------------------------------------------------------
// LatticeForm
// ---------------------------------------------------------------------------

void LatticeForm::validate() const {
    if (r < 2 || int(A.size()) != r) throw bad_input("lattice form needs r >= 2");
    for (int i = 0; i < r; ++i) {
        if (int(A[i].size()) != r) throw bad_input("lattice matrix not square");
        for (int j = 0; j < r; ++j)
            if (A[i][j] != A[j][i]) throw bad_input("lattice matrix not symmetric");
    }
    if (det() == 0) throw bad_input("lattice form is degenerate");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(A));
    int negatives = 0;
    for (int i = 0; i < r; ++i)
        if (es.eigenvalues()[i] < 0.0) ++negatives;
    if (negatives != 1) throw bad_input("quadratic form is not of type (r-1,1)");
    if (int(c0.size()) != r) throw bad_input("cone reference has wrong length");
    if (!(q_of(c0) < Rat(0))) throw bad_input("cone reference must have Q(c0) < 0");
}

Rat LatticeForm::q_of(const VecQ& x) const {
    Rat s(0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) s = s + x[i] * Rat(A[i][j]) * x[j];
    return s / Rat(2);
}

Rat LatticeForm::b_of(const VecQ& x, const VecQ& y) const {
    Rat s(0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) s = s + x[i] * Rat(A[i][j]) * y[j];
    return s;
}

double LatticeForm::q_of(const VecD& x) const {
    double s = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) s += x[i] * double(A[i][j]) * x[j];
    return 0.5 * s;
}

double LatticeForm::b_of(const VecD& x, const VecD& y) const {
    double s = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) s += x[i] * double(A[i][j]) * y[j];
    return s;
}

cx LatticeForm::q_of(const std::vector<cx>& x) const {
    cx s = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) s += x[i] * double(A[i][j]) * x[j];
    return 0.5 * s;
}

cx LatticeForm::b_of(const std::vector<cx>& x, const std::vector<cx>& y) const {
    cx s = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) s += x[i] * double(A[i][j]) * y[j];
    return s;
}

long long LatticeForm::det() const { return det_bareiss(A); }

// ---------------------------------------------------------------------------
// Cone classification
// ---------------------------------------------------------------------------

namespace {

VecZ primitive_rep(const VecQ& c) {
    long long l = 1;
    for (const Rat& x : c) l = std::lcm(l, x.den);
    VecZ v(c.size());
    long long g = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        v[i] = c[i].num * (l / c[i].den);
        g = std::gcd(g, v[i] < 0 ? -v[i] : v[i]);
    }
    if (g == 0) throw not_in_cone("zero vector is not a cone vector");
    for (auto& x : v) x /= g;
    return v;
}

}  // namespace

ConeVector classify_cone(const LatticeForm& form, const VecQ& c) {
    form.validate();
    if (int(c.size()) != form.r) throw bad_input("cone vector has wrong length");
    const Rat q = form.q_of(c);
    const Rat orient = form.b_of(c, form.c0);
    ConeVector out;
    out.c = c;
    out.prim = primitive_rep(c);
    if (q < Rat(0)) {
        if (!(orient < Rat(0)))
            throw not_in_cone("vector lies in the opposite cone component");
        out.kind = ConeKind::interior;
        return out;
    }
    if (q == Rat(0)) {
        if (!(orient < Rat(0)))
            throw not_in_cone("null vector lies in the opposite component");
        out.kind = ConeKind::cusp;
        return out;
    }
    throw not_in_cone("vector has Q(c) > 0");
}

VecD IndefThetaSpec::a_d() const {
    VecD out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i].to_double();
    return out;
}

VecD IndefThetaSpec::b_d() const {
    VecD out(b.size());
    for (size_t i = 0; i < b.size(); ++i) out[i] = b[i].to_double();
    return out;
}

// ---------------------------------------------------------------------------
// Kernel and majorants
// ---------------------------------------------------------------------------

namespace {

double rho_single(const LatticeForm& form, const ConeVector& c, const VecD& nu,
                  double y) {
    const VecD cd = prim_to_d(c.prim);
    const double B = form.b_of(cd, nu);
    if (c.kind == ConeKind::cusp) return sgn_eps(B);
    const double Q = form.q_of(cd);
    return lerch::erf_like_E(B / std::sqrt(-Q) * std::sqrt(y));
}

}  // namespace

double rho_kernel(const LatticeForm& form, const ConeVector& c1,
                  const ConeVector& c2, const VecD& nu, double y) {
    return rho_single(form, c1, nu, y) - rho_single(form, c2, nu, y);
}

double majorant_lambda(const LatticeForm& form, const ConeVector& c,
                       const ConeVector& c0) {
    if (c.kind != ConeKind::interior || c0.kind != ConeKind::interior)
        throw not_in_cone("majorant lambda needs interior cone vectors");
    const double Qc = form.q_of(prim_to_d(c.prim));
    const double Q0 = form.q_of(prim_to_d(c0.prim));
    const double B = form.b_of(prim_to_d(c.prim), prim_to_d(c0.prim));
    const double disc = B * B - 4.0 * Qc * Q0;
    return (B * B - 2.0 * Qc * Q0 - std::abs(B) * std::sqrt(disc)) / (2.0 * Qc * Q0);
}

double majorant_Qplus(const LatticeForm& form, const ConeVector& c1,
                      const ConeVector& c2, const VecD& nu) {
    if (c1.kind != ConeKind::interior || c2.kind != ConeKind::interior)
        throw not_in_cone("Q+ needs interior cone vectors");
    bool independent = false;
    for (int i = 0; i < form.r && !independent; ++i)
        for (int j = i + 1; j < form.r; ++j)
            if (c1.prim[i] * c2.prim[j] != c1.prim[j] * c2.prim[i]) {
                independent = true;
                break;
            }
    if (!independent) throw bad_input("Q+ is degenerate for dependent cone vectors");
    const VecD u = prim_to_d(c1.prim), v = prim_to_d(c2.prim);
    const double Q1 = form.q_of(u), Q2 = form.q_of(v), B12 = form.b_of(u, v);
    const double w = B12 / (4.0 * Q1 * Q2 - B12 * B12);
    return form.q_of(nu) + w * form.b_of(u, nu) * form.b_of(v, nu);
}

// ---------------------------------------------------------------------------
// Series pieces
// ---------------------------------------------------------------------------

cx beta_series(const LatticeForm& form, const ConeVector& c, const VecD& a_in,
               const VecD& b, const TauPoint& tau, double tol) {
    if (c.kind != ConeKind::interior)
        throw not_in_cone("beta series needs an interior cone vector");
    const int r = form.r;
    const double y = tau.y;
    const VecD a = reduced_characteristic(a_in);
    const VecD cd = prim_to_d(c.prim);
    const double Qc = form.q_of(cd);

    // Q_c(nu) = (1/2) nu^T (A - (Ac)(Ac)^T/Q(c)) nu is positive definite
    Eigen::MatrixXd M = to_eigen(form.A);
    Eigen::VectorXd Ac = M * to_eigen(cd);
    M -= Ac * Ac.transpose() / Qc;
    const double lam = lambda_min(M);
    const double crate = kPi * y * lam;

    VecD center(r);
    for (int i = 0; i < r; ++i) center[i] = -a[i];
    auto f = [&](const VecZ& n) -> cx {
        VecD nu(r);
        for (int i = 0; i < r; ++i) nu[i] = a[i] + double(n[i]);
        const double B = form.b_of(cd, nu);
        const double s = sgn_eps(B);
        if (s == 0.0) return 0.0;
        const double x0 = -B * B * y / Qc;  // beta argument, >= 0
        const double re = -kPi * x0 - 2.0 * kPi * form.q_of(nu) * y;
        const double im = 2.0 * kPi * (form.q_of(nu) * tau.x + form.b_of(nu, b));
        return s * erfcx(std::sqrt(kPi * x0)) * std::exp(cx(re, im));
    };
    return box_lattice_sum(r, crate, center, 1.0, tol, f);
}

namespace {

// sign-difference series for two interior cone vectors, enumerated under the
// positive-definite majorant Q^+.
cx signdiff_interior(const LatticeForm& form, const ConeVector& c1,
                     const ConeVector& c2, const VecD& a, const VecD& b,
                     const TauPoint& tau, double tol) {
    const int r = form.r;
    const double y = tau.y;
    const VecD u = prim_to_d(c1.prim), v = prim_to_d(c2.prim);
    const double Q1 = form.q_of(u), Q2 = form.q_of(v), B12 = form.b_of(u, v);
    Eigen::MatrixXd M = to_eigen(form.A);
    Eigen::VectorXd Ac1 = M * to_eigen(u), Ac2 = M * to_eigen(v);
    const double w = B12 / (4.0 * Q1 * Q2 - B12 * B12);
    Eigen::MatrixXd Mp = M + w * (Ac1 * Ac2.transpose() + Ac2 * Ac1.transpose());
    const double lam = lambda_min(Mp);
    const double crate = kPi * y * lam;

    VecD center(r);
    for (int i = 0; i < r; ++i) center[i] = -a[i];
    auto f = [&](const VecZ& n) -> cx {
        VecD nu(r);
        for (int i = 0; i < r; ++i) nu[i] = a[i] + double(n[i]);
        const double s1 = sgn_eps(form.b_of(u, nu));
        const double s2 = sgn_eps(form.b_of(v, nu));
        if (s1 == s2) return 0.0;
        const cx ex(-2.0 * kPi * form.q_of(nu) * y,
                    2.0 * kPi * (form.q_of(nu) * tau.x + form.b_of(nu, b)));
        return (s1 - s2) * std::exp(ex);
    };
    return box_lattice_sum(r, crate, center, 2.0, tol, f);
}

// sign-difference series for interior c1 and cusp c2, via the geometric
// resummation along the null direction: the raw double sum does not converge
// absolutely, so the regrouped closed form is the algorithm.
cx signdiff_cusp(const LatticeForm& form, const ConeVector& c1,
                 const ConeVector& c2, const VecD& a, const VecD& b,
                 const TauPoint& tau, double tol) {
    const int r = form.r;
    const double y = tau.y;
    const VecD c1d = prim_to_d(c1.prim), c2d = prim_to_d(c2.prim);

    const double wall = dist_to_int(form.b_of(c2d, a));
    if (wall < kWallEps)
        throw wall_proximity("characteristic sits on a cusp wall");

    Eigen::MatrixXd M = to_eigen(form.A);
    Eigen::VectorXd Ac1 = M * to_eigen(c1d);
    VecZ Ac1z(r);
    for (int i = 0; i < r; ++i) Ac1z[i] = std::llround(Ac1[i]);
    const PerpLattice perp = perp_lattice(Ac1z);
    const double g = double(perp.g);
    const double B1a = form.b_of(c1d, a);
    const long long B12 = std::llround(form.b_of(c1d, c2d));  // integer, < 0
    if (B12 >= 0) throw not_in_cone("cone vectors are not in a common component");

    // strip representatives: B(c1, mu0) = B1a + k g in (B12, 0]
    const long long k_hi = (long long)std::floor(-B1a / g + 1e-12);
    const long long k_lo = (long long)std::floor((double(B12) - B1a) / g + 1e-12) + 1;

    // W: basis of the perp lattice as columns
    Eigen::MatrixXd W(r, r - 1);
    for (int j = 0; j < r - 1; ++j)
        for (int i = 0; i < r; ++i) W(i, j) = double(perp.basis[j][i]);
    const Eigen::MatrixXd Mperp = W.transpose() * M * W;
    const double lam = lambda_min(Mperp);
    const double Cx = 2.0 / (1.0 - std::exp(-2.0 * kPi * wall * y)) + 1.0;

    cx total = 0.0;
    const long long strips = std::max<long long>(1, k_hi - k_lo + 1);
    for (long long k = k_lo; k <= k_hi; ++k) {
        VecD mu0(r);
        for (int i = 0; i < r; ++i) mu0[i] = a[i] + double(k) * double(perp.n_g[i]);
        const double t = B1a + double(k) * g;  // B(c1, mu0)
        const double delta = (std::abs(t) < kSignEps) ? 1.0 : 0.0;

        // center and minimum of Q(mu0 + W kvec) over the real span
        const Eigen::VectorXd mu0e = to_eigen(mu0);
        const Eigen::VectorXd rhs = -W.transpose() * M * mu0e;
        const Eigen::VectorXd kstar = Mperp.fullPivLu().solve(rhs);
        Eigen::VectorXd at_min = mu0e + W * kstar;
        const double qmin = 0.5 * at_min.dot(M * at_min);
        const double coef = (Cx + 1.0) * std::exp(-2.0 * kPi * y * qmin);
        const double crate = kPi * y * lam;

        VecD center(r - 1);
        for (int j = 0; j < r - 1; ++j) center[j] = kstar[j];
        auto f = [&](const VecZ& kv) -> cx {
            VecD mu(r);
            for (int i = 0; i < r; ++i) {
                mu[i] = mu0[i];
                for (int j = 0; j < r - 1; ++j)
                    mu[i] += double(kv[j]) * double(perp.basis[j][i]);
            }
            const double B2 = form.b_of(c2d, mu);
            const cx wexp = 2.0 * kPi * kI * (B2 * tau.value() + form.b_of(c2d, b));
            cx geo;
            if (wexp.real() <= 0.0) {
                geo = 2.0 / (1.0 - std::exp(wexp));
            } else {
                const cx e = std::exp(-wexp);
                geo = -2.0 * e / (1.0 - e);
            }
            const cx ex(-2.0 * kPi * form.q_of(mu) * y,
                        2.0 * kPi * (form.q_of(mu) * tau.x + form.b_of(mu, b)));
            return (geo - delta) * std::exp(ex);
        };
        total += box_lattice_sum(r - 1, crate, center, coef, tol / double(strips), f);
    }
    return -total;
}

void check_cusp_wall(const LatticeForm& form, const ConeVector& c, const VecD& a) {
    if (c.kind != ConeKind::cusp) return;
    if (dist_to_int(form.b_of(prim_to_d(c.prim), a)) < kWallEps)
        throw wall_proximity("characteristic sits on a cusp wall");
}

}  // namespace

cx definite_sublattice_theta(const LatticeForm& form, const VecD& mu0,
                             const std::vector<VecZ>& basis, const VecD& b,
                             const TauPoint& tau, double tol) {
    const int r = form.r;
    const int d = int(basis.size());
    const double y = tau.y;
    const Eigen::MatrixXd M = to_eigen(form.A);
    Eigen::MatrixXd W(r, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < r; ++i) W(i, j) = double(basis[j][i]);
    const Eigen::MatrixXd Msub = W.transpose() * M * W;
    const double lam = lambda_min(Msub);
    if (!(lam > 0.0))
        throw bad_input("form is not positive definite on the sublattice");

    const Eigen::VectorXd mu0e = to_eigen(mu0);
    const Eigen::VectorXd kstar = Msub.fullPivLu().solve(-W.transpose() * M * mu0e);
    const Eigen::VectorXd at_min = mu0e + W * kstar;
    const double qmin = 0.5 * at_min.dot(M * at_min);
    const double coef = std::exp(-2.0 * kPi * y * qmin);
    const double crate = kPi * y * lam;

    VecD center(d);
    for (int j = 0; j < d; ++j) center[j] = kstar[j];
    auto f = [&](const VecZ& kv) -> cx {
        VecD xi(r);
        for (int i = 0; i < r; ++i) {
            xi[i] = mu0[i];
            for (int j = 0; j < d; ++j) xi[i] += double(kv[j]) * double(basis[j][i]);
        }
        const cx ex(-2.0 * kPi * form.q_of(xi) * y,
                    2.0 * kPi * (form.q_of(xi) * tau.x + form.b_of(xi, b)));
        return std::exp(ex);
    };
    return box_lattice_sum(d, crate, center, coef, tol, f);
}

cx theta_ab(const LatticeForm& form, const ConeVector& c1, const ConeVector& c2,
            const VecD& a_in, const VecD& b, const TauPoint& tau, double tol) {
    form.validate();
    const VecD a = reduced_characteristic(a_in);
    check_cusp_wall(form, c1, a);
    check_cusp_wall(form, c2, a);

    if (c1.kind == ConeKind::cusp && c2.kind == ConeKind::cusp) {
        // split through an interior direction: c1 + c2 has Q = B(c1,c2) < 0
        VecQ mid(form.r);
        for (int i = 0; i < form.r; ++i) mid[i] = c1.c[i] + c2.c[i];
        const ConeVector c3 = classify_cone(form, mid);
        return theta_ab(form, c1, c3, a, b, tau, 0.5 * tol) +
               theta_ab(form, c3, c2, a, b, tau, 0.5 * tol);
    }
    if (c1.kind == ConeKind::cusp) {
        return -theta_ab(form, c2, c1, a, b, tau, tol);
    }
    if (c2.kind == ConeKind::interior) {
        return -beta_series(form, c1, a, b, tau, tol / 3.0) +
               beta_series(form, c2, a, b, tau, tol / 3.0) +
               signdiff_interior(form, c1, c2, a, b, tau, tol / 3.0);
    }
    return -beta_series(form, c1, a, b, tau, 0.5 * tol) +
           signdiff_cusp(form, c1, c2, a, b, tau, 0.5 * tol);
}

cx theta_ab(const IndefThetaSpec& spec, const TauPoint& tau, double tol) {
    return theta_ab(spec.form, spec.c1, spec.c2, spec.a_d(), spec.b_d(), tau, tol);
}

cx theta_z(const LatticeForm& form, const ConeVector& c1, const ConeVector& c2,
           const std::vector<cx>& z, const TauPoint& tau, double tol) {
    const int r = form.r;
    VecD a(r), b(r);
    for (int i = 0; i < r; ++i) {
        const LatticeCoords lc = lattice_coords_sum(z[i], tau);
        a[i] = lc.a;
        b[i] = lc.b;
    }
    const cx pref = std::exp(-2.0 * kPi * kI * form.q_of(a) * tau.value() -
                             2.0 * kPi * kI * form.b_of(a, b));
    return pref *
           theta_ab(form, c1, c2, a, b, tau, tol / std::max(1.0, std::abs(pref)));
}

ModularSCheck verify_modular_S(const LatticeForm& form, const ConeVector& c1,
                               const ConeVector& c2, const std::vector<cx>& z,
                               const TauPoint& tau, double tol) {
    const int r = form.r;
    const cx tv = tau.value();
    std::vector<cx> zs(r);
    for (int i = 0; i < r; ++i) zs[i] = z[i] / tv;
    ModularSCheck out;
    out.lhs = theta_z(form, c1, c2, zs, TauPoint(-1.0 / tv), tol);

    const long long d = form.det();
    const cx scale = kI / std::sqrt(double(-d)) *
                     std::pow(cx(tau.y, -tau.x), double(r) / 2.0);
    cx sum = 0.0;
    for (const VecD& p : inverse_cosets(form)) {
        std::vector<cx> zp(r);
        for (int i = 0; i < r; ++i) zp[i] = z[i] + p[i] * tv;
        sum += std::exp(2.0 * kPi * kI * form.q_of(zp) / tv) *
               theta_z(form, c1, c2, zp, tau, tol);
    }
    out.rhs = scale * sum;
    out.deviation = std::abs(out.lhs - out.rhs);
    return out;
}

std::vector<VecD> inverse_cosets(const LatticeForm& form, long long budget) {
    const int r = form.r;
    const long long d = form.det();
    const long long count = d < 0 ? -d : d;
    if (count > budget) throw truncation_failure("coset count exceeds budget");

    // column-style Hermite form H = A U (lower triangular, positive diagonal);
    // representatives of Z^r / H Z^r fill the diagonal box.
    MatZ H = form.A;
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            while (H[i][j] != 0) {
                if (H[i][i] == 0) {
                    for (int t = 0; t < r; ++t) std::swap(H[t][i], H[t][j]);
                    continue;
                }
                const long long q = H[i][j] / H[i][i];
                for (int t = 0; t < r; ++t) H[t][j] -= q * H[t][i];
                if (H[i][j] != 0)
                    for (int t = 0; t < r; ++t) std::swap(H[t][i], H[t][j]);
            }
        }
        if (H[i][i] < 0)
            for (int t = 0; t < r; ++t) H[t][i] = -H[t][i];
        if (H[i][i] == 0) throw bad_input("lattice form is degenerate");
    }

    Eigen::MatrixXd Ad = to_eigen(form.A);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Ad);
    std::vector<VecD> out;
    VecZ x(r, 0);
    while (true) {
        Eigen::VectorXd xe(r);
        for (int i = 0; i < r; ++i) xe[i] = double(x[i]);
        const Eigen::VectorXd p = lu.solve(xe);
        VecD pv(r);
        for (int i = 0; i < r; ++i) pv[i] = p[i];
        out.push_back(pv);
        int i = 0;
        for (; i < r; ++i) {
            if (++x[i] < H[i][i]) break;
            x[i] = 0;
        }
        if (i == r) break;
    }
    return out;
}

IndefThetaSpec orthogonal_action(const LatticeForm& form, const MatZ& C,
                                 const IndefThetaSpec& spec) {
    const int r = form.r;
    // C^T A C = A, exactly
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            long long s = 0;
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l) s += C[k][i] * form.A[k][l] * C[l][j];
            if (s != form.A[i][j])
                throw membership_error("matrix does not preserve the form");
        }
    }
    auto apply = [&](const VecQ& v) {
        VecQ out(r, Rat(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) out[i] = out[i] + Rat(C[i][j]) * v[j];
        return out;
    };
    // orientation: B(C c0, c0) < 0 keeps the cone component
    const VecQ cc0 = apply(form.c0);
    if (!(form.b_of(cc0, form.c0) < Rat(0)))
        throw membership_error("matrix swaps the two cone components");

    IndefThetaSpec out;
    out.form = spec.form;
    out.c1 = classify_cone(form, apply(spec.c1.c));
    out.c2 = classify_cone(form, apply(spec.c2.c));
    out.a = apply(spec.a);
    out.b = apply(spec.b);
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json rats_to_json(const VecQ& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Rat& x : v) arr.push_back(x.str());
    return arr;
}

VecQ rats_from_json(const nlohmann::json& arr) {
    VecQ out;
    for (const auto& x : arr) out.push_back(Rat::parse(x.get<std::string>()));
    return out;
}

}  // namespace

std::string spec_to_json(const IndefThetaSpec& spec) {
    nlohmann::json j;
    j["A"] = spec.form.A;
    j["c0"] = rats_to_json(spec.form.c0);
    j["c1"] = rats_to_json(spec.c1.c);
    j["c2"] = rats_to_json(spec.c2.c);
    j["a"] = rats_to_json(spec.a);
    j["b"] = rats_to_json(spec.b);
    return j.dump(2);
}

IndefThetaSpec spec_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    IndefThetaSpec spec;
    spec.form.A = j.at("A").get<MatZ>();
    spec.form.r = int(spec.form.A.size());
    spec.form.c0 = rats_from_json(j.at("c0"));
    spec.form.validate();
    spec.c1 = classify_cone(spec.form, rats_from_json(j.at("c1")));
    spec.c2 = classify_cone(spec.form, rats_from_json(j.at("c2")));
    spec.a = rats_from_json(j.at("a"));
    spec.b = rats_from_json(j.at("b"));
    return spec;
}

// ---------------------------------------------------------------------------
// Integer kernel
// ---------------------------------------------------------------------------

PerpLattice perp_lattice(const VecZ& v) {
    const int r = int(v.size());
    // columns of U track the unimodular ops bringing v^T U to (g, 0, ..., 0)
    std::vector<VecZ> U(r, VecZ(r, 0));
    for (int i = 0; i < r; ++i) U[i][i] = 1;
    VecZ w = v;

    auto colop = [&](int i, int j, long long a, long long b, long long c,
                     long long d) {
        // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j); ad - bc = 1
        for (int t = 0; t < r; ++t) {
            const long long xi = U[t][i], xj = U[t][j];
            U[t][i] = a * xi + b * xj;
            U[t][j] = c * xi + d * xj;
        }
        const long long wi = w[i], wj = w[j];
        w[i] = a * wi + b * wj;
        w[j] = c * wi + d * wj;
    };

    for (int j = 1; j < r; ++j) {
        if (w[j] == 0) continue;
        if (w[0] == 0) {
            colop(0, j, 0, 1, -1, 0);
            continue;
        }
        // extended gcd of w[0], w[j]
        long long a = w[0], b = w[j];
        long long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (b != 0) {
            const long long q = a / b;
            long long tmp = a - q * b; a = b; b = tmp;
            tmp = s0 - q * s1; s0 = s1; s1 = tmp;
            tmp = t0 - q * t1; t0 = t1; t1 = tmp;
        }
        // a = s0 w[0]_old + t0 w[j]_old; complete to det 1
        colop(0, j, s0, t0, -w[j] / a, w[0] / a);
    }
    PerpLattice out;
    if (w[0] == 0) throw bad_input("kernel of the zero vector");
    if (w[0] < 0) {
        for (int t = 0; t < r; ++t) U[t][0] = -U[t][0];
        w[0] = -w[0];
    }
    out.g = w[0];
    out.n_g.resize(r);
    for (int t = 0; t < r; ++t) out.n_g[t] = U[t][0];
    for (int j = 1; j < r; ++j) {
        VecZ col(r);
        for (int t = 0; t < r; ++t) col[t] = U[t][j];
        out.basis.push_back(col);
    }
    return out;
}

}  // namespace mocktheta::indef
