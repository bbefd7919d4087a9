#pragma once
// Theta functions attached to integral quadratic forms of type (r-1,1):
// cone classification, the sign/E kernel rho, positive-definite majorants,
// certified lattice evaluation, modular transformation checks, and the
// O_A^+(Z) action.

#include <vector>

#include "mocktheta/core.hpp"
#include "mocktheta/rational.hpp"

namespace mocktheta::indef {

using VecQ = std::vector<Rat>;
using VecD = std::vector<double>;
using VecZ = std::vector<long long>;
using MatZ = std::vector<std::vector<long long>>;

// Q(x) = (1/2) <x, A x> with A integral symmetric of type (r-1,1); c0 fixes
// the component C_Q of the negative cone.
struct LatticeForm {
    int r = 2;
    MatZ A;
    VecQ c0;

    void validate() const;  // symmetry, nondegeneracy, signature, Q(c0) < 0

    Rat q_of(const VecQ& x) const;
    Rat b_of(const VecQ& x, const VecQ& y) const;
    double q_of(const VecD& x) const;
    double b_of(const VecD& x, const VecD& y) const;
    cx q_of(const std::vector<cx>& x) const;
    cx b_of(const std::vector<cx>& x, const std::vector<cx>& y) const;
    long long det() const;
};

enum class ConeKind { interior, cusp };

struct ConeVector {
    VecQ c;
    ConeKind kind = ConeKind::interior;
    VecZ prim;  // primitive integral representative on the same ray
};

// Classifies c: interior (Q(c)<0, B(c,c0)<0) or cusp (integral primitive,
// Q(c)=0, B(c,c0)<0); throws not_in_cone otherwise.
ConeVector classify_cone(const LatticeForm& form, const VecQ& c);

struct IndefThetaSpec {
    LatticeForm form;
    ConeVector c1, c2;
    VecQ a, b;

    VecD a_d() const;
    VecD b_d() const;
};

// rho^{c1}(nu) - rho^{c2}(nu) with rho^c = E(B(c,nu)/sqrt(-Q(c)) sqrt(y)) for
// interior c and sign(B(c,nu)) for cusp c. Always in [-2,2].
double rho_kernel(const LatticeForm& form, const ConeVector& c1,
                  const ConeVector& c2, const VecD& nu, double y);

// lambda_{c,c0} > 0 with Q_c(nu) >= lambda * Q_{c0}(nu) for all nu.
double majorant_lambda(const LatticeForm& form, const ConeVector& c,
                       const ConeVector& c0);

// Q^+(nu) = Q(nu) + B(c1,c2)/(4 Q(c1) Q(c2) - B(c1,c2)^2) B(c1,nu) B(c2,nu);
// positive definite for independent interior c1, c2.
double majorant_Qplus(const LatticeForm& form, const ConeVector& c1,
                      const ConeVector& c2, const VecD& nu);

// theta_{a,b}(tau) = sum_{nu in a+Z^r} rho(nu;tau) e^{2 pi i Q(nu) tau + 2 pi i B(nu,b)}
cx theta_ab(const LatticeForm& form, const ConeVector& c1, const ConeVector& c2,
            const VecD& a, const VecD& b, const TauPoint& tau, double tol);
cx theta_ab(const IndefThetaSpec& spec, const TauPoint& tau, double tol);

// theta(z;tau) = e^{-2 pi i Q(a) tau - 2 pi i B(a,b)} theta_{a,b}(tau) with
// z = a tau + b read off componentwise.
cx theta_z(const LatticeForm& form, const ConeVector& c1, const ConeVector& c2,
           const std::vector<cx>& z, const TauPoint& tau, double tol);

// The beta-series sum_{nu in a+Z^r} sign(B(c,nu)) beta(-B(c,nu)^2/Q(c) y)
// e^{2 pi i Q(nu) tau + 2 pi i B(nu,b)} for interior c (one of the three
// pieces of rho; vanishing certifies holomorphy in the worked examples).
cx beta_series(const LatticeForm& form, const ConeVector& c, const VecD& a,
               const VecD& b, const TauPoint& tau, double tol);

// Classical positive-definite theta over a shifted sublattice mu0 + <basis>:
// sum_{xi} e^{2 pi i Q(xi) tau + 2 pi i B(xi, b)}. Q must be positive definite
// on the span of the basis columns.
cx definite_sublattice_theta(const LatticeForm& form, const VecD& mu0,
                             const std::vector<VecZ>& basis, const VecD& b,
                             const TauPoint& tau, double tol);

struct ModularSCheck {
    cx lhs, rhs;
    double deviation = 0.0;
};

// theta(z/tau; -1/tau) against
//   i/sqrt(-det A) (-i tau)^{r/2} sum_{p in A^{-1}Z^r/Z^r} e^{2 pi i Q(z+p tau)/tau} theta(z+p tau; tau)
ModularSCheck verify_modular_S(const LatticeForm& form, const ConeVector& c1,
                               const ConeVector& c2, const std::vector<cx>& z,
                               const TauPoint& tau, double tol);

// Coset representatives of A^{-1}Z^r / Z^r (|det A| of them).
std::vector<VecD> inverse_cosets(const LatticeForm& form, long long budget = 100000);

// C in O_A^+(Z): C^T A C = A and C preserves the cone component. Applies C to
// c1, c2, a, b. Throws membership_error otherwise.
IndefThetaSpec orthogonal_action(const LatticeForm& form, const MatZ& C,
                                 const IndefThetaSpec& spec);

// JSON round trip; rationals as "p/q" strings.
std::string spec_to_json(const IndefThetaSpec& spec);
IndefThetaSpec spec_from_json(const std::string& text);

// Integer kernel utilities (exposed for the cusp machinery and tests):
// unimodular data with (A c) . n_g = g = gcd(A c) and basis of {xi : (A c).xi = 0}.
struct PerpLattice {
    long long g = 0;
    VecZ n_g;
    std::vector<VecZ> basis;  // r-1 columns
};
PerpLattice perp_lattice(const VecZ& v);

}  // namespace mocktheta::indef
