#pragma once
// The seventh- and fifth-order families: the unary non-holomorphic series
// R_{a,b}, the cusp decomposition of indefinite theta beta-series into
// R-times-definite-theta products, and the complete F = H + G packages with
// their S/T matrices and the weight-3/2 shadow integral.

#include <string>
#include <vector>

#include "mocktheta/core.hpp"
#include "mocktheta/indefinite.hpp"
#include "mocktheta/rational.hpp"

namespace mocktheta::mock {

using indef::VecQ;

// R_{a,b}(scale * tau) with exact rational data.
struct UnaryRSpec {
    Rat a, b;
    Rat scale{1};
};

// R_{a,b}(tau') = sum_{nu in a+Z} sign(nu) beta(2 nu^2 y') e^{-pi i nu^2 tau' - 2 pi i nu b}
cx unary_R(const UnaryRSpec& spec, const TauPoint& tau, double tol);
cx unary_R_at(double a, double b, cx tau_like, double tol);

// One product of the cusp decomposition: an R factor at the rescaled variable
// and the positive definite theta series over the orthogonal sublattice.
struct CuspTerm {
    UnaryRSpec r;
    cx theta_value;
};
struct CuspDecomposition {
    std::vector<CuspTerm> terms;
    cx value;  // -sum R * theta; equals the beta-series of the pair (c, a, b)
};

// Requires an interior, integral, primitive c.
CuspDecomposition cusp_decompose(const indef::LatticeForm& form,
                                 const indef::ConeVector& c, const VecQ& a,
                                 const VecQ& b, const TauPoint& tau, double tol);

// ---------------------------------------------------------------------------
// Family data (shipped as JSON; env MOCKTHETA_DATA overrides the path)
// ---------------------------------------------------------------------------

struct GTerm {
    Rat rat{1};
    Rat zeta{0};  // coefficient rat * e^{2 pi i zeta}
    Rat a, b;
};

struct MatrixEntry {
    Rat rat{1};
    long long sqrt_num = 1;
    long long sqrt_den = 1;
    bool has_sin = false;
    long long sin_num = 0;
    long long sin_den = 1;
    double value() const;
};

struct FamilyComponent {
    Rat delta;           // q^{delta} normalization; also the T-phase
    VecQ theta_a, theta_b;
    Rat h_rat{1};
    Rat h_zeta{0};
    std::string h_eta_arg;  // "", "2tau", "tau/2", "(tau+1)/2"
    std::vector<GTerm> g_terms;
    std::vector<GTerm> shadow_terms;
};

struct MockFamily {
    std::string id;
    indef::LatticeForm form;
    indef::ConeVector c1, c2;
    int eta_pow = 1;
    Rat scale{1};
    Rat g_factor_rat{1};
    Rat g_factor_zeta{0};
    std::vector<FamilyComponent> comps;
    std::vector<std::vector<MatrixEntry>> s_entries;  // without the scalar
    MatrixEntry s_scalar;
    std::vector<std::tuple<int, int, Rat>> t_entries;

    int size() const { return int(comps.size()); }
    std::vector<std::vector<double>> s_matrix() const;  // scalar folded in
    std::vector<std::vector<cx>> t_matrix() const;
};

const MockFamily& family(const std::string& id);
std::vector<std::string> family_ids();
std::string data_path();  // resolved families.json location

// ---------------------------------------------------------------------------
// Evaluators (components are 0-based)
// ---------------------------------------------------------------------------

// q-series side, from the defining Eulerian/indefinite sums.
cx eval_F(const MockFamily& fam, int comp, const TauPoint& tau, double tol);
// indefinite-theta side divided by the eta prefactors.
cx eval_H(const MockFamily& fam, int comp, const TauPoint& tau, double tol);
// finite combination of unary R values at the rescaled variable.
cx eval_G(const MockFamily& fam, int comp, const TauPoint& tau, double tol);

// weight-3/2 shadow combination (seventh-order family), evaluated at any
// tau-like argument with positive imaginary part; the scale sits inside.
cx shadow_g_component(const MockFamily& fam, int comp, cx tau_like, double tol);

struct CompletionCheck {
    std::string family;
    int comp = 0;
    double deviation = 0.0;
};
// componentwise max |F - H - G| over a tau list
std::vector<CompletionCheck> verify_completion(const MockFamily& fam,
                                               const std::vector<TauPoint>& taus,
                                               double tol);

struct ShadowCheck {
    std::vector<cx> lhs, rhs;
    double deviation = 0.0;
};
// F(tau) - (1/sqrt(-i tau)) M F(-1/tau) against
// i sqrt(scale) int_0^{i inf} g(z)/sqrt(-i(z+tau)) dz, componentwise.
ShadowCheck shadow_integral_check(const TauPoint& tau, double tol);

}  // namespace mocktheta::mock
