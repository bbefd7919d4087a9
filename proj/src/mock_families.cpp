#include "mocktheta/mock_families.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "mocktheta/theta.hpp"

#ifndef MOCKTHETA_DATA_DEFAULT
#define MOCKTHETA_DATA_DEFAULT "data/families.json"
#endif

namespace mocktheta::mock {

using indef::ConeKind;
using indef::ConeVector;
using indef::LatticeForm;
using indef::VecZ;

namespace {

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

VecQ rats_from(const nlohmann::json& arr) {
    VecQ out;
    for (const auto& x : arr) out.push_back(Rat::parse(x.get<std::string>()));
    return out;
}

std::vector<double> to_d(const VecQ& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
    return out;
}

}  // namespace

cx unary_R_at(double a, double b, cx tau_like, double tol) {
    const double yp = tau_like.imag();
    if (!(yp > 0.0)) throw bad_input("unary R needs Im(tau) > 0");
    auto f = [&](double nu) -> cx {
        const double s = sgn(nu);
        if (s == 0.0) return 0.0;
        const double scaled = erfcx(std::sqrt(2.0 * kPi * yp) * std::abs(nu));
        // beta(2 nu^2 y') e^{-pi i nu^2 tau'} has modulus e^{-pi nu^2 y'}
        const cx ex = -2.0 * kPi * nu * nu * yp - kPi * kI * nu * nu * tau_like -
                      2.0 * kPi * kI * nu * b;
        return s * scaled * std::exp(ex);
    };
    return sum_lattice_gaussian(f, a, 0.0, kPi * yp, 1.0, 0.0, 0, tol);
}

cx unary_R(const UnaryRSpec& spec, const TauPoint& tau, double tol) {
    const cx arg = spec.scale.to_double() * tau.value();
    return unary_R_at(spec.a.to_double(), spec.b.to_double(), arg, tol);
}

CuspDecomposition cusp_decompose(const LatticeForm& form, const ConeVector& c,
                                 const VecQ& a, const VecQ& b,
                                 const TauPoint& tau, double tol) {
    if (c.kind != ConeKind::interior)
        throw not_in_cone("cusp decomposition needs an interior direction");
    for (size_t i = 0; i < c.c.size(); ++i) {
        if (!c.c[i].is_integer() || c.c[i].num != c.prim[i])
            throw bad_input("cusp decomposition needs a primitive integral c");
    }
    const int r = form.r;
    const Rat q2 = form.q_of(c.c) * Rat(2);  // 2 Q(c) < 0, integral
    if (!q2.is_integer()) throw bad_input("2 Q(c) must be integral");

    VecZ Ac(r);
    for (int i = 0; i < r; ++i) {
        long long s = 0;
        for (int j = 0; j < r; ++j) s += form.A[i][j] * c.prim[j];
        Ac[i] = s;
    }
    const indef::PerpLattice perp = indef::perp_lattice(Ac);
    const Rat g(perp.g);
    const Rat B1a = form.b_of(c.c, a);
    const Rat B1b = form.b_of(c.c, b);

    // strip representatives mu0 = a + k n_g with B(c, mu0) = B1a + k g in (2Q(c), 0]
    long long k_hi, k_lo;
    {
        // k <= -B1a/g  and  k > (q2 - B1a)/g, exactly
        const Rat hi = -B1a / g;
        const Rat lo = (q2 - B1a) / g;
        auto floor_rat = [](const Rat& x) {
            long long q = x.num / x.den;
            if (x.num % x.den != 0 && x.num < 0) --q;
            return q;
        };
        k_hi = floor_rat(hi);
        k_lo = floor_rat(lo) + 1;
        if (lo.num % lo.den == 0) k_lo = floor_rat(lo) + 1;
    }

    // b-perp = b - (B(c,b)/2Q(c)) c
    const Rat bfrac = B1b / q2;
    std::vector<double> bperp(r);
    for (int i = 0; i < r; ++i) bperp[i] = (b[i] - bfrac * c.c[i]).to_double();

    CuspDecomposition out;
    out.value = 0.0;
    const double per_tol = tol / double(std::max<long long>(1, k_hi - k_lo + 1));
    for (long long k = k_hi; k >= k_lo; --k) {  // ascending in the R index a
        const Rat t = B1a + Rat(k) * g;  // B(c, mu0)
        CuspTerm term;
        term.r.a = t / q2;
        term.r.b = -B1b;
        term.r.scale = -q2;

        // mu0-perp = mu0 - (t/2Q(c)) c
        const Rat tfrac = t / q2;
        std::vector<double> mu0p(r);
        for (int i = 0; i < r; ++i)
            mu0p[i] = (a[i] + Rat(k) * Rat(perp.n_g[i]) - tfrac * c.c[i]).to_double();
        term.theta_value = indef::definite_sublattice_theta(
            form, mu0p, perp.basis, bperp, tau, 0.5 * per_tol);

        const cx rval = unary_R(term.r, tau, 0.5 * per_tol /
                                                 std::max(1.0, std::abs(term.theta_value)));
        out.value -= rval * term.theta_value;
        out.terms.push_back(std::move(term));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Family data
// ---------------------------------------------------------------------------

double MatrixEntry::value() const {
    double v = rat.to_double();
    if (sqrt_num != 1) v *= std::sqrt(double(sqrt_num));
    if (sqrt_den != 1) v /= std::sqrt(double(sqrt_den));
    if (has_sin) v *= std::sin(kPi * double(sin_num) / double(sin_den));
    return v;
}

std::vector<std::vector<double>> MockFamily::s_matrix() const {
    const int n = size();
    std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
    const double sc = s_scalar.value();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = sc * s_entries[i][j].value();
    return M;
}

std::vector<std::vector<cx>> MockFamily::t_matrix() const {
    const int n = size();
    std::vector<std::vector<cx>> M(n, std::vector<cx>(n, 0.0));
    for (const auto& [i, j, e] : t_entries) M[i][j] = unit_phase(e.to_double());
    return M;
}

namespace {

MatrixEntry parse_entry(const nlohmann::json& j) {
    MatrixEntry e;
    if (j.contains("rat")) e.rat = Rat::parse(j.at("rat").get<std::string>());
    if (j.contains("sqrt_num")) e.sqrt_num = j.at("sqrt_num").get<long long>();
    if (j.contains("sqrt_den")) e.sqrt_den = j.at("sqrt_den").get<long long>();
    if (j.contains("sin")) {
        e.has_sin = true;
        e.sin_num = j.at("sin")[0].get<long long>();
        e.sin_den = j.at("sin")[1].get<long long>();
    }
    return e;
}

GTerm parse_gterm(const nlohmann::json& j) {
    GTerm t;
    if (j.contains("rat")) t.rat = Rat::parse(j.at("rat").get<std::string>());
    if (j.contains("zeta")) t.zeta = Rat::parse(j.at("zeta").get<std::string>());
    t.a = Rat::parse(j.at("a").get<std::string>());
    t.b = Rat::parse(j.at("b").get<std::string>());
    return t;
}

MockFamily parse_family(const std::string& id, const nlohmann::json& j) {
    MockFamily fam;
    fam.id = id;
    fam.scale = Rat::parse(j.at("scale").get<std::string>());
    fam.eta_pow = j.at("eta_pow").get<int>();
    const auto& lat = j.at("lattice");
    fam.form.A = lat.at("A").get<indef::MatZ>();
    fam.form.r = int(fam.form.A.size());
    fam.form.c0 = rats_from(lat.at("c0"));
    fam.form.validate();
    fam.c1 = indef::classify_cone(fam.form, rats_from(lat.at("c1")));
    fam.c2 = indef::classify_cone(fam.form, rats_from(lat.at("c2")));
    fam.g_factor_rat = Rat::parse(j.at("g_factor").at("rat").get<std::string>());
    fam.g_factor_zeta = Rat::parse(j.at("g_factor").at("zeta").get<std::string>());
    for (const auto& row : j.at("t_matrix"))
        fam.t_entries.emplace_back(row[0].get<int>(), row[1].get<int>(),
                                   Rat::parse(row[2].get<std::string>()));
    fam.s_scalar = parse_entry(j.at("s_scalar"));
    for (const auto& row : j.at("s_matrix")) {
        std::vector<MatrixEntry> out;
        for (const auto& e : row) out.push_back(parse_entry(e));
        fam.s_entries.push_back(std::move(out));
    }
    for (const auto& cj : j.at("components")) {
        FamilyComponent comp;
        comp.delta = Rat::parse(cj.at("delta").get<std::string>());
        comp.theta_a = rats_from(cj.at("theta_a"));
        comp.theta_b = rats_from(cj.at("theta_b"));
        if (cj.contains("h_rat")) comp.h_rat = Rat::parse(cj.at("h_rat").get<std::string>());
        if (cj.contains("h_zeta")) comp.h_zeta = Rat::parse(cj.at("h_zeta").get<std::string>());
        if (cj.contains("h_eta_arg")) comp.h_eta_arg = cj.at("h_eta_arg").get<std::string>();
        for (const auto& t : cj.at("g_terms")) comp.g_terms.push_back(parse_gterm(t));
        if (cj.contains("shadow_terms"))
            for (const auto& t : cj.at("shadow_terms"))
                comp.shadow_terms.push_back(parse_gterm(t));
        fam.comps.push_back(std::move(comp));
    }
    return fam;
}

const std::map<std::string, MockFamily>& families() {
    static std::mutex mu;
    static std::map<std::string, MockFamily> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        std::ifstream in(data_path());
        if (!in) throw bad_input("cannot open family data file: " + data_path());
        nlohmann::json j;
        in >> j;
        for (const auto& [id, fj] : j.at("families").items())
            cache.emplace(id, parse_family(id, fj));
    }
    return cache;
}

}  // namespace

std::string data_path() {
    if (const char* env = std::getenv("MOCKTHETA_DATA")) return env;
    return MOCKTHETA_DATA_DEFAULT;
}

const MockFamily& family(const std::string& id) {
    const auto& all = families();
    auto it = all.find(id);
    if (it == all.end()) throw bad_input("unknown family: " + id);
    return it->second;
}

std::vector<std::string> family_ids() {
    std::vector<std::string> out;
    for (const auto& [id, fam] : families()) out.push_back(id);
    return out;
}

// ---------------------------------------------------------------------------
// F side: defining q-series, evaluated directly
// ---------------------------------------------------------------------------

namespace {

cx qpow(const TauPoint& tau, double e) {
    return std::exp(2.0 * kPi * kI * tau.value() * e);
}

// fifth-order sums of the shape sum_{n>=0} sum_{|j|<=n (or <n)} with a
// (1 - x^{P(n)}) or (1 + x^{P(n)}) tail factor; E and P take (n, j).
template <typename ExpFn, typename TailFn, typename SignFn>
cx row_sum(cx x, double cutoff, bool j_strict, long long plus_tail, ExpFn E,
           TailFn P, SignFn S) {
    const cx lx = std::log(x);
    auto xp = [&](double e) { return std::exp(e * lx); };
    cx total = 0.0;
    int quiet = 0;
    for (long long n = 0;; ++n) {
        const long long jmax = j_strict ? n - 1 : n;
        double row_peak = 0.0;
        for (long long j = -jmax; j <= jmax; ++j) {
            const double e = E(n, j);
            const cx t = S(n, j) * xp(e) *
                         (1.0 + double(plus_tail) * xp(double(P(n))));
            total += t;
            row_peak = std::max(row_peak, std::abs(t));
        }
        if (jmax < 0) row_peak = 1.0;  // empty rows at the start still count
        if (row_peak < cutoff && n > 3) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
        if (n > 4000) throw truncation_failure("family series did not settle");
    }
    return total;
}

// seventh-order two-region sums (sum_{r,s>=0} - sum_{r,s<0})
cx seventh_sum(cx q, double lin_r, double lin_s, double econst, double cutoff) {
    const cx lq = std::log(q);
    auto qp = [&](double e) { return std::exp(e * lq); };
    cx total = 0.0;
    for (int region = 0; region < 2; ++region) {
        const double sign_region = region == 0 ? 1.0 : -1.0;
        int quiet = 0;
        for (long long k = 0;; ++k) {  // shell max(r', s') = k over the quadrant
            double shell_peak = 0.0;
            for (long long r = 0; r <= k; ++r) {
                for (long long s = 0; s <= k; ++s) {
                    if (std::max(r, s) != k) continue;
                    const double rr = region == 0 ? double(r) : double(-1 - r);
                    const double ss = region == 0 ? double(s) : double(-1 - s);
                    const double e = 1.5 * rr * rr + 4.0 * rr * ss + 1.5 * ss * ss +
                                     lin_r * rr + lin_s * ss + econst;
                    const double par = ((r + s) % 2 == 0) ? 1.0 : -1.0;
                    const double parity = region == 0 ? par : par;  // (-1)^{r+s} invariant
                    const cx t = sign_region * parity * qp(e);
                    total += t;
                    shell_peak = std::max(shell_peak, std::abs(t));
                }
            }
            if (shell_peak < cutoff && k > 3) {
                if (++quiet >= 3) break;
            } else {
                quiet = 0;
            }
            if (k > 4000) throw truncation_failure("family series did not settle");
        }
    }
    return total;
}

cx euler_inf(cx q, double tol) { return th::pochhammer_value(q, q, tol); }

}  // namespace

cx eval_F(const MockFamily& fam, int comp, const TauPoint& tau, double tol) {
    if (comp < 0 || comp >= fam.size()) throw bad_input("component out of range");
    const cx q = std::exp(2.0 * kPi * kI * tau.value());
    const double cutoff = tol * 1e-3;
    const cx norm = qpow(tau, fam.comps[comp].delta.to_double());

    if (fam.id == "F7") {
        const double lin[3][2] = {{0.5, 0.5}, {1.5, 1.5}, {2.5, 2.5}};
        const double ec[3] = {0.0, 0.0, 1.0};
        // component order: (F7_0, F7_2, F7_1) with linear parts (1/2, 3/2, 5/2)
        const int which[3] = {0, 1, 2};
        const int i = which[comp];
        const cx s = seventh_sum(q, lin[i][0], lin[i][1], ec[i], cutoff);
        return norm * s / euler_inf(q, cutoff);
    }

    if (fam.id == "F5_1") {
        switch (comp) {
            case 0: {  // f0
                const cx s = row_sum(q, cutoff, false, -1,
                    [](long long n, long long j) { return 2.5 * n * n + 0.5 * n - double(j * j); },
                    [](long long n) { return 4 * n + 2; },
                    [](long long, long long j) { return (j % 2 == 0) ? 1.0 : -1.0; });
                return norm * s / euler_inf(q, cutoff);
            }
            case 1: {  // f1
                const cx s = row_sum(q, cutoff, false, -1,
                    [](long long n, long long j) { return 2.5 * n * n + 1.5 * n - double(j * j); },
                    [](long long n) { return 2 * n + 1; },
                    [](long long, long long j) { return (j % 2 == 0) ? 1.0 : -1.0; });
                return norm * s / euler_inf(q, cutoff);
            }
            case 2: case 3: case 4: case 5: {
                // F0 / F1 at x = +-q^{1/2}; j = 0..2n folded to |j| <= n gives
                // exponent -2j^2 - j and parity (-1)^n
                const cx x = (comp >= 4 ? -1.0 : 1.0) * std::exp(kPi * kI * tau.value());
                const bool is_F0 = (comp % 2 == 0);
                const double linn = is_F0 ? 2.0 : 4.0;
                const long long tailc = is_F0 ? 6 : 2;
                const long long tailk = is_F0 ? 3 : 1;
                const cx s = row_sum(x, cutoff, false, +1,
                    [&](long long n, long long j) {
                        return 5.0 * n * n + linn * n - double(2 * j * j + j);
                    },
                    [&](long long n) { return tailc * n + tailk; },
                    [](long long n, long long) { return (n % 2 == 0) ? 1.0 : -1.0; });
                const cx F = s / th::pochhammer_value(x * x, x * x, cutoff);
                return norm * (is_F0 ? F - 1.0 : F);
            }
        }
    }

    if (fam.id == "F5_2") {
        switch (comp) {
            case 0: {  // 2 q^{-1/60} psi0
                const cx ratio = th::pochhammer_value(-q, q, cutoff) / euler_inf(q, cutoff);
                cx inner = 1.0;
                for (long long n = 1;; ++n) {
                    const cx t = 2.0 * ((n % 2 == 0) ? 1.0 : -1.0) *
                                 std::pow(q, double(n * n + n));
                    inner += t;
                    if (std::abs(t) < cutoff && n > 3) break;
                }
                const cx s = row_sum(q, cutoff, true, -1,
                    [](long long n, long long j) {
                        return 2.5 * n * n - 0.5 * n - 1.5 * j * j - 0.5 * j;
                    },
                    [](long long n) { return n; },
                    [](long long, long long j) { return (j % 2 == 0) ? 1.0 : -1.0; });
                // row_sum starts at n=0 where the strict j-range is empty
                const cx psi0 = 0.5 * (ratio * (inner - 2.0 * s) - 1.0);
                return norm * 2.0 * psi0;
            }
            case 1: {  // 2 q^{11/60} psi1
                const cx ratio = th::pochhammer_value(-q, q, cutoff) / euler_inf(q, cutoff);
                const cx s = row_sum(q, cutoff, false, -1,
                    [](long long n, long long j) {
                        return 2.5 * n * n + 1.5 * n - 1.5 * j * j - 0.5 * j;
                    },
                    [](long long n) { return 2 * n + 1; },
                    [](long long, long long j) { return (j % 2 == 0) ? 1.0 : -1.0; });
                return norm * 2.0 * ratio * s;
            }
            case 2: case 3: case 4: case 5: {
                // phi0 / phi1 at x = -+q^{1/2}; components 2,3 use -q^{1/2}
                const cx x = (comp <= 3 ? -1.0 : 1.0) * std::exp(kPi * kI * tau.value());
                const bool is_phi0 = (comp % 2 == 0);
                const double linn = is_phi0 ? 2.0 : 4.0;
                const long long tailc = is_phi0 ? 6 : 2;
                const long long tailk = is_phi0 ? 3 : 1;
                const cx s = row_sum(x, cutoff, false, -1,
                    [&](long long n, long long j) {
                        return 5.0 * n * n + linn * n - double(3 * j * j + j);
                    },
                    [&](long long n) { return tailc * n + tailk; },
                    [](long long, long long j) { return (j % 2 == 0) ? 1.0 : -1.0; });
                const cx pref = th::pochhammer_value(-x, x * x, cutoff) /
                                th::pochhammer_value(x * x, x * x, cutoff);
                cx phi = pref * s;
                if (!is_phi0) phi *= x;
                const double fsign = (comp == 3) ? -1.0 : 1.0;
                return norm * fsign * phi;
            }
        }
    }
    throw bad_input("unknown family component");
}

// ---------------------------------------------------------------------------
// H and G sides
// ---------------------------------------------------------------------------

cx eval_H(const MockFamily& fam, int comp, const TauPoint& tau, double tol) {
    if (comp < 0 || comp >= fam.size()) throw bad_input("component out of range");
    const FamilyComponent& c = fam.comps[comp];
    const cx theta = indef::theta_ab(fam.form, fam.c1, fam.c2, to_d(c.theta_a),
                                     to_d(c.theta_b), tau, tol * 0.1);
    const cx eta = th::dedekind_eta(tau, tol * 1e-3);
    cx numer = c.h_rat.to_double() * unit_phase(c.h_zeta.to_double()) * theta;
    if (c.h_eta_arg == "2tau") {
        numer *= th::dedekind_eta(TauPoint(2.0 * tau.value()), tol * 1e-3);
    } else if (c.h_eta_arg == "tau/2") {
        numer *= th::dedekind_eta(TauPoint(0.5 * tau.value()), tol * 1e-3);
    } else if (c.h_eta_arg == "(tau+1)/2") {
        numer *= th::dedekind_eta(TauPoint(0.5 * (tau.value() + 1.0)), tol * 1e-3);
    } else if (!c.h_eta_arg.empty()) {
        throw bad_input("unknown eta argument tag: " + c.h_eta_arg);
    }
    cx denom = 2.0 * eta;
    for (int k = 1; k < fam.eta_pow; ++k) denom *= eta;
    return numer / denom;
}

cx eval_G(const MockFamily& fam, int comp, const TauPoint& tau, double tol) {
    if (comp < 0 || comp >= fam.size()) throw bad_input("component out of range");
    const FamilyComponent& c = fam.comps[comp];
    const cx arg = fam.scale.to_double() * tau.value();
    cx s = 0.0;
    const double per = tol / (2.0 * std::max<size_t>(1, c.g_terms.size()));
    for (const GTerm& t : c.g_terms) {
        s += t.rat.to_double() * unit_phase(t.zeta.to_double()) *
             unary_R_at(t.a.to_double(), t.b.to_double(), arg, per);
    }
    return fam.g_factor_rat.to_double() * unit_phase(fam.g_factor_zeta.to_double()) * s;
}

cx shadow_g_component(const MockFamily& fam, int comp, cx tau_like, double tol) {
    const FamilyComponent& c = fam.comps[comp];
    if (c.shadow_terms.empty()) throw bad_input("family has no shadow data");
    const cx arg = fam.scale.to_double() * tau_like;
    cx s = 0.0;
    for (const GTerm& t : c.shadow_terms) {
        s += t.rat.to_double() * unit_phase(t.zeta.to_double()) *
             th::unary_g_at(t.a.to_double(), t.b.to_double(), arg, tol);
    }
    return s;
}

std::vector<CompletionCheck> verify_completion(const MockFamily& fam,
                                               const std::vector<TauPoint>& taus,
                                               double tol) {
    std::vector<CompletionCheck> out;
    for (int comp = 0; comp < fam.size(); ++comp) {
        CompletionCheck chk;
        chk.family = fam.id;
        chk.comp = comp;
        for (const TauPoint& tau : taus) {
            const cx f = eval_F(fam, comp, tau, tol);
            const cx h = eval_H(fam, comp, tau, tol);
            const cx g = eval_G(fam, comp, tau, tol);
            chk.deviation = std::max(chk.deviation, std::abs(f - h - g));
        }
        out.push_back(chk);
    }
    return out;
}

namespace {

// bound constant for |sum_t coeff_t g_{a_t,b_t}(scale (z0+is))| along a ray
double shadow_ray_constant(const MockFamily& fam, int comp, double h0,
                           double rate) {
    double C = 0.0;
    const double sc = fam.scale.to_double();
    for (const GTerm& t : fam.comps[comp].shadow_terms) {
        double Ct = 0.0;
        for (long long k = -200; k <= 200; ++k) {
            const double nu = t.a.to_double() + double(k);
            Ct += std::abs(nu) * std::exp(-(kPi * sc * nu * nu - rate) * h0);
        }
        C += std::abs(t.rat.to_double()) * Ct;
    }
    return C;
}

double shadow_decay_rate(const MockFamily& fam, int comp) {
    double nu0sq = 1e18;
    for (const GTerm& t : fam.comps[comp].shadow_terms) {
        const double d = dist_to_int(t.a.to_double());
        nu0sq = std::min(nu0sq, d * d);
    }
    return fam.scale.to_double() * nu0sq;  // |g(scale z)| ~ e^{-pi rate Im z}
}

}  // namespace

ShadowCheck shadow_integral_check(const TauPoint& tau, double tol) {
    const MockFamily& fam = family("F7");
    const int n = fam.size();
    const cx tv = tau.value();
    const TauPoint tau_inv(-1.0 / tv);
    const auto M = fam.s_matrix();
    const cx root = sqrt_principal_neg_i_tau(tau);

    ShadowCheck out;
    out.lhs.resize(n);
    out.rhs.resize(n);
    std::vector<cx> f_here(n), f_inv(n);
    for (int c = 0; c < n; ++c) {
        f_here[c] = eval_F(fam, c, tau, tol * 0.1);
        f_inv[c] = eval_F(fam, c, tau_inv, tol * 0.1);
    }
    for (int c = 0; c < n; ++c) {
        cx mixed = 0.0;
        for (int j = 0; j < n; ++j) mixed += M[c][j] * f_inv[j];
        out.lhs[c] = f_here[c] - mixed / root;
    }

    // RHS = i sqrt(scale) [ int_{-conj tau}^{i inf} + int_0^{-conj tau} ],
    // the second piece mapped through z -> -1/z with the vector transform
    // g(-1/z) = -M (-iz)^{3/2} g(z).
    const double sc = fam.scale.to_double();
    const cx z0(-tau.x, tau.y);
    const cx z0p = 1.0 / std::conj(tv);
    std::vector<cx> ray1(n), ray2(n);
    const double qtol = 0.2 * tol / std::sqrt(sc);
    for (int c = 0; c < n; ++c) {
        const double rate = shadow_decay_rate(fam, c);
        {
            RayDecay d{rate, shadow_ray_constant(fam, c, z0.imag(), kPi * rate)};
            auto g = [&](cx z) { return shadow_g_component(fam, c, z, qtol * 0.05); };
            ray1[c] = integrate_vertical_ray(g, z0, tau, d, qtol);
        }
        {
            RayDecay d{rate, shadow_ray_constant(fam, c, z0p.imag(), kPi * rate)};
            auto g = [&](cx z) { return shadow_g_component(fam, c, z, qtol * 0.05); };
            ray2[c] = integrate_vertical_ray(g, z0p, TauPoint(-1.0 / tv), d, qtol);
        }
    }
    for (int c = 0; c < n; ++c) {
        cx flipped = 0.0;
        for (int j = 0; j < n; ++j) flipped += M[c][j] * ray2[j];
        const cx integral = ray1[c] - flipped / root;
        out.rhs[c] = kI * std::sqrt(sc) * integral;
        out.deviation = std::max(out.deviation, std::abs(out.lhs[c] - out.rhs[c]));
    }
    return out;
}

}  // namespace mocktheta::mock
