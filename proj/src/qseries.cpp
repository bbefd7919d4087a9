#include "mocktheta/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mocktheta::qs {

QSeries::QSeries(long long denom, long long order)
    : denom_(denom), order_(order) {
    if (denom < 1) throw bad_input("series denominator must be >= 1");
    if (order < 1) throw bad_input("series order must be >= 1");
}

Int QSeries::coeff(long long k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Int(0) : it->second;
}

Int QSeries::coeff(const Rat& e) const {
    const Rat scaled = e * Rat(denom_);
    if (!scaled.is_integer()) return 0;
    return coeff(scaled.num);
}

void QSeries::add_term(long long k, const Int& c) {
    if (k >= order_ || c == 0) return;
    Int& slot = coeffs_[k];
    slot += c;
    if (slot == 0) coeffs_.erase(k);
}

long long QSeries::lowest_exponent() const {
    return coeffs_.empty() ? order_ : coeffs_.begin()->first;
}

QSeries QSeries::rescaled(long long new_denom) const {
    if (new_denom == denom_) return *this;
    if (new_denom % denom_ != 0)
        throw bad_input("rescale target must be a multiple of the denominator");
    const long long f = new_denom / denom_;
    QSeries r(new_denom, order_ * f);
    for (const auto& [k, c] : coeffs_) r.coeffs_[k * f] = c;
    return r;
}

QSeries QSeries::truncated(long long new_order) const {
    QSeries r(denom_, std::min(order_, new_order));
    for (const auto& [k, c] : coeffs_) r.add_term(k, c);
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    auto [x, y] = align(a, b);
    QSeries r(x.denom_, std::min(x.order_, y.order_));
    for (const auto& [k, c] : x.coeffs_) r.add_term(k, c);
    for (const auto& [k, c] : y.coeffs_) r.add_term(k, c);
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries QSeries::operator-() const {
    QSeries r(denom_, order_);
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = -c;
    return r;
}

QSeries QSeries::scaled(const Int& c) const {
    QSeries r(denom_, order_);
    if (c == 0) return r;
    for (const auto& [k, v] : coeffs_) r.coeffs_[k] = v * c;
    return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    auto [x, y] = align(a, b);
    // A product term at exponent k1 + k2 is complete iff every contribution
    // k1' + k2' = k is known, i.e. below min(N1 + low2, N2 + low1).
    const long long order =
        std::min(x.order_ + y.lowest_exponent(), y.order_ + x.lowest_exponent());
    QSeries r(x.denom_, std::max(1LL, order));
    for (const auto& [k1, c1] : x.coeffs_) {
        for (const auto& [k2, c2] : y.coeffs_) {
            if (k1 + k2 >= r.order()) continue;
            r.add_term(k1 + k2, c1 * c2);
        }
    }
    return r;
}

QSeries QSeries::one(long long denom, long long order) {
    QSeries r(denom, order);
    r.add_term(0, 1);
    return r;
}

QSeries QSeries::monomial(long long denom, long long order, long long k, const Int& c) {
    QSeries r(denom, order);
    r.add_term(k, c);
    return r;
}

std::string QSeries::to_csv() const {
    std::ostringstream out;
    for (const auto& [k, c] : coeffs_)
        out << Rat(k, denom_).str() << "," << c.str() << "\n";
    return out.str();
}

cx QSeries::evaluate(const TauPoint& tau) const {
    cx s = 0.0;
    for (const auto& [k, c] : coeffs_) {
        const double e = double(k) / double(denom_);
        const cx qe = std::exp(2.0 * kPi * kI * tau.value() * e);
        s += qe * c.convert_to<double>();
    }
    return s;
}

std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b) {
    const long long d = std::lcm(a.denom(), b.denom());
    return {a.rescaled(d), b.rescaled(d)};
}

QSeries euler_product(long long N, long long D) {
    if (N < 1) throw bad_input("order must be >= 1");
    QSeries r = QSeries::one(D, N);
    for (long long n = 1; n * D < N; ++n) {
        const QSeries f =
            QSeries::one(D, N) - QSeries::monomial(D, N, n * D, 1);
        r = (r * f).truncated(N);
    }
    return r.truncated(N);
}

QSeries qpochhammer(const Rat& a_exp, int a_sign, long long n, long long N,
                    long long D, const Rat& step) {
    if (N < 1) throw bad_input("order must be >= 1");
    if (a_sign != 1 && a_sign != -1) throw bad_input("a_sign must be +-1");
    if (!(step > Rat(0))) throw bad_input("pochhammer step must be positive");
    QSeries r = QSeries::one(D, N);
    for (long long k = 0; n < 0 || k < n; ++k) {
        const Rat e = a_exp + step * Rat(k);
        const Rat scaled = e * Rat(D);
        if (!scaled.is_integer())
            throw bad_input("pochhammer exponent not representable in q^{1/D}");
        if (scaled.num >= N) {
            if (n < 0) break;  // remaining factors are 1 to this order
            continue;
        }
        if (scaled.num < 0) throw bad_input("pochhammer exponent must be >= 0");
        const QSeries f =
            QSeries::one(D, N) - QSeries::monomial(D, N, scaled.num, a_sign);
        r = (r * f).truncated(N);
    }
    return r.truncated(N);
}

QSeries invert_unit_series(const QSeries& s) {
    if (s.lowest_exponent() < 0)
        throw inversion_error("cannot invert: negative exponents present");
    const Int c0 = s.coeff(0LL);
    if (c0 != 1 && c0 != -1)
        throw inversion_error("cannot invert: constant term is not a unit");
    const long long N = s.order();
    QSeries inv(s.denom(), N);
    std::map<long long, Int> acc;  // inv coefficients found so far
    acc[0] = c0;                   // 1/c0 == c0 for c0 = +-1
    inv.add_term(0, c0);
    for (long long k = 1; k < N; ++k) {
        // coefficient of q^{k/D} in s*inv must vanish
        Int conv = 0;
        for (const auto& [j, c] : s.coeffs()) {
            if (j <= 0 || j > k) continue;
            auto it = acc.find(k - j);
            if (it != acc.end()) conv += c * it->second;
        }
        if (conv == 0) continue;
        const Int ck = -conv * c0;
        acc[k] = ck;
        inv.add_term(k, ck);
    }
    return inv;
}

QSeries eulerian_f0(long long N) {
    if (N < 1) throw bad_input("order must be >= 1");
    QSeries total(1, N);
    QSeries denom_inv = QSeries::one(1, N);  // 1/(-q;q)_n, built incrementally
    for (long long n = 0; n * n < N; ++n) {
        if (n > 0) {
            // multiply by 1/(1+q^n) = sum_k (-1)^k q^{nk}
            QSeries g(1, N);
            for (long long k = 0; n * k < N; ++k) g.add_term(n * k, (k % 2 == 0) ? 1 : -1);
            denom_inv = (denom_inv * g).truncated(N);
        }
        total = total + (QSeries::monomial(1, N, n * n, 1) * denom_inv).truncated(N);
    }
    return total.truncated(N);
}

// ---------------------------------------------------------------------------
// Indefinite sums
// ---------------------------------------------------------------------------

bool Region::contains(const std::vector<long long>& n) const {
    if (empty) return false;
    for (const auto& iq : ineqs) {
        long long v = iq.c;
        for (size_t i = 0; i < n.size(); ++i) v += iq.v[i] * n[i];
        if (iq.strict ? (v <= 0) : (v < 0)) return false;
    }
    return true;
}

Region Region::of(std::vector<LinearIneq> ineqs) {
    Region r;
    r.ineqs = std::move(ineqs);
    r.empty = false;
    return r;
}

QSeries indefinite_sum(const IndefiniteSumSpec& spec, long long N, long long D,
                       long long point_budget) {
    const int dim = spec.dim;
    QSeries r(D, N);
    long long used = 0;
    int consecutive_empty = 0;

    auto visit = [&](const std::vector<long long>& pt) -> bool {
        const bool in_pos = spec.pos.contains(pt);
        const bool in_neg = spec.neg.contains(pt);
        if (!in_pos && !in_neg) return false;
        // exponent numerator over exp_den
        long long quad = 0, lin = 0, sgn = spec.sign_const;
        for (int i = 0; i < dim; ++i) {
            lin += spec.l[i] * pt[i];
            if (!spec.sign_form.empty()) sgn += spec.sign_form[i] * pt[i];
            for (int j = 0; j < dim; ++j) quad += spec.G[i][j] * pt[i] * pt[j];
        }
        const long long num = (quad + lin + spec.e) * D;
        if (num % spec.exp_den != 0)
            throw bad_input("lattice exponent not representable in q^{1/D}");
        const long long k = num / spec.exp_den;
        if (k >= N) return false;
        const Int c = (((sgn % 2) + 2) % 2 == 0) ? 1 : -1;
        if (in_pos) r.add_term(k, c);
        if (in_neg) r.add_term(k, -c);
        return true;
    };

    // shell enumeration over max-norm shells 0,1,2,...
    for (long long shell = 0;; ++shell) {
        bool contributed = false;
        std::vector<long long> pt(dim, 0);
        // iterate over the box [-shell, shell]^dim; keep only points on the shell
        std::vector<long long> idx(dim, -shell);
        while (true) {
            long long m = 0;
            for (int i = 0; i < dim; ++i) m = std::max(m, std::llabs(idx[i]));
            if (m == shell) {
                if (++used > point_budget)
                    throw properness_violation("indefinite sum exceeded its point budget");
                if (visit(idx)) contributed = true;
            }
            int i = 0;
            for (; i < dim; ++i) {
                if (++idx[i] <= shell) break;
                idx[i] = -shell;
            }
            if (i == dim) break;
        }
        if (contributed) {
            consecutive_empty = 0;
        } else if (++consecutive_empty >= 8 && shell > 2) {
            break;
        }
    }
    return r;
}

CompareResult compare(const QSeries& a, const QSeries& b, const Rat& through) {
    auto [x, y] = align(a, b);
    const long long d = x.denom();
    long long bound = std::min(x.order(), y.order());
    const Rat t = through * Rat(d);
    if (t.is_integer()) bound = std::min(bound, t.num);
    CompareResult res;
    res.checked_below = Rat(bound, d);
    long long lo = std::min(x.lowest_exponent(), y.lowest_exponent());
    for (long long k = lo; k < bound; ++k) {
        if (x.coeff(k) != y.coeff(k)) {
            res.pass = false;
            res.first_mismatch = Rat(k, d);
            return res;
        }
    }
    res.pass = true;
    return res;
}

}  // namespace mocktheta::qs
