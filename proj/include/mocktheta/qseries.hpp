#pragma once
// Exact truncated formal series in q^{1/D} with arbitrary-size integer
// coefficients. Used to verify combinatorial q-identities coefficient by
// coefficient, with q-Pochhammer products and indefinite lattice sums.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mocktheta/core.hpp"
#include "mocktheta/rational.hpp"

namespace mocktheta::qs {

using Int = boost::multiprecision::cpp_int;

// A truncated series sum_k c_k q^{k/D}, storing only k < N (k may be
// negative). `order` N is the exclusive validity bound; arithmetic tracks the
// largest order both operands support.
class QSeries {
  public:
    QSeries(long long denom, long long order);

    long long denom() const { return denom_; }
    long long order() const { return order_; }
    const std::map<long long, Int>& coeffs() const { return coeffs_; }

    Int coeff(long long k) const;               // exponent k/denom
    Int coeff(const Rat& e) const;              // exact rational exponent
    void add_term(long long k, const Int& c);   // drops k >= order
    long long lowest_exponent() const;          // in units of 1/denom; order if empty
    bool is_zero() const { return coeffs_.empty(); }

    QSeries rescaled(long long new_denom) const;  // new_denom multiple of denom
    QSeries truncated(long long new_order) const;

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator-() const;
    QSeries scaled(const Int& c) const;

    static QSeries one(long long denom, long long order);
    static QSeries monomial(long long denom, long long order, long long k, const Int& c);

    // Sorted "exponent,coefficient" lines, exponents as reduced rationals.
    std::string to_csv() const;

    // Numeric evaluation at q = e^{2 pi i tau}: sum c_k e^{2 pi i tau k/D}.
    cx evaluate(const TauPoint& tau) const;

  private:
    long long denom_;
    long long order_;
    std::map<long long, Int> coeffs_;
};

// Aligns two series on a common denominator; result orders are comparable.
std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b);

// (q)_inf = prod_{n>=1} (1 - q^n), truncated at order N (units 1/D).
QSeries euler_product(long long N, long long D = 1);

// (a; q^step)_n with a = a_sign * q^{a_exp}: prod_{k=0}^{n-1} (1 - a q^{step k}).
// n < 0 means the infinite product.
QSeries qpochhammer(const Rat& a_exp, int a_sign, long long n, long long N,
                    long long D = 1, const Rat& step = Rat(1));

// Multiplicative inverse through the truncation order; the argument must have
// constant term +-1 and no negative exponents.
QSeries invert_unit_series(const QSeries& s);

// Fifth-order f0 in Eulerian form: sum_{n>=0} q^{n^2} / (-q;q)_n.
QSeries eulerian_f0(long long N);

// ---------------------------------------------------------------------------
// Indefinite sums over region pairs
// ---------------------------------------------------------------------------

struct LinearIneq {
    std::vector<long long> v;
    long long c = 0;
    bool strict = false;  // v.n + c > 0 instead of >= 0
};

struct Region {
    std::vector<LinearIneq> ineqs;  // conjunction; empty list = empty region
    bool empty = true;
    bool contains(const std::vector<long long>& n) const;
    static Region of(std::vector<LinearIneq> ineqs);
};

// (sum_{n in pos} - sum_{n in neg}) (-1)^{sign_form.n + sign_const}
//   q^{(n^T G n + l.n + e)/exp_den}
// Both regions must be proper: the exponent is bounded below and only finitely
// many lattice points fall under any bound.
struct IndefiniteSumSpec {
    int dim = 2;
    std::vector<std::vector<long long>> G;  // symmetric integer matrix
    std::vector<long long> l;
    long long e = 0;
    long long exp_den = 1;
    std::vector<long long> sign_form;
    long long sign_const = 0;
    Region pos, neg;
};

QSeries indefinite_sum(const IndefiniteSumSpec& spec, long long N, long long D,
                       long long point_budget = 10000000);

// ---------------------------------------------------------------------------
// Exact comparison
// ---------------------------------------------------------------------------

struct CompareResult {
    bool pass = false;
    std::optional<Rat> first_mismatch;  // smallest differing exponent
    Rat checked_below{0};               // exponents < this bound were compared
};

// Compares a and b for all exponents < through (after alignment); `through`
// is clamped to the common validity order.
CompareResult compare(const QSeries& a, const QSeries& b, const Rat& through);

}  // namespace mocktheta::qs
