#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "mocktheta/qseries.hpp"

using namespace mocktheta;
using namespace mocktheta::qs;

namespace {

// Brute-force oracle: expand prod_{n=1}^{nmax} (1 - q^n) as a dense array.
std::map<long long, long long> euler_product_oracle(long long N, int nmax) {
    std::map<long long, long long> p{{0, 1}};
    for (int n = 1; n <= nmax; ++n) {
        std::map<long long, long long> next = p;
        for (const auto& [k, c] : p) {
            if (k + n < N) next[k + n] -= c;
        }
        p = std::move(next);
    }
    std::map<long long, long long> out;
    for (const auto& [k, c] : p)
        if (k < N && c != 0) out[k] = c;
    return out;
}

// Brute-force partition counts via the standard recurrence oracle.
std::vector<long long> partition_oracle(int N) {
    std::vector<long long> p(N + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= N; ++part)
        for (int k = part; k <= N; ++k) p[k] += p[k - part];
    return p;
}

QSeries random_series(std::mt19937_64& eng, long long D, long long N) {
    QSeries s(D, N);
    std::uniform_int_distribution<long long> expd(-5, N - 1);
    std::uniform_int_distribution<long long> coefd(-9, 9);
    for (int t = 0; t < 12; ++t) s.add_term(expd(eng), coefd(eng));
    return s;
}

}  // namespace

TEST_CASE("euler product: hand expansion of (1-q)(1-q^2)(1-q^3)") {
    const QSeries e = euler_product(4);
    // (1-q)(1-q^2)(1-q^3) = 1 - q - q^2 + q^5 + ... ; below order 4 that is
    // 1 - q - q^2 (the q^3 terms cancel: -q^3 + q^3)
    CHECK(e.coeff(0LL) == 1);
    CHECK(e.coeff(1LL) == -1);
    CHECK(e.coeff(2LL) == -1);
    CHECK(e.coeff(3LL) == 0);
}

TEST_CASE("euler product: N=1 truncation is 1") {
    const QSeries e = euler_product(1);
    CHECK(e.coeff(0LL) == 1);
    CHECK(e.coeffs().size() == 1);
}

TEST_CASE("euler product matches the brute-force product oracle") {
    const long long N = 60;
    const QSeries e = euler_product(N);
    const auto oracle = euler_product_oracle(N, 60);
    for (long long k = 0; k < N; ++k) {
        CHECK(e.coeff(k) == Int(oracle.count(k) ? oracle.at(k) : 0));
    }
    // pentagonal signs land where they should
    CHECK(e.coeff(5LL) == 1);
    CHECK(e.coeff(7LL) == 1);
    CHECK(e.coeff(12LL) == -1);
    CHECK(e.coeff(15LL) == -1);
    CHECK(e.coeff(22LL) == 1);
}

TEST_CASE("qpochhammer: (-q;q)_2 = (1+q)(1+q^2)") {
    const QSeries p = qpochhammer(Rat(1), -1, 2, 10);
    CHECK(p.coeff(0LL) == 1);
    CHECK(p.coeff(1LL) == 1);
    CHECK(p.coeff(2LL) == 1);
    CHECK(p.coeff(3LL) == 1);
    CHECK(p.coeff(4LL) == 0);
}

TEST_CASE("qpochhammer: empty product is 1") {
    const QSeries p = qpochhammer(Rat(1), 1, 0, 10);
    CHECK(p.coeff(0LL) == 1);
    CHECK(p.coeffs().size() == 1);
}

TEST_CASE("qpochhammer: (q;q)_inf equals euler_product") {
    const QSeries a = qpochhammer(Rat(1), 1, -1, 50);
    const QSeries b = euler_product(50);
    CHECK(compare(a, b, Rat(50)).pass);
}

TEST_CASE("invert_unit_series: geometric series") {
    const QSeries s = QSeries::one(1, 12) - QSeries::monomial(1, 12, 1, 1);
    const QSeries inv = invert_unit_series(s);
    for (long long k = 0; k < 12; ++k) CHECK(inv.coeff(k) == 1);
}

TEST_CASE("invert_unit_series: 1/(q)_inf gives partition numbers") {
    const long long N = 40;
    const QSeries inv = invert_unit_series(euler_product(N));
    const auto p = partition_oracle(N);
    for (long long k = 0; k < N; ++k) CHECK(inv.coeff(k) == Int(p[k]));
    CHECK(inv.coeff(6LL) == 11);  // 1,1,2,3,5,7,11
}

TEST_CASE("invert_unit_series: identity and error paths") {
    const QSeries one = QSeries::one(1, 8);
    CHECK(compare(invert_unit_series(one), one, Rat(8)).pass);
    QSeries bad(1, 8);
    bad.add_term(0, 2);
    CHECK_THROWS_AS(invert_unit_series(bad), inversion_error);
    QSeries neg(1, 8);
    neg.add_term(-1, 1);
    CHECK_THROWS_AS(invert_unit_series(neg), inversion_error);
}

TEST_CASE("two-sided inverse through the truncation order") {
    std::mt19937_64 eng(11);
    for (int it = 0; it < 20; ++it) {
        QSeries s = random_series(eng, 1, 25);
        // force a unit constant term and no negative exponents
        QSeries u = QSeries::one(1, 25);
        for (const auto& [k, c] : s.coeffs())
            if (k > 0) u.add_term(k, c);
        const QSeries inv = invert_unit_series(u);
        const QSeries prod = u * inv;
        CHECK(compare(prod, QSeries::one(1, prod.order()), Rat(prod.order())).pass);
        const QSeries prod2 = inv * u;
        CHECK(compare(prod2, QSeries::one(1, prod2.order()), Rat(prod2.order())).pass);
    }
}

TEST_CASE("multiplication is commutative and associative") {
    std::mt19937_64 eng(5);
    for (int it = 0; it < 25; ++it) {
        const QSeries a = random_series(eng, 2, 30);
        const QSeries b = random_series(eng, 3, 30);
        const QSeries c = random_series(eng, 1, 30);
        const QSeries ab = a * b, ba = b * a;
        CHECK(compare(ab, ba, Rat(ab.order(), ab.denom())).pass);
        const QSeries l = (a * b) * c, r = a * (b * c);
        const long long ord = std::min(l.order(), r.order());
        CHECK(compare(l, r, Rat(ord, l.denom())).pass);
    }
}

TEST_CASE("mixed denominators rescale to the lcm") {
    QSeries a(2, 10);  // q^{1/2}
    a.add_term(1, 3);
    QSeries b(3, 12);  // q^{1/3}
    b.add_term(1, 5);
    const QSeries p = a * b;
    CHECK(p.denom() == 6);
    CHECK(p.coeff(Rat(5, 6)) == 15);
}

TEST_CASE("eulerian f0: first terms 1 + q - q^2 + ...") {
    // hand oracle: 1 + q/(1+q) + q^4/((1+q)(1+q^2)) through q^4
    //   q/(1+q)       = q - q^2 + q^3 - q^4 + ...
    //   q^4/((1+q)(1+q^2)) = q^4 + ...
    const QSeries f = eulerian_f0(5);
    CHECK(f.coeff(0LL) == 1);
    CHECK(f.coeff(1LL) == 1);
    CHECK(f.coeff(2LL) == -1);
    CHECK(f.coeff(3LL) == 1);
    CHECK(f.coeff(4LL) == 0);
}

TEST_CASE("eulerian f0: N=1 is 1") {
    const QSeries f = eulerian_f0(1);
    CHECK(f.coeff(0LL) == 1);
    CHECK(f.coeffs().size() == 1);
}

TEST_CASE("indefinite sum: empty regions give zero") {
    IndefiniteSumSpec spec;
    spec.dim = 2;
    spec.G = {{1, 0}, {0, 1}};
    spec.l = {0, 0};
    const QSeries s = indefinite_sum(spec, 20, 1);
    CHECK(s.is_zero());
}

TEST_CASE("indefinite sum: first quadrant pair reproduces (q)_inf^2") {
    // (sum_{n,m>=0} - sum_{n,m<0}) (-1)^{n+m} q^{(n^2+4nm+m^2+n+m)/2}
    IndefiniteSumSpec spec;
    spec.dim = 2;
    spec.G = {{1, 2}, {2, 1}};
    spec.l = {1, 1};
    spec.exp_den = 2;
    spec.sign_form = {1, 1};
    spec.pos = Region::of({{{1, 0}, 0, false}, {{0, 1}, 0, false}});
    spec.neg = Region::of({{{-1, 0}, -1, false}, {{0, -1}, -1, false}});
    const QSeries s = indefinite_sum(spec, 50, 1);
    const QSeries e = euler_product(50);
    CHECK(compare(s, e * e, Rat(50)).pass);
}

TEST_CASE("indefinite sum: properness budget is enforced") {
    IndefiniteSumSpec spec;
    spec.dim = 2;
    spec.G = {{0, 0}, {0, 0}};  // exponent constant: improper
    spec.l = {0, 0};
    spec.pos = Region::of({{{1, 0}, 0, false}});
    spec.neg = Region();
    CHECK_THROWS_AS(indefinite_sum(spec, 10, 1, 2000), properness_violation);
}

TEST_CASE("compare: equal, constructed mismatch, csv shape") {
    const QSeries e = euler_product(50);
    CHECK(compare(e, e, Rat(50)).pass);
    QSeries f = e;
    f.add_term(49, 1);
    const auto r = compare(e, f, Rat(50));
    CHECK(!r.pass);
    REQUIRE(r.first_mismatch.has_value());
    CHECK(*r.first_mismatch == Rat(49));

    QSeries g(2, 8);
    g.add_term(-1, 2);
    g.add_term(3, -4);
    CHECK(g.to_csv() == "-1/2,2\n3/2,-4\n");
}

TEST_CASE("numeric evaluation of a truncated series") {
    // geometric check: sum_{k<N} q^k at q = e^{2 pi i tau}
    QSeries s(1, 30);
    for (long long k = 0; k < 30; ++k) s.add_term(k, 1);
    const TauPoint tau(0.3, 1.0);
    const cx q = std::exp(2.0 * kPi * kI * tau.value());
    cx expect = 0.0;
    for (int k = 29; k >= 0; --k) expect = expect * q + 1.0;
    CHECK(std::abs(s.evaluate(tau) - expect) < 1e-12);
}
