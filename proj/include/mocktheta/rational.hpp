#pragma once
// Small exact rational on 64-bit integers. Values in this project are tiny
// (denominators up to a few hundred); intermediates go through __int128.

#include <cstdint>
#include <numeric>
#include <string>

#include "mocktheta/core.hpp"

namespace mocktheta {

struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw bad_input("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return double(num) / double(den); }
    bool is_integer() const { return den == 1; }
    bool is_zero() const { return num == 0; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
        __int128 d = (__int128)a.den * b.den;
        return from128(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + Rat(-b.num, b.den); }
    friend Rat operator-(const Rat& a) { return Rat(-a.num, a.den); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw bad_input("rational division by zero");
        return from128((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Parses "p", "p/q", with optional sign.
    static Rat parse(const std::string& s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(std::stoll(s));
            return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw bad_input("cannot parse rational: " + s);
        }
    }

  private:
    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw bad_input("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        Rat r;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw bad_input("rational overflow");
        r.num = (long long)n;
        r.den = (long long)d;
        return r;
    }
};

}  // namespace mocktheta
