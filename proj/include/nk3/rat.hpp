#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "nk3/errors.hpp"

namespace nk3 {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return numerator(r); }
inline Int den(const Rat& r) { return denominator(r); }

// Floor division for cpp_int (operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += (m < 0 ? -m : m);
    return r;
}

// Canonical representative of r mod m, in [0, m).
inline Rat reduce_mod(const Rat& r, const Int& m) {
    Int k = floor_div(num(r), den(r) * m);
    return r - Rat(k * m);
}

inline Rat mod2z(const Rat& r) { return reduce_mod(r, 2); }
inline Rat mod1z(const Rat& r) { return reduce_mod(r, 1); }

inline std::string rat_to_string(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline Rat rat_from_string(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
        Int n(std::string(s.substr(0, slash)));
        Int d(std::string(s.substr(slash + 1)));
        if (d == 0) throw ParseError("zero denominator in rational");
        return Rat(n, d);
    } catch (const std::exception& e) {
        throw ParseError("bad rational '" + std::string(s) + "'");
    }
}

// Value of q at a group element, q: D -> Q/2Z.  Stored canonically in [0, 2).
struct QMod2Z {
    Rat v;
    QMod2Z() = default;
    explicit QMod2Z(const Rat& r) : v(mod2z(r)) {}
    bool operator==(const QMod2Z&) const = default;
};

// Value of b at a pair, b: D x D -> Q/Z.  Stored canonically in [0, 1).
struct BMod1Z {
    Rat v;
    BMod1Z() = default;
    explicit BMod1Z(const Rat& r) : v(mod1z(r)) {}
    bool operator==(const BMod1Z&) const = default;
};

inline QMod2Z operator+(const QMod2Z& a, const QMod2Z& b) { return QMod2Z(a.v + b.v); }
inline QMod2Z operator-(const QMod2Z& a) { return QMod2Z(-a.v); }
inline BMod1Z operator+(const BMod1Z& a, const BMod1Z& b) { return BMod1Z(a.v + b.v); }
inline BMod1Z operator-(const BMod1Z& a) { return BMod1Z(-a.v); }

// Largest e with l^e | n (n != 0).
inline int ord_l(Int n, const Int& l) {
    if (n == 0) throw Error("ord_l of zero");
    int e = 0;
    while (n % l == 0) { n /= l; ++e; }
    return e;
}

inline bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Decomposes n > 0 as l^e; returns {0, 0} if n is not a prime power > 1.
struct PrimePower {
    long long l = 0;
    int e = 0;
};
inline PrimePower as_prime_power(long long n) {
    if (n < 2) return {};
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            return n == 1 ? PrimePower{d, e} : PrimePower{};
        }
    }
    return {n, 1};
}

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(Int a, Int n) {
    if (n <= 0 || n % 2 == 0) throw Error("jacobi: n must be odd positive");
    a = mod_pos(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

// Legendre symbol (a/p), p an odd prime not dividing a.
inline int legendre(const Int& a, const Int& p) {
    int j = jacobi(a, p);
    if (j == 0) throw NotAUnit("legendre: p divides a");
    return j;
}

} // namespace nk3
