#pragma once

// Exact arithmetic primitives shared by every module: arbitrary-precision
// integers and rationals, modular helpers, and the canonical "p/q" text form
// (lowest terms, positive denominator, bare "p" for integers).

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfano {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

/// Largest integer <= x.
inline Int rat_floor(const Rat& x) {
    Int q = numerator(x) / denominator(x);
    if (numerator(x) < 0 && q * denominator(x) != numerator(x)) --q;
    return q;
}

inline std::string to_string(const Int& n) { return n.str(); }

inline std::string to_string(const Rat& x) {
    if (is_integer(x)) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

namespace detail {

inline Int parse_int(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("sign without digits");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw std::invalid_argument("bad integer literal: " + std::string(s));
    return Int(std::string(s));
}

} // namespace detail

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
inline Rat parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(detail::parse_int(s));
    Int num = detail::parse_int(s.substr(0, slash));
    Int den = detail::parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    return Rat(num, den);
}

/// Inverse of a modulo m (m >= 1); throws std::domain_error if gcd(a, m) != 1.
inline long long mod_inverse(long long a, long long m) {
    long long r0 = m, r1 = ((a % m) + m) % m;
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("not invertible: gcd != 1");
    return ((t0 % m) + m) % m;
}

/// Least nonnegative residue of n modulo m (m >= 1).
inline long long mod_nonneg(long long n, long long m) {
    long long r = n % m;
    return r < 0 ? r + m : r;
}

inline long long mod_nonneg(const Int& n, long long m) {
    Int r = n % m;
    if (r < 0) r += m;
    return static_cast<long long>(r);
}

} // namespace qfano
