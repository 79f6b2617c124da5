#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace dioph {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Raised when a textual input does not parse.  The CLI maps this to its
/// usage exit code, as opposed to mathematical precondition failures.
struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a mathematical hypothesis of an operation.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

/// x^e for integer e (e may be negative; then x must be nonzero).
inline Rat pow_rat(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    Int n = boost::multiprecision::pow(num(x), static_cast<unsigned>(k));
    Int d = boost::multiprecision::pow(den(x), static_cast<unsigned>(k));
    if (inv) {
        if (n == 0) throw std::domain_error("pow_rat: zero base with negative exponent");
        return Rat(d, n);
    }
    return Rat(n, d);
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& x) { return floor_div(num(x), den(x)); }

inline Int ceil_rat(const Rat& x) {
    Int f = floor_rat(x);
    return (Rat(f) == x) ? f : f + 1;
}

/// Nearest integer to x; half-integers round up.
inline Int round_rat(const Rat& x) { return floor_rat(x + Rat(1, 2)); }

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

/// Natural log of a positive big integer, safe against double overflow.
inline double log_int(const Int& x) {
    if (x <= 0) throw std::domain_error("log_int: nonpositive argument");
    unsigned bits = boost::multiprecision::msb(x);
    if (bits <= 900) return std::log(to_double(x));
    Int top = x >> (bits - 60);
    return std::log(to_double(top)) + static_cast<double>(bits - 60) * std::log(2.0);
}

/// log(|x|) for a nonzero rational with possibly huge numerator/denominator.
inline double log_rat(const Rat& x) {
    if (x == 0) throw std::domain_error("log_rat: zero argument");
    return log_int(boost::multiprecision::abs(num(x))) - log_int(den(x));
}

/// Largest r with r^k <= x (x >= 0).  Also reports whether r^k == x.
inline std::pair<Int, bool> kth_root_floor(const Int& x, unsigned k) {
    if (x < 0) throw std::domain_error("kth_root_floor: negative argument");
    if (x == 0 || x == 1 || k == 1) return {x, true};
    Int lo = 0, hi = Int(1) << (boost::multiprecision::msb(x) / k + 1);
    while (lo < hi) {
        Int mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, k) <= x) lo = mid;
        else hi = mid - 1;
    }
    return {lo, boost::multiprecision::pow(lo, k) == x};
}

/// Parses "p/q", an integer, or a plain decimal like "0.75" into an exact
/// rational.  No exponent notation.
Rat parse_rational(const std::string& text);

/// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& x);

}  // namespace dioph
