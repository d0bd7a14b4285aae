#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "meanders/errors.hpp"

namespace meanders {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(long n) {
    if (n < 0) throw math_error("factorial of negative argument");
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// (n)!! with the empty-product conventions (-1)!! = 0!! = 1.
inline Int double_factorial(long n) {
    if (n < -1) throw math_error("double factorial of argument < -1");
    Int r = 1;
    for (long i = n; i >= 2; i -= 2) r *= i;
    return r;
}

// Binomial coefficient; out-of-range lower index gives 0, which keeps the
// collapsed binomial sums uniform.
inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// 2^e as an exact rational, e may be negative.
inline Rat pow2(long e) {
    Int p = Int(1) << static_cast<unsigned>(e < 0 ? -e : e);
    return e >= 0 ? Rat(p) : Rat(1, p);
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw math_error("zero to negative power");
    Rat b = e < 0 ? Rat(1) / base : base;
    long m = e < 0 ? -e : e;
    Rat r = 1;
    while (m) {
        if (m & 1) r *= b;
        b *= b;
        m >>= 1;
    }
    return r;
}

inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace meanders
