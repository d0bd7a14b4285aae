#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "meanders/rational.hpp"

namespace meanders {

// Bernoulli number B_m, convention B_1 = -1/2. Memoized; computed by the
// defining recurrence sum_{k<m} C(m+1,k) B_k = -B_m (m+1) ... rearranged.
inline Rat bernoulli(long m) {
    if (m < 0) throw math_error("bernoulli: negative index");
    static std::vector<Rat> cache{Rat(1), Rat(-1, 2)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while ((long)cache.size() <= m) {
        long i = (long)cache.size();
        Rat v = 0;
        for (long k = 0; k < i; ++k) v += Rat(binomial(i + 1, k)) * cache[k];
        cache.push_back(-v / Rat(i + 1));
    }
    return cache[m];
}

// Exact rational multiple of an integer power of pi. Negative exponents
// appear only in ratios; sums require matching exponents.
struct PiValue {
    Rat coeff;
    long pi_exp = 0;

    PiValue() : coeff(0) {}
    PiValue(Rat c, long e) : coeff(std::move(c)), pi_exp(e) {}
    explicit PiValue(const Rat& c) : coeff(c), pi_exp(0) {}

    bool is_zero() const { return coeff == 0; }

    PiValue& operator+=(const PiValue& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        if (pi_exp != o.pi_exp)
            throw math_error("PiValue addition with mismatched pi exponents (" +
                             std::to_string(pi_exp) + " vs " + std::to_string(o.pi_exp) + ")");
        coeff += o.coeff;
        return *this;
    }
    PiValue& operator-=(const PiValue& o) { return *this += PiValue(-o.coeff, o.pi_exp); }
    PiValue operator+(const PiValue& o) const {
        PiValue r = *this;
        r += o;
        return r;
    }
    PiValue operator-(const PiValue& o) const {
        PiValue r = *this;
        r -= o;
        return r;
    }
    PiValue operator*(const PiValue& o) const { return PiValue(coeff * o.coeff, pi_exp + o.pi_exp); }
    PiValue operator/(const PiValue& o) const {
        if (o.coeff == 0) throw math_error("PiValue division by zero");
        return PiValue(coeff / o.coeff, pi_exp - o.pi_exp);
    }
    PiValue operator*(const Rat& r) const { return PiValue(coeff * r, pi_exp); }
    PiValue operator/(const Rat& r) const {
        if (r == 0) throw math_error("PiValue division by zero");
        return PiValue(coeff / r, pi_exp);
    }
    bool operator==(const PiValue& o) const {
        if (coeff == 0 && o.coeff == 0) return true;
        return coeff == o.coeff && pi_exp == o.pi_exp;
    }
};

inline PiValue pi_pow(long e) { return PiValue(Rat(1), e); }

// zeta(s) for even s >= 2: (-1)^{s/2+1} B_s (2 pi)^s / (2 s!), an exact
// rational multiple of pi^s. Odd arguments signal a malformed monomial
// upstream and are rejected.
inline PiValue zeta_even(long s) {
    if (s < 2 || s % 2 != 0) throw math_error("odd zeta argument reached (s=" + std::to_string(s) + ")");
    Rat c = bernoulli(s) * pow2(s) / Rat(2 * factorial(s));
    if ((s / 2 + 1) % 2 != 0) c = -c;
    return PiValue(c, s);
}

// Canonical text form "p/q * pi^k"; plain "p/q" when k = 0.
inline std::string to_text(const PiValue& v) {
    if (v.pi_exp == 0 || v.coeff == 0) return rat_to_string(v.coeff);
    return rat_to_string(v.coeff) + " * pi^" + std::to_string(v.pi_exp);
}

inline PiValue pi_value_from_text(const std::string& s) {
    auto star = s.find('*');
    if (star == std::string::npos) return PiValue(rat_from_string(s));
    std::string head = s.substr(0, star);
    while (!head.empty() && head.back() == ' ') head.pop_back();
    auto caret = s.find('^', star);
    if (caret == std::string::npos) throw math_error("cannot parse pi value: " + s);
    return PiValue(rat_from_string(head), std::stol(s.substr(caret + 1)));
}

namespace detail {

// Rational interval [lo, hi] enclosing pi, with hi - lo < 10^-digits.
// Machin's formula with alternating-series tail bounds.
inline void pi_interval(long digits, Rat& lo, Rat& hi) {
    static std::mutex mtx;
    static long cached_digits = -1;
    static Rat cached_lo, cached_hi;
    std::lock_guard<std::mutex> lock(mtx);
    if (cached_digits >= digits) {
        lo = cached_lo;
        hi = cached_hi;
        return;
    }
    const Rat eps(1, boost::multiprecision::pow(Int(10), static_cast<unsigned>(digits + 1)));

    auto atan_inv = [&](long x, Rat& alo, Rat& ahi) {
        // atan(1/x) alternating series; partial sum after an odd number of
        // terms overestimates, even underestimates.
        Rat sum = 0;
        Rat term;
        Int xpow = x;
        long k = 0;
        for (;;) {
            term = Rat(1, Int(2 * k + 1) * xpow);
            if (k % 2 == 0)
                sum += term;
            else
                sum -= term;
            xpow *= Int(x) * Int(x);
            Rat next(1, Int(2 * k + 3) * xpow);
            if (next < eps / 64) {
                if (k % 2 == 0) {
                    ahi = sum;
                    alo = sum - next;
                } else {
                    alo = sum;
                    ahi = sum + next;
                }
                return;
            }
            ++k;
        }
    };
    Rat a5lo, a5hi, a239lo, a239hi;
    atan_inv(5, a5lo, a5hi);
    atan_inv(239, a239lo, a239hi);
    cached_lo = 16 * a5lo - 4 * a239hi;
    cached_hi = 16 * a5hi - 4 * a239lo;
    cached_digits = digits;
    lo = cached_lo;
    hi = cached_hi;
}

inline Int round_nearest(const Rat& q) {
    // Half-away-from-zero; callers with irrational inputs never hit a tie.
    Int n = numerator(q), d = denominator(q);
    Int twice = 2 * n;
    Int r = (twice >= 0) ? (twice + d) / (2 * d) : -((-twice + d) / (2 * d));
    return r;
}

}  // namespace detail

// Correctly rounded decimal rendering with `digits` places after the point.
inline std::string to_decimal(const PiValue& v, long digits) {
    if (digits < 1) throw math_error("to_decimal: digits must be >= 1");
    Int scale = boost::multiprecision::pow(Int(10), static_cast<unsigned>(digits));
    Int rounded;
    if (v.pi_exp == 0 || v.coeff == 0) {
        rounded = detail::round_nearest(v.coeff * scale);
    } else {
        long guard = digits + 2 * (v.pi_exp < 0 ? -v.pi_exp : v.pi_exp) + 24;
        for (;;) {
            Rat plo, phi;
            detail::pi_interval(guard, plo, phi);
            Rat vlo = v.coeff * rat_pow(v.pi_exp > 0 ? plo : phi, v.pi_exp);
            Rat vhi = v.coeff * rat_pow(v.pi_exp > 0 ? phi : plo, v.pi_exp);
            if (vlo > vhi) std::swap(vlo, vhi);
            Int rlo = detail::round_nearest(vlo * scale);
            Int rhi = detail::round_nearest(vhi * scale);
            if (rlo == rhi) {
                rounded = rlo;
                break;
            }
            guard += 32;
        }
    }
    bool neg = rounded < 0;
    Int mag = neg ? Int(-rounded) : rounded;
    Int ip = mag / scale, fp = mag % scale;
    std::string frac = fp.str();
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    return (neg ? "-" : "") + ip.str() + "." + frac;
}

}  // namespace meanders
