#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "meanders/correlators.hpp"

namespace meanders {

// Homogeneous polynomial N_{g,n}(b_1,...,b_n) of degree 6g-6+2n. Exponents
// are stored halved: the key d maps to the coefficient of b^{2d}.
struct VolumePolynomial {
    long g = 0;
    long n = 0;
    std::map<std::vector<int>, Rat> terms;
};

// Polynomial in edge variables, same halved-exponent convention.
using EdgePolynomial = std::map<std::vector<int>, Rat>;

namespace detail {

template <typename F>
inline void for_each_composition(long total, long parts, F&& f) {
    std::vector<int> d(static_cast<size_t>(parts), 0);
    std::function<void(long, long)> rec = [&](long pos, long left) {
        if (pos == parts - 1) {
            d[static_cast<size_t>(pos)] = (int)left;
            f(d);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            d[static_cast<size_t>(pos)] = (int)v;
            rec(pos + 1, left - v);
        }
    };
    if (parts == 0) {
        if (total == 0) f(d);
        return;
    }
    rec(0, total);
}

}  // namespace detail

/// Coefficient c_d = <tau_{d_1}...tau_{d_n}>_g / (2^{5g-6+2n} d!).
inline Rat n_poly_coefficient(long g, const std::vector<int>& d) {
    long n = (long)d.size();
    Rat corr = correlator(g, d);
    if (corr == 0) return Rat(0);
    Int dfact = 1;
    for (int x : d) dfact *= factorial(x);
    return corr / (pow2(5 * g - 6 + 2 * n) * Rat(dfact));
}

inline VolumePolynomial n_poly(long g, long n) {
    if (2 * g + n < 3) throw math_error("n_poly: unstable (g,n)");
    VolumePolynomial p;
    p.g = g;
    p.n = n;
    detail::for_each_composition(3 * g - 3 + n, n, [&](const std::vector<int>& d) {
        Rat c = n_poly_coefficient(g, d);
        if (c != 0) p.terms.emplace(d, c);
    });
    return p;
}

/// Substitute per-slot assignments: entry -1 kills the slot (a leg), entry
/// v >= 0 routes it to edge variable v; slots sharing a variable merge by
/// exponent addition (loops).
inline EdgePolynomial eval_edges(const VolumePolynomial& poly, const std::vector<int>& assignment,
                                 long num_vars) {
    if ((long)assignment.size() != poly.n) throw math_error("eval_edges: assignment length mismatch");
    EdgePolynomial out;
    for (const auto& [d, c] : poly.terms) {
        std::vector<int> e(static_cast<size_t>(num_vars), 0);
        bool dead = false;
        for (size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) continue;
            if (assignment[i] < 0) {
                dead = true;
                break;
            }
            e[static_cast<size_t>(assignment[i])] += d[i];
        }
        if (!dead) out[e] += c;
    }
    return out;
}

inline std::string to_text(const VolumePolynomial& p) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : p.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_to_string(c) << ")";
        for (size_t i = 0; i < d.size(); ++i)
            if (d[i] != 0) os << "*b" << (i + 1) << "^" << 2 * d[i];
    }
    return os.str();
}

}  // namespace meanders
