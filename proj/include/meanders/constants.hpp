#pragma once

#include <map>
#include <optional>

#include "meanders/stable_graphs.hpp"

namespace meanders {

/// Contribution of the nonseparating one-edge graph, single band only.
/// g = 1: 4n C(2n-2, n-1); g >= 2 uses the 2-correlator sum.
inline Rat cyl1_gamma1(long g, long n) {
    if (g < 1 || (g == 1 && n < 1)) throw math_error("cyl1_gamma1: invalid (g,n)");
    if (g == 1) return Rat(4 * n) * Rat(binomial(2 * n - 2, n - 1));
    Rat sum = 0;
    for (long k = 0; k <= 3 * g - 4; ++k)
        sum += Rat(binomial(3 * g - 4 + 2 * n, n + k)) * two_point_correlator(g - 1, k);
    return pow2(g + 1) * Rat(binomial(4 * g - 4 + n, g) * factorial(g)) * sum;
}

/// Total single-band contribution of all separating one-edge graphs,
/// including the labeled-pole distribution and automorphism factors.
inline Rat cyl1_separating_total(long g, long n) {
    if (g < 0 || 2 * g + n < 4) throw math_error("cyl1_separating_total: invalid (g,n)");
    Rat sum = 0;
    for (long g1 = 0; g1 <= g; ++g1)
        sum += Rat(binomial(g, g1)) * Rat(binomial(3 * g - 4 + 2 * n, 3 * g1 - 2 + n));
    Rat pre = pow2(g + 1) * Rat(binomial(4 * g - 4 + n, g));
    pre /= Rat(boost::multiprecision::pow(Int(24), static_cast<unsigned>(g)));
    return pre * sum;
}

/// cyl_1(Q_{g,n}): single-band contribution to the Masur-Veech volume.
inline Rat cyl1_q(long g, long n) {
    if (2 * g + n < 4) throw math_error("cyl1_q: need 2g+n >= 4");
    if (g == 0) return Rat(2) * Rat(binomial(2 * n - 4, n - 2));
    return cyl1_gamma1(g, n) + cyl1_separating_total(g, n);
}

struct MeanderConstants {
    long g = 0, n = 0;
    PiValue vol;      // Vol Q_{g,n}
    Rat cyl1;         // cyl_1(Q_{g,n})
    PiValue cyl11;    // cyl_1^2 / Vol
    PiValue c1;       // zeta(6g-6+2n) cyl_1
    PiValue p1;       // cyl_1 / Vol
    PiValue c_gn;     // leading meander-count coefficient
};

inline MeanderConstants meander_constants(long g, long n) {
    if (2 * g + n < 4) throw math_error("meander_constants: need 2g+n >= 4");
    MeanderConstants mc;
    mc.g = g;
    mc.n = n;
    mc.vol = masur_veech_volume(g, n);
    mc.cyl1 = cyl1_q(g, n);
    PiValue cyl1v(mc.cyl1, 0);
    mc.cyl11 = cyl1v * cyl1v / mc.vol;
    mc.c1 = zeta_even(6 * g - 6 + 2 * n) * mc.cyl1;
    mc.p1 = cyl1v / mc.vol;
    Rat denom = Rat(factorial(4 * g - 4 + n) * factorial(n)) * Rat(12 * g - 12 + 4 * n);
    mc.c_gn = mc.cyl11 / denom;
    return mc;
}

// ---------------------------------------------------------------------------
// Oriented (Abelian) counterparts.
// ---------------------------------------------------------------------------

/// cyl_1(H_g) = 1/((2g-1) 2^{2g-3}).
inline Rat cyl1_h(long g) {
    if (g < 1) throw math_error("cyl1_h: g must be >= 1");
    return Rat(1) / (Rat(2 * g - 1) * pow2(2 * g - 3));
}

/// Exact Vol H_g where known: pi^2/3 for g=1 and pi^4/135 for g=2
/// (back-derived from the single-band proportions 6/pi^2 and 45/(2 pi^4)).
inline std::optional<PiValue> exact_vol_h(long g) {
    if (g == 1) return PiValue(Rat(1, 3), 2);
    if (g == 2) return PiValue(Rat(1, 135), 4);
    return std::nullopt;
}

struct AbelianConstants {
    long g = 0;
    PiValue vol_h;
    Rat cyl1;
    PiValue cyl11;
    PiValue p1;
    PiValue c_g_plus;
};

/// Exact-mode constants; g >= 3 requires a caller-supplied exact volume.
inline AbelianConstants abelian_constants(long g, std::optional<PiValue> supplied_vol = std::nullopt) {
    if (g < 1) throw math_error("abelian_constants: g must be >= 1");
    AbelianConstants ac;
    ac.g = g;
    std::optional<PiValue> vol = supplied_vol ? supplied_vol : exact_vol_h(g);
    if (!vol) throw math_error("abelian_constants: exact volume unavailable for g=" + std::to_string(g) +
                               " (supply a volume table)");
    ac.vol_h = *vol;
    ac.cyl1 = cyl1_h(g);
    PiValue c1(ac.cyl1, 0);
    ac.cyl11 = c1 * c1 / ac.vol_h;
    ac.p1 = c1 / ac.vol_h;
    ac.c_g_plus = ac.cyl11 / (Rat(factorial(2 * g - 2)) * Rat(8 * g - 6));
    return ac;
}

// ---------------------------------------------------------------------------
// Separating / nonseparating frequency ratios.
// ---------------------------------------------------------------------------

/// Finite-(g,n) ratio of separating over nonseparating frequencies; the
/// zeta factors cancel, leaving an exact rational.
inline Rat sep_nonsep_ratio(long g, long n) {
    if (g < 1 || (g == 1 && n < 1)) throw math_error("sep_nonsep_ratio: invalid (g,n)");
    return cyl1_separating_total(g, n) / cyl1_gamma1(g, n);
}

/// Limit of the ratio as the number of cusps grows; 1/6 in genus 1.
inline Rat sep_nonsep_limit(long g) {
    if (g < 1) throw math_error("sep_nonsep_limit: g must be >= 1");
    if (g == 1) return Rat(1, 6);
    Rat denom = Rat(boost::multiprecision::pow(Int(12), static_cast<unsigned>(g)) * factorial(g)) *
                sum_two_correlators(g - 1);
    return Rat(1) / denom;
}

}  // namespace meanders
