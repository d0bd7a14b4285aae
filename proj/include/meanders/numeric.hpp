#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "meanders/pi_value.hpp"

namespace meanders {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

inline const BigFloat& pi_bigfloat() {
    static const BigFloat pi = boost::math::constants::pi<BigFloat>();
    return pi;
}

inline BigFloat to_bigfloat(const Rat& r) {
    return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

inline BigFloat to_bigfloat(const PiValue& v) {
    using boost::multiprecision::pow;
    return to_bigfloat(v.coeff) * pow(pi_bigfloat(), v.pi_exp);
}

inline double approx_double(const PiValue& v) { return static_cast<double>(to_bigfloat(v)); }

}  // namespace meanders
