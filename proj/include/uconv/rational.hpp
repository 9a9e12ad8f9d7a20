#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>

#include "uconv/core.hpp"

namespace uconv {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact conversion of a finite double into a rational m * 2^e.
inline Rat to_rat(double x) {
    if (!std::isfinite(x)) throw precondition_error("to_rat: value not finite");
    if (x == 0.0) return Rat(0);
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    auto mi = static_cast<std::int64_t>(std::ldexp(m, 53));
    e -= 53;
    Rat r(mi);
    if (e >= 0) {
        r *= Rat(BigInt(1) << e);
    } else {
        r /= Rat(BigInt(1) << (-e));
    }
    return r;
}

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace uconv
