#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace flatlink {

/// Exact integer of unbounded magnitude.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline std::string to_string(const Integer& x) { return x.str(); }

/// Floor division (rounds toward negative infinity).
inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

/// Extended gcd: returns g >= 0 with s*a + t*b == g.
inline Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t)
{
    Integer old_r = a, r = b;
    Integer old_s = 1, cur_s = 0;
    Integer old_t = 0, cur_t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - q * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

} // namespace flatlink
