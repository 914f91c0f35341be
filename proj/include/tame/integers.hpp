#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "tame/error.hpp"

namespace tame {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_val(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int ipow(Int base, uint64_t e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat rpow(Rat base, uint64_t e) {
    Rat r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// floor of the k-th root of x >= 0
inline Int iroot_floor(const Int& x, uint64_t k) {
    require(x >= 0 && k >= 1, ErrorKind::internal, "iroot_floor domain");
    if (x == 0 || x == 1 || k == 1) return x;
    uint64_t bits = boost::multiprecision::msb(x) + 1;
    Int r = Int(1) << (bits / k + 1);  // r^k > x
    for (;;) {
        // Newton step for r^k - x, floored
        Int rk1 = ipow(r, k - 1);
        Int next = ((k - 1) * r * rk1 + x) / (k * rk1);
        if (next >= r) break;
        r = next;
    }
    while (ipow(r, k) > x) --r;
    return r;
}

// largest t with 2^t <= x (x >= 1)
inline int64_t floor_log2(const Int& x) {
    require(x >= 1, ErrorKind::internal, "floor_log2 domain");
    return static_cast<int64_t>(boost::multiprecision::msb(x));
}

// smallest t with x <= 2^t (x >= 1)
inline int64_t ceil_log2(const Int& x) {
    require(x >= 1, ErrorKind::internal, "ceil_log2 domain");
    int64_t t = floor_log2(x);
    if ((Int(1) << static_cast<unsigned>(t)) < x) ++t;
    return t;
}

inline Rat make_rat(const Int& num, const Int& den) {
    require(den != 0, ErrorKind::internal, "rational with zero denominator");
    return Rat(num, den);
}

inline Int rat_floor(const Rat& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

std::string int_to_string(const Int& x);
Int int_from_string(const std::string& s);
std::string rat_to_string(const Rat& x);   // "p" or "p/q"
Rat rat_from_string(const std::string& s);

} // namespace tame
