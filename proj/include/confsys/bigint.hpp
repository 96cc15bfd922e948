#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace confsys {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline double big_log2(const BigInt& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    // msb + mantissa from the top 64 bits keeps this exact enough for reports
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x));
    if (bits <= 62) return std::log2(x.convert_to<double>());
    BigInt top = x >> (bits - 52);
    return static_cast<double>(bits - 52) + std::log2(top.convert_to<double>());
}

inline std::string rat_string(const BigRat& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace confsys
