#include "millsbounds/exact_integer.hpp"

#include <stdexcept>

namespace mills {

ExtReal to_ext_real(const BigInt& n) {
    const double hi = n.convert_to<double>();
    if (!std::isfinite(hi)) return {hi};
    const BigInt rem = n - BigInt(hi);
    return ExtReal(hi) + ExtReal(rem.convert_to<double>());
}

ExtReal ratio_to_ext_real(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("ratio_to_ext_real: zero denominator");
    if (num == 0) return {0.0};
    const bool negative = (num < 0) != (den < 0);
    const BigInt a = boost::multiprecision::abs(num);
    const BigInt b = boost::multiprecision::abs(den);
    // Scale so the integer quotient carries about 130 significant bits.
    const long shift = 130 - (static_cast<long>(msb(a)) - static_cast<long>(msb(b)));
    BigInt q;
    if (shift >= 0) {
        q = (a << static_cast<unsigned>(shift)) / b;
    } else {
        q = a / (b << static_cast<unsigned>(-shift));
    }
    ExtReal v = ldexp(to_ext_real(q), static_cast<int>(-shift));
    return negative ? -v : v;
}

}  // namespace mills
