#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "millsbounds/double_double.hpp"

namespace mills {

using BigInt = boost::multiprecision::cpp_int;

// Nearest-ish double-double to an exact integer (error below 2^-104 relative).
// Integers beyond the double range map to +/-inf.
ExtReal to_ext_real(const BigInt& n);

// num/den rounded to double-double without forming either operand as a float,
// so arbitrarily large exact ratios convert without overflow. den != 0.
ExtReal ratio_to_ext_real(const BigInt& num, const BigInt& den);

}  // namespace mills
