#pragma once

// High-precision ground truth for the standard Gaussian: density, upper
// tail 1 - Phi and Mills' ratio. Relative error of the upper tail is below
// 1e-25 wherever the value is a normal double-double (x up to about 36);
// beyond that use upper_tail_scaled().

#include <cstdint>

#include "millsbounds/double_double.hpp"

namespace mills::oracle {

// Value = mantissa * 10^exponent10 with 1 <= |mantissa| < 10 (or zero).
struct ScaledReal {
    ExtReal mantissa;
    std::int64_t exponent10 = 0;
};

ExtReal gaussian_density(const ExtReal& x);

// 1 - Phi(x) for every finite x.
ExtReal upper_tail(const ExtReal& x);

// Underflow-free form of upper_tail, usable for any finite x.
ScaledReal upper_tail_scaled(const ExtReal& x);

// (1 - Phi(x)) / phi(x).
ExtReal mills_ratio(const ExtReal& x);

// Maclaurin series for Phi, summed until terms drop below 1e-35. Exposed so
// the two evaluation routes can be cross-checked.
ExtReal upper_tail_series(const ExtReal& x);

// Continued fraction x + 1/(x + 2/(x + 3/...)) evaluated by backward
// recurrence with depth doubled until two passes agree to 1e-30. Requires
// x > 0; throws std::domain_error otherwise.
ExtReal upper_tail_continued_fraction(const ExtReal& x);

// Reciprocal of the continued fraction above, i.e. Mills' ratio for x > 0.
ExtReal mills_ratio_continued_fraction(const ExtReal& x);

// Switch point between the series (x <= cutoff) and the continued fraction.
inline constexpr double kSeriesCutoff = 2.0;

// Constants at oracle precision.
ExtReal inv_sqrt_2pi();
ExtReal sqrt_2_over_pi();

}  // namespace mills::oracle
