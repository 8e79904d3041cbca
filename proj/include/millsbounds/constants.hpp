#pragma once

// Optimal terminal constants c_k* (the unique c_k making the depth-k
// continued fraction equal sqrt(2/pi) at x = 0) and the quantities derived
// from them: delta_k of the exponential family and the error maximizers
// x_k (square-root family) and x~_k (rational family).
//
// Values are produced from a process-wide grow-only cache. Claims are
// checked for k <= 10^4; larger k is allowed.

#include <cstddef>
#include <vector>

#include "millsbounds/double_double.hpp"

namespace mills::constants {

// Snapshot of the first max_k + 1 entries of every sequence.
struct TailConstants {
    std::vector<ExtReal> c_star;
    std::vector<ExtReal> delta;
    std::vector<ExtReal> x_star;
    std::vector<ExtReal> x_tilde;
    std::size_t max_k = 0;
};

TailConstants materialize(std::size_t max_k);

// c_k* from c_0* = 2/pi, c_1* = pi/2, c_k* = (k/(k-1))^2 c_{k-2}*.
ExtReal c_star(std::size_t k);

// Independent evaluation of c_k* from the closed even/odd double-factorial
// products, computed as exact big-integer ratios.
ExtReal c_star_closed_form(std::size_t k);

// delta_k = (k + 1 - c_k*) / sqrt(c_k*).
ExtReal delta_k(std::size_t k);
// delta_k = sqrt(c_{k+1}*) - sqrt(c_k*); same value, second route.
ExtReal delta_k_difference_form(std::size_t k);

// x_k = 2 sqrt(c)(c - k - 1/2) / sqrt((c - k)(k + 1 - c)).
ExtReal x_star(std::size_t k);
// Same with the denominator written sqrt(1/4 - (c - k - 1/2)^2).
ExtReal x_star_centered_form(std::size_t k);

// x~_k = 2 sqrt(c)(c - k - 1/2) / ((c - k)(k + 1 - c)).
ExtReal x_tilde(std::size_t k);
ExtReal x_tilde_centered_form(std::size_t k);

// 1/(8(k+1)) < c_k* - k - 1/2 < 1/(8 c_k*) < 1/(8(k + 1/2)).
struct SandwichReport {
    bool holds = false;
    ExtReal lower_slack;   // (c - k - 1/2) - 1/(8(k+1))
    ExtReal middle_slack;  // 1/(8c) - (c - k - 1/2)
    ExtReal upper_slack;   // 1/(8(k+1/2)) - 1/(8c)
};
SandwichReport sandwich_check(std::size_t k);

// For even 2 <= k <= 60: sqrt(pi) C(k, k/2) 2^-(k+1/2) sqrt(k + 1/2) lies in
// [1 - 1/(16(k+1/2)^2), 1]. Throws std::invalid_argument for odd or
// out-of-range k.
bool binomial_identity_check(std::size_t k);
ExtReal binomial_identity_value(std::size_t k);

}  // namespace mills::constants
