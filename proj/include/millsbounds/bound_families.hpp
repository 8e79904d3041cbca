#pragma once

// Bounds of the form 1 - Phi(x) ~ phi(x) / h(x) on x >= 0.
//
// Continued-fraction families build
//     h_k(x) = x + 1/(x + 2/(x + ... + k/g_k(x)))
// from a terminal seed g_k; the named closed forms are single-shape bounds.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "millsbounds/double_double.hpp"

namespace mills {

enum class Family {
    ClassicCF,        // g_k(x) = x
    ShentonJ1,        // g_k(x) = sqrt(k + 1/2 + (x/2)^2) + x/2
    ShentonJ2,        // g_k(x) = sqrt(k + 1 + (x/2)^2) + x/2
    SquareRootStar,   // g_k(x) = sqrt(c_k* + (x/2)^2) + x/2
    RationalStar,     // g_k(x) = sqrt(c_k*) + (c_k* - k) x
    ExponentialStar,  // g_k(x) = x + sqrt(c_k*) exp(-delta_k x)
    KomatuLower,
    KomatuUpper,
    Pollak,
    Sampford,
    NewLowerLB1,
};

enum class BoundSide { Upper, Lower };

inline constexpr std::size_t kMaxOrder = 1000;

struct BoundId {
    Family family = Family::ClassicCF;
    std::size_t order = 0;  // ignored by the named closed forms

    friend bool operator==(const BoundId&, const BoundId&) = default;
};

bool is_continued_fraction(Family f);
bool is_star_family(Family f);

// Stable kebab-case names: classic-cf, shenton-j1, shenton-j2, sqrt-star,
// rational-star, exp-star, komatu-lower, komatu-upper, pollak, sampford, lb1.
std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

// "sqrt-star:4" for continued-fraction families, bare name otherwise.
std::string bound_label(const BoundId& id);
// Inverse of bound_label. Throws std::invalid_argument.
BoundId parse_bound_label(std::string_view label);

// Throws std::invalid_argument when the order exceeds kMaxOrder.
void validate(const BoundId& id);

// Terminal seed g_k(x) of a continued-fraction family. Throws
// std::invalid_argument for named closed forms and std::domain_error for
// x < 0 or for ClassicCF at x = 0.
ExtReal terminal_g(Family family, std::size_t k, const ExtReal& x);

// Backward recurrence r <- x + j/r for j = k..1 starting from r = g_terminal.
ExtReal continued_fraction_h(std::size_t k, const ExtReal& x, const ExtReal& g_terminal);

ExtReal eval_h(const BoundId& bound, const ExtReal& x);

BoundSide bound_side(const BoundId& bound);

struct TailBound {
    ExtReal value;  // phi(x) / h(x)
    BoundSide side = BoundSide::Upper;
    // exp(-delta_k x) fell below the normal range and lost precision.
    bool degraded = false;
};

TailBound tail_bound(const BoundId& bound, const ExtReal& x);

// Every bound with order <= max_order, in a fixed order: each
// continued-fraction family for k = 0..max_order, then the named forms.
std::vector<BoundId> all_bounds(std::size_t max_order);

}  // namespace mills
