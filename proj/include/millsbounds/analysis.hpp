#pragma once

// Error analysis of the bound families: signed errors, maximal errors and
// their locations, ordering checks, derivative sign patterns, the
// exponential-vs-square-root crossover, and curve export.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "millsbounds/bound_families.hpp"
#include "millsbounds/double_double.hpp"

namespace mills::analysis {

enum class Spacing { Linear, Log };

struct GridSpec {
    double low = 0.0;
    double high = 1.0;
    std::size_t points = 2;
    Spacing spacing = Spacing::Linear;
};

// Throws std::invalid_argument unless low < high, points >= 2 and, for log
// spacing, low > 0.
void validate(const GridSpec& grid);
std::vector<double> grid_points(const GridSpec& grid);

// Delta(x) = phi(x)/h(x) - (1 - Phi(x)).
ExtReal error_at(const BoundId& bound, const ExtReal& x);

// Upper end of every maximization bracket.
inline constexpr double kSearchHigh = 10.0;

struct ErrorReport {
    BoundId bound;
    double domain_low = 0.0;
    ExtReal argmax_x;
    ExtReal max_abs_error;
    std::optional<ExtReal> cap;  // 1/(32 (k+1/2)^2) for the square-root family
    ExtReal grid_max;            // dense log-grid scan, independent of the search
    bool grid_agrees = false;    // grid_max within 1e-4 relative of max_abs_error
};

// max over x >= domain_low of |Delta|. |Delta| rises to a single maximizer
// and then decays, so a golden-section search on [domain_low, 10] finds it;
// for the square-root and rational families the known maximizer is used to
// short-circuit when domain_low lies beyond it. ClassicCF needs
// domain_low > 0.
ErrorReport max_abs_error(const BoundId& bound, double domain_low);

// Golden-section maximizer of |Delta| on [low, high].
ExtReal golden_section_argmax(const BoundId& bound, const ExtReal& low, const ExtReal& high);

// A decimal with four significant digits: mantissa/1000 * 10^exponent,
// 1000 <= mantissa <= 9999.
struct FourDigits {
    int mantissa = 0;
    int exponent = 0;
    friend bool operator==(const FourDigits&, const FourDigits&) = default;
    std::string to_string() const;  // "2.074e-3"
};

FourDigits round_up_four_digits(const ExtReal& v);
FourDigits round_nearest_four_digits(const ExtReal& v);

struct Table1Cell {
    ExtReal computed;
    FourDigits rounded_up;
    FourDigits rounded_nearest;
    FourDigits published;
    bool matches() const { return rounded_up == published; }
};

inline constexpr std::array<double, 5> kTable1DomainLows{0.0, 0.0, 1.0, 2.0, 3.0};
inline constexpr std::size_t kTable1Rows = 8;

// Published four-digit maxima. Column 0: exponential family over x > 0;
// columns 1-4: square-root family over x > 0, x >= 1, x >= 2, x >= 3.
extern const std::array<std::array<FourDigits, 5>, kTable1Rows> kPublishedTable1;

struct Table1 {
    std::array<std::array<Table1Cell, 5>, kTable1Rows> cells;
    std::size_t matches() const;
};

Table1 reproduce_table1();

struct CheckResult {
    bool ok = true;
    std::size_t checked = 0;
    std::optional<std::string> first_violation;
};

// Delta_0 > Delta_2 > ... > 0 and Delta_1 < Delta_3 < ... < 0 at every grid
// x > 0, for k <= k_max. Extra comparisons per family: RationalStar also
// checks |Delta~_k| > |Delta_k| for x > x~_k; ExponentialStar checks
// |Delta^_k| < |Delta~_k|.
CheckResult verify_chain(Family family, std::size_t k_max, const GridSpec& grid);
// Same checks on explicit points (non-positive x are skipped).
CheckResult verify_chain_at(Family family, std::size_t k_max, const std::vector<double>& xs);

// Point where Delta' changes sign, if the bound has one.
std::optional<ExtReal> derivative_sign_change(const BoundId& bound);
// Predicted sign of Delta'(x) for x away from the sign change.
int predicted_derivative_sign(const BoundId& bound, const ExtReal& x);

// Compares the sign of a central finite difference of Delta (step
// 1e-6 max(1, x)) with the predicted sign, skipping points within 1e-3 of
// the sign change.
CheckResult verify_sign_pattern(const BoundId& bound, const GridSpec& grid);

// The positive root of exp(delta_k x) sqrt(c_k*) - (sqrt(c_k* + (x/2)^2) + x/2),
// beyond which the square-root bound beats the exponential one. Bisection on
// [0.1, 20]; throws std::runtime_error without a sign change.
ExtReal crossover_exp_vs_sqrt(std::size_t k);

struct CurveTable {
    std::vector<BoundId> bounds;
    std::vector<double> xs;
    std::vector<ExtReal> errors;  // row-major [x][bound]
    const ExtReal& at(std::size_t row, std::size_t col) const { return errors[row * bounds.size() + col]; }
};

CurveTable curve_dump(const std::vector<BoundId>& bounds, const GridSpec& grid);

// Bound sets behind the five error-curve figures (1..5).
std::vector<BoundId> figure_bounds(int figure);

}  // namespace mills::analysis
