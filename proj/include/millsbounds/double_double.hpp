#pragma once

// Unevaluated sum of two doubles, |lo| <= ulp(hi)/2. About 32 significant
// decimal digits. Algorithms follow the usual error-free transformations
// (Knuth two-sum, FMA two-product). Must not be compiled with -ffast-math.

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mills {

class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double v) : hi_(v), lo_(0.0) {}  // NOLINT: implicit by intent
    constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    explicit constexpr operator double() const { return hi_ + lo_; }
    constexpr double to_double() const { return hi_ + lo_; }

    DoubleDouble& operator+=(const DoubleDouble& b);
    DoubleDouble& operator-=(const DoubleDouble& b);
    DoubleDouble& operator*=(const DoubleDouble& b);
    DoubleDouble& operator/=(const DoubleDouble& b);

    DoubleDouble operator-() const { return {-hi_, -lo_}; }

    bool is_finite() const { return std::isfinite(hi_) && std::isfinite(lo_); }

    friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

    // Scientific notation with `digits` significant digits, e.g.
    // "1.2345e-03". digits in [1, 34].
    std::string to_string(int digits) const;
    // Parses decimal text ("-1.25", "3e-300", "0.1"). Throws
    // std::invalid_argument on malformed input.
    static DoubleDouble from_string(std::string_view text);

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b);
DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b);
DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b);
DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b);

DoubleDouble abs(const DoubleDouble& a);
DoubleDouble sqrt(const DoubleDouble& a);
DoubleDouble exp(const DoubleDouble& a);
DoubleDouble log(const DoubleDouble& a);
DoubleDouble floor(const DoubleDouble& a);
DoubleDouble ceil(const DoubleDouble& a);
DoubleDouble ldexp(const DoubleDouble& a, int e);
DoubleDouble square(const DoubleDouble& a);
// 10^n, exact for 0 <= n <= 22 and accurate to a few ulps otherwise.
DoubleDouble pow10(int n);
// Product of two doubles without rounding.
DoubleDouble exact_product(double a, double b);

inline int sign(const DoubleDouble& a) { return a.hi() > 0 ? 1 : (a.hi() < 0 ? -1 : 0); }

namespace dd {
inline constexpr DoubleDouble pi{3.1415926535897931, 1.2246467991473532e-16};
inline constexpr DoubleDouble ln2{0.69314718055994529, 2.3190468138462996e-17};
inline constexpr DoubleDouble ln10{2.3025850929940459, -2.1707562233822494e-16};
// Relative rounding unit of the format, 2^-104.
inline constexpr double eps = 4.93038065763132e-32;
}  // namespace dd

using ExtReal = DoubleDouble;

}  // namespace mills
