#include "millsbounds/double_double.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mills {
namespace {

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

}  // namespace

DoubleDouble exact_product(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) {
    DoubleDouble s = two_sum(hi_, b.hi_);
    const DoubleDouble t = two_sum(lo_, b.lo_);
    double s2 = s.lo() + t.hi();
    s = quick_two_sum(s.hi(), s2);
    s2 = s.lo() + t.lo();
    *this = quick_two_sum(s.hi(), s2);
    return *this;
}

DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& b) { return *this += -b; }

DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) {
    DoubleDouble p = exact_product(hi_, b.hi_);
    const double p2 = p.lo() + (hi_ * b.lo_ + lo_ * b.hi_);
    *this = quick_two_sum(p.hi(), p2);
    return *this;
}

DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) {
    const DoubleDouble a = *this;
    const double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * DoubleDouble(q1);
    const double q2 = r.hi_ / b.hi_;
    r -= b * DoubleDouble(q2);
    const double q3 = r.hi_ / b.hi_;
    *this = quick_two_sum(q1, q2) + DoubleDouble(q3);
    return *this;
}

DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) { return a += b; }
DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) { return a -= b; }
DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) { return a *= b; }
DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b) { return a /= b; }

DoubleDouble abs(const DoubleDouble& a) { return a.hi() < 0 ? -a : a; }

DoubleDouble square(const DoubleDouble& a) { return a * a; }

DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi() == 0.0) return {0.0};
    if (a.hi() < 0.0) return {std::numeric_limits<double>::quiet_NaN()};
    const double x = 1.0 / std::sqrt(a.hi());
    const double ax = a.hi() * x;
    const DoubleDouble corr = a - exact_product(ax, ax);
    return two_sum(ax, corr.hi() * x * 0.5);
}

DoubleDouble ldexp(const DoubleDouble& a, int e) { return {std::ldexp(a.hi(), e), std::ldexp(a.lo(), e)}; }

DoubleDouble floor(const DoubleDouble& a) {
    const double f = std::floor(a.hi());
    if (f != a.hi()) return {f};
    return quick_two_sum(f, std::floor(a.lo()));
}

DoubleDouble ceil(const DoubleDouble& a) {
    const double c = std::ceil(a.hi());
    if (c != a.hi()) return {c};
    return quick_two_sum(c, std::ceil(a.lo()));
}

DoubleDouble exp(const DoubleDouble& a) {
    if (a.hi() > 709.78) return {std::numeric_limits<double>::infinity()};
    if (a.hi() < -745.2) return {0.0};
    if (a.hi() == 0.0 && a.lo() == 0.0) return {1.0};

    // a = m ln2 + r, then r is scaled by 2^-9 and expm1 of it summed by Taylor.
    const double m = std::floor(a.hi() / dd::ln2.hi() + 0.5);
    const DoubleDouble r = ldexp(a - dd::ln2 * DoubleDouble(m), -9);

    DoubleDouble term = r;
    DoubleDouble sum = r;
    for (int n = 2; n < 30; ++n) {
        term = term * r / DoubleDouble(static_cast<double>(n));
        sum += term;
        if (std::abs(term.hi()) <= 1e-34 * std::abs(sum.hi())) break;
    }
    // (1+s)^2 - 1 = 2s + s^2, nine times.
    for (int i = 0; i < 9; ++i) sum = ldexp(sum, 1) + square(sum);
    sum += DoubleDouble(1.0);

    const int e = static_cast<int>(m);
    if (e < -1020) {
        // Scale in two steps so the intermediate stays normal as long as possible.
        return ldexp(ldexp(sum, -1000), e + 1000);
    }
    return ldexp(sum, e);
}

DoubleDouble log(const DoubleDouble& a) {
    if (a.hi() <= 0.0) {
        return {a.hi() == 0.0 ? -std::numeric_limits<double>::infinity()
                              : std::numeric_limits<double>::quiet_NaN()};
    }
    DoubleDouble x = std::log(a.hi());
    for (int i = 0; i < 2; ++i) x = x + a * exp(-x) - DoubleDouble(1.0);
    return x;
}

DoubleDouble pow10(int n) {
    if (n < 0) return DoubleDouble(1.0) / pow10(-n);
    DoubleDouble result = 1.0;
    DoubleDouble base = 10.0;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base = square(base);
    }
    return result;
}

std::string DoubleDouble::to_string(int digits) const {
    digits = std::clamp(digits, 1, 34);
    if (std::isnan(hi_)) return "nan";
    if (std::isinf(hi_)) return hi_ > 0 ? "inf" : "-inf";
    std::string out;
    if (hi_ < 0) out.push_back('-');
    if (hi_ == 0.0) {
        out += "0";
        if (digits > 1) out += "." + std::string(static_cast<std::size_t>(digits - 1), '0');
        out += "e+00";
        return out;
    }

    DoubleDouble r = abs(*this);
    int e10 = static_cast<int>(std::floor(std::log10(std::abs(hi_))));
    if (e10 < -280) {
        r = r * pow10(300) / pow10(e10 + 300);
    } else {
        r = r / pow10(e10);
    }
    while (r.hi() >= 10.0) {
        r = r / DoubleDouble(10.0);
        ++e10;
    }
    while (r.hi() < 1.0) {
        r = r * DoubleDouble(10.0);
        --e10;
    }

    std::string mant;
    for (int i = 0; i <= digits; ++i) {
        DoubleDouble d = floor(r);
        int di = std::clamp(static_cast<int>(d.hi()), 0, 9);
        mant.push_back(static_cast<char>('0' + di));
        r = (r - DoubleDouble(static_cast<double>(di))) * DoubleDouble(10.0);
    }
    const bool round_up = mant.back() >= '5';
    mant.pop_back();
    if (round_up) {
        int i = digits - 1;
        while (i >= 0 && mant[static_cast<std::size_t>(i)] == '9') {
            mant[static_cast<std::size_t>(i)] = '0';
            --i;
        }
        if (i >= 0) {
            ++mant[static_cast<std::size_t>(i)];
        } else {
            mant.insert(mant.begin(), '1');
            mant.pop_back();
            ++e10;
        }
    }

    out.push_back(mant[0]);
    if (digits > 1) {
        out.push_back('.');
        out.append(mant, 1, std::string::npos);
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%c%02d", e10 < 0 ? '-' : '+', std::abs(e10));
    out += buf;
    return out;
}

DoubleDouble DoubleDouble::from_string(std::string_view text) {
    std::size_t i = 0;
    auto fail = [&]() { throw std::invalid_argument("malformed decimal: " + std::string(text)); };
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    DoubleDouble mant = 0.0;
    int exponent = 0;
    int used = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_point) fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            any_digit = true;
            if (used < 36) {
                mant = mant * DoubleDouble(10.0) + DoubleDouble(static_cast<double>(c - '0'));
                if (mant.hi() != 0.0) ++used;
                if (seen_point) --exponent;
            } else if (!seen_point) {
                ++exponent;
            }
        } else {
            break;
        }
    }
    if (!any_digit) fail();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail();
        int e = 0;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            e = std::min(e * 10 + (text[i] - '0'), 100000);
        }
        exponent += eneg ? -e : e;
    }
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size()) fail();

    while (exponent < -300 && mant.hi() != 0.0) {
        mant = mant / pow10(300);
        exponent += 300;
    }
    if (exponent > 0) {
        mant = mant * pow10(exponent);
    } else if (exponent < 0) {
        mant = mant / pow10(-exponent);
    }
    return negative ? -mant : mant;
}

}  // namespace mills
