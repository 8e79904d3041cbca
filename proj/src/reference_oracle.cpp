#include "millsbounds/reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mills::oracle {
namespace {

constexpr double kSeriesTermFloor = 1e-35;
constexpr double kCfAgreement = 1e-30;
constexpr std::int64_t kCfInitialDepth = 32;
constexpr std::int64_t kCfMaxDepth = std::int64_t{1} << 23;

ExtReal cf_denominator(const ExtReal& x, std::int64_t depth) {
    ExtReal r = x;
    for (std::int64_t j = depth; j >= 1; --j) r = x + ExtReal(static_cast<double>(j)) / r;
    return r;
}

ScaledReal normalize(const ExtReal& v) {
    if (v.hi() == 0.0) return {};
    int e10 = static_cast<int>(std::floor(std::log10(std::abs(v.hi()))));
    ExtReal m = e10 < -280 ? v * pow10(300) / pow10(e10 + 300) : v / pow10(e10);
    while (abs(m).hi() >= 10.0) {
        m = m / ExtReal(10.0);
        ++e10;
    }
    while (abs(m).hi() < 1.0) {
        m = m * ExtReal(10.0);
        --e10;
    }
    return {m, e10};
}

}  // namespace

ExtReal inv_sqrt_2pi() {
    static const ExtReal v = ExtReal(1.0) / sqrt(ldexp(dd::pi, 1));
    return v;
}

ExtReal sqrt_2_over_pi() {
    static const ExtReal v = sqrt(ExtReal(2.0) / dd::pi);
    return v;
}

ExtReal gaussian_density(const ExtReal& x) { return exp(-ldexp(square(x), -1)) * inv_sqrt_2pi(); }

ExtReal upper_tail_series(const ExtReal& x) {
    // Phi(x) - 1/2 = phi(0) * sum_k (-1)^k x^(2k+1) / (2^k k! (2k+1))
    const ExtReal step = -ldexp(square(x), -1);
    ExtReal power = x;  // (-x^2/2)^k x / k!
    ExtReal sum = x;
    for (int k = 1; k < 10000; ++k) {
        power = power * step / ExtReal(static_cast<double>(k));
        const ExtReal term = power / ExtReal(static_cast<double>(2 * k + 1));
        sum += term;
        if (std::abs(term.hi()) < kSeriesTermFloor && std::abs(power.hi()) < kSeriesTermFloor) break;
    }
    return ExtReal(0.5) - inv_sqrt_2pi() * sum;
}

ExtReal mills_ratio_continued_fraction(const ExtReal& x) {
    if (!(x.hi() > 0.0)) throw std::domain_error("continued fraction requires x > 0");
    // Depth needed for 1e-31 grows like 1500 / x^2; starting there means the
    // first doubling normally confirms convergence.
    const double guess = 1600.0 / (x.hi() * x.hi());
    std::int64_t depth = guess < static_cast<double>(kCfMaxDepth / 4)
                             ? std::max(kCfInitialDepth, static_cast<std::int64_t>(guess))
                             : kCfMaxDepth / 4;
    ExtReal previous = cf_denominator(x, depth);
    while (depth < kCfMaxDepth) {
        depth *= 2;
        const ExtReal current = cf_denominator(x, depth);
        if (abs(current - previous).hi() <= kCfAgreement * current.hi()) return ExtReal(1.0) / current;
        previous = current;
    }
    throw std::domain_error("continued fraction did not converge; x too close to 0");
}

ExtReal upper_tail_continued_fraction(const ExtReal& x) {
    return gaussian_density(x) * mills_ratio_continued_fraction(x);
}

ExtReal upper_tail(const ExtReal& x) {
    if (x.hi() < 0.0) return ExtReal(1.0) - upper_tail(-x);
    if (x.hi() <= kSeriesCutoff) return upper_tail_series(x);
    return upper_tail_continued_fraction(x);
}

ScaledReal upper_tail_scaled(const ExtReal& x) {
    if (x.hi() <= 30.0) return normalize(upper_tail(x));
    // log10(1 - Phi) = (log M(x) - x^2/2 - log sqrt(2 pi)) / ln 10
    const ExtReal log_value =
        log(mills_ratio_continued_fraction(x)) - ldexp(square(x), -1) + log(inv_sqrt_2pi());
    const ExtReal log10_value = log_value / dd::ln10;
    const ExtReal e = floor(log10_value);
    ScaledReal out{exp((log10_value - e) * dd::ln10), static_cast<std::int64_t>(e.hi())};
    if (out.mantissa.hi() >= 10.0) {
        out.mantissa = out.mantissa / ExtReal(10.0);
        ++out.exponent10;
    }
    return out;
}

ExtReal mills_ratio(const ExtReal& x) {
    if (x.hi() > kSeriesCutoff) return mills_ratio_continued_fraction(x);
    return upper_tail(x) / gaussian_density(x);
}

}  // namespace mills::oracle
