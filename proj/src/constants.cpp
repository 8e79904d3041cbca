#include "millsbounds/constants.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "millsbounds/exact_integer.hpp"

namespace mills::constants {
namespace {

// Grow-only cache. Readers hold a shared lock; extension happens under the
// exclusive lock and entries are never modified once appended.
class CStarCache {
public:
    ExtReal get(std::size_t k) {
        {
            std::shared_lock lock(mutex_);
            if (k < values_.size()) return values_[k];
        }
        std::unique_lock lock(mutex_);
        extend_to(k);
        return values_[k];
    }

private:
    void extend_to(std::size_t k) {
        if (values_.empty()) {
            values_.push_back(ExtReal(2.0) / dd::pi);
            values_.push_back(ldexp(dd::pi, -1));
        }
        values_.reserve(k + 1);
        while (values_.size() <= k) {
            const std::size_t n = values_.size();
            const double num = static_cast<double>(n) * static_cast<double>(n);
            const double den = static_cast<double>(n - 1) * static_cast<double>(n - 1);
            values_.push_back(values_[n - 2] * ExtReal(num) / ExtReal(den));
        }
    }

    std::shared_mutex mutex_;
    std::vector<ExtReal> values_;
};

CStarCache& cache() {
    static CStarCache instance;
    return instance;
}

ExtReal offset(std::size_t k, const ExtReal& c) { return c - ExtReal(static_cast<double>(k)) - ExtReal(0.5); }

}  // namespace

ExtReal c_star(std::size_t k) { return cache().get(k); }

ExtReal c_star_closed_form(std::size_t k) {
    if (k == 0) return ExtReal(2.0) / dd::pi;
    // Ratio of double factorials: even k -> (2*4*...*k)/(1*3*...*(k-1)),
    // odd k -> (1*3*...*k)/(2*4*...*(k-1)).
    BigInt odd = 1;
    BigInt even = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        if (j % 2 == 1) {
            odd *= j;
        } else {
            even *= j;
        }
    }
    if (k % 2 == 0) {
        // odd product runs to k-1 already
        return square(ratio_to_ext_real(even, odd)) * ExtReal(2.0) / dd::pi;
    }
    return square(ratio_to_ext_real(odd, even)) * ldexp(dd::pi, -1);
}

ExtReal delta_k(std::size_t k) {
    const ExtReal c = c_star(k);
    return (ExtReal(static_cast<double>(k + 1)) - c) / sqrt(c);
}

ExtReal delta_k_difference_form(std::size_t k) { return sqrt(c_star(k + 1)) - sqrt(c_star(k)); }

ExtReal x_star(std::size_t k) {
    const ExtReal c = c_star(k);
    const ExtReal kk = static_cast<double>(k);
    return ExtReal(2.0) * sqrt(c) * offset(k, c) / sqrt((c - kk) * (kk + ExtReal(1.0) - c));
}

ExtReal x_star_centered_form(std::size_t k) {
    const ExtReal c = c_star(k);
    const ExtReal d = offset(k, c);
    return ExtReal(2.0) * sqrt(c) * d / sqrt(ExtReal(0.25) - square(d));
}

ExtReal x_tilde(std::size_t k) {
    const ExtReal c = c_star(k);
    const ExtReal kk = static_cast<double>(k);
    return ExtReal(2.0) * sqrt(c) * offset(k, c) / ((c - kk) * (kk + ExtReal(1.0) - c));
}

ExtReal x_tilde_centered_form(std::size_t k) {
    const ExtReal c = c_star(k);
    const ExtReal d = offset(k, c);
    return ExtReal(2.0) * sqrt(c) * d / (ExtReal(0.25) - square(d));
}

TailConstants materialize(std::size_t max_k) {
    TailConstants t;
    t.max_k = max_k;
    t.c_star.reserve(max_k + 1);
    t.delta.reserve(max_k + 1);
    t.x_star.reserve(max_k + 1);
    t.x_tilde.reserve(max_k + 1);
    for (std::size_t k = 0; k <= max_k; ++k) {
        t.c_star.push_back(c_star(k));
        t.delta.push_back(delta_k(k));
        t.x_star.push_back(x_star(k));
        t.x_tilde.push_back(x_tilde(k));
    }
    return t;
}

SandwichReport sandwich_check(std::size_t k) {
    const ExtReal c = c_star(k);
    const ExtReal kk = static_cast<double>(k);
    const ExtReal d = offset(k, c);
    const ExtReal eighth_c = ExtReal(1.0) / (ExtReal(8.0) * c);
    SandwichReport r;
    r.lower_slack = d - ExtReal(1.0) / (ExtReal(8.0) * (kk + ExtReal(1.0)));
    r.middle_slack = eighth_c - d;
    r.upper_slack = ExtReal(1.0) / (ExtReal(8.0) * (kk + ExtReal(0.5))) - eighth_c;
    r.holds = r.lower_slack.hi() > 0 && r.middle_slack.hi() > 0 && r.upper_slack.hi() > 0;
    return r;
}

ExtReal binomial_identity_value(std::size_t k) {
    if (k % 2 != 0 || k < 2 || k > 60) {
        throw std::invalid_argument("binomial identity needs even k in [2, 60], got " + std::to_string(k));
    }
    std::uint64_t binom = 1;  // C(k, k/2) < 2^57 for k <= 60
    for (std::uint64_t j = 1; j <= k / 2; ++j) binom = binom * (k / 2 + j) / j;
    const ExtReal b = to_ext_real(BigInt(binom));
    const ExtReal half_k = ExtReal(static_cast<double>(k)) + ExtReal(0.5);
    return sqrt(dd::pi) * b * ldexp(sqrt(half_k / ExtReal(2.0)), -static_cast<int>(k));
}

bool binomial_identity_check(std::size_t k) {
    const ExtReal v = binomial_identity_value(k);
    const ExtReal half_k = ExtReal(static_cast<double>(k)) + ExtReal(0.5);
    const ExtReal lower = ExtReal(1.0) - ExtReal(1.0) / (ExtReal(16.0) * square(half_k));
    return !(v < lower) && !(v > ExtReal(1.0));
}

}  // namespace mills::constants
