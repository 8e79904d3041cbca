#include "millsbounds/bound_families.hpp"

#include <array>
#include <charconv>
#include <stdexcept>
#include <utility>

#include "millsbounds/constants.hpp"
#include "millsbounds/reference_oracle.hpp"

namespace mills {
namespace {

constexpr std::array<std::pair<Family, std::string_view>, 11> kNames{{
    {Family::ClassicCF, "classic-cf"},
    {Family::ShentonJ1, "shenton-j1"},
    {Family::ShentonJ2, "shenton-j2"},
    {Family::SquareRootStar, "sqrt-star"},
    {Family::RationalStar, "rational-star"},
    {Family::ExponentialStar, "exp-star"},
    {Family::KomatuLower, "komatu-lower"},
    {Family::KomatuUpper, "komatu-upper"},
    {Family::Pollak, "pollak"},
    {Family::Sampford, "sampford"},
    {Family::NewLowerLB1, "lb1"},
}};

// Exponent below which exp(-t) leaves the normal double range.
constexpr double kExpUnderflow = 708.0;

void check_x(const ExtReal& x) {
    if (!x.is_finite()) throw std::domain_error("x must be finite");
    if (x.hi() < 0.0) throw std::domain_error("bounds are defined for x >= 0 only");
}

// sqrt(c + (x/2)^2) + x/2
ExtReal sqrt_seed(const ExtReal& c, const ExtReal& x) {
    const ExtReal half = ldexp(x, -1);
    return sqrt(c + square(half)) + half;
}

}  // namespace

bool is_continued_fraction(Family f) {
    switch (f) {
        case Family::ClassicCF:
        case Family::ShentonJ1:
        case Family::ShentonJ2:
        case Family::SquareRootStar:
        case Family::RationalStar:
        case Family::ExponentialStar:
            return true;
        default:
            return false;
    }
}

bool is_star_family(Family f) {
    return f == Family::SquareRootStar || f == Family::RationalStar || f == Family::ExponentialStar;
}

std::string_view family_name(Family f) {
    for (const auto& [family, name] : kNames) {
        if (family == f) return name;
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    for (const auto& [family, n] : kNames) {
        if (n == name) return family;
    }
    return std::nullopt;
}

std::string bound_label(const BoundId& id) {
    std::string s(family_name(id.family));
    if (is_continued_fraction(id.family)) s += ":" + std::to_string(id.order);
    return s;
}

BoundId parse_bound_label(std::string_view label) {
    const auto colon = label.find(':');
    const auto family = parse_family(label.substr(0, colon));
    if (!family) throw std::invalid_argument("unknown bound family: " + std::string(label.substr(0, colon)));
    BoundId id{*family, 0};
    if (colon != std::string_view::npos) {
        const auto digits = label.substr(colon + 1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id.order);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
            throw std::invalid_argument("bad order in bound label: " + std::string(label));
        }
        if (!is_continued_fraction(*family)) {
            throw std::invalid_argument("named bound takes no order: " + std::string(label));
        }
    } else if (is_continued_fraction(*family)) {
        throw std::invalid_argument("continued-fraction bound needs an order, e.g. sqrt-star:4");
    }
    validate(id);
    return id;
}

void validate(const BoundId& id) {
    if (id.order > kMaxOrder) {
        throw std::invalid_argument("order " + std::to_string(id.order) + " exceeds cap " +
                                    std::to_string(kMaxOrder));
    }
}

ExtReal terminal_g(Family family, std::size_t k, const ExtReal& x) {
    check_x(x);
    if (k > kMaxOrder) throw std::invalid_argument("order exceeds cap");
    const ExtReal kk = static_cast<double>(k);
    switch (family) {
        case Family::ClassicCF:
            if (x.hi() == 0.0) throw std::domain_error("classic continued fraction is undefined at x = 0");
            return x;
        case Family::ShentonJ1:
            return sqrt_seed(kk + ExtReal(0.5), x);
        case Family::ShentonJ2:
            return sqrt_seed(kk + ExtReal(1.0), x);
        case Family::SquareRootStar:
            return sqrt_seed(constants::c_star(k), x);
        case Family::RationalStar: {
            const ExtReal c = constants::c_star(k);
            return sqrt(c) + (c - kk) * x;
        }
        case Family::ExponentialStar: {
            const ExtReal c = constants::c_star(k);
            return x + sqrt(c) * exp(-constants::delta_k(k) * x);
        }
        default:
            throw std::invalid_argument("terminal_g: " + std::string(family_name(family)) +
                                        " is a closed form, not a continued fraction");
    }
}

ExtReal continued_fraction_h(std::size_t k, const ExtReal& x, const ExtReal& g_terminal) {
    if (!(g_terminal.hi() > 0.0)) throw std::domain_error("terminal seed must be positive");
    ExtReal r = g_terminal;
    for (std::size_t j = k; j >= 1; --j) r = x + ExtReal(static_cast<double>(j)) / r;
    if (!r.is_finite()) throw std::domain_error("non-finite continued fraction value");
    return r;
}

ExtReal eval_h(const BoundId& bound, const ExtReal& x) {
    validate(bound);
    check_x(x);
    const ExtReal x2 = square(x);
    switch (bound.family) {
        case Family::KomatuLower:
            return ldexp(sqrt(ExtReal(4.0) + x2) + x, -1);
        case Family::KomatuUpper:
            return ldexp(sqrt(ExtReal(2.0) + x2) + x, -1);
        case Family::Pollak:
            return ldexp(sqrt(ExtReal(8.0) / dd::pi + x2) + x, -1);
        case Family::Sampford:
            return ldexp(sqrt(ExtReal(8.0) + x2) + ExtReal(3.0) * x, -2);
        case Family::NewLowerLB1:
            return ((dd::pi - ExtReal(1.0)) * x + sqrt(ldexp(dd::pi, 1) + x2)) / dd::pi;
        default:
            return continued_fraction_h(bound.order, x, terminal_g(bound.family, bound.order, x));
    }
}

BoundSide bound_side(const BoundId& bound) {
    const bool even = bound.order % 2 == 0;
    switch (bound.family) {
        case Family::ClassicCF:
        case Family::ShentonJ1:
        case Family::SquareRootStar:
        case Family::RationalStar:
        case Family::ExponentialStar:
            return even ? BoundSide::Upper : BoundSide::Lower;
        case Family::ShentonJ2:
            return even ? BoundSide::Lower : BoundSide::Upper;
        case Family::KomatuLower:
        case Family::NewLowerLB1:
            return BoundSide::Lower;
        case Family::KomatuUpper:
        case Family::Pollak:
        case Family::Sampford:
            return BoundSide::Upper;
    }
    return BoundSide::Upper;
}

TailBound tail_bound(const BoundId& bound, const ExtReal& x) {
    TailBound out;
    out.value = oracle::gaussian_density(x) / eval_h(bound, x);
    out.side = bound_side(bound);
    if (bound.family == Family::ExponentialStar) {
        out.degraded = (constants::delta_k(bound.order) * x).hi() > kExpUnderflow;
    }
    return out;
}

std::vector<BoundId> all_bounds(std::size_t max_order) {
    std::vector<BoundId> out;
    for (Family f : {Family::ClassicCF, Family::ShentonJ1, Family::ShentonJ2, Family::SquareRootStar,
                     Family::RationalStar, Family::ExponentialStar}) {
        for (std::size_t k = 0; k <= max_order; ++k) out.push_back({f, k});
    }
    for (Family f : {Family::KomatuLower, Family::KomatuUpper, Family::Pollak, Family::Sampford,
                     Family::NewLowerLB1}) {
        out.push_back({f, 0});
    }
    return out;
}

}  // namespace mills
