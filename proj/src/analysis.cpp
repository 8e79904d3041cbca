#include "millsbounds/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <stdexcept>

#include "millsbounds/constants.hpp"
#include "millsbounds/grid_kernels.hpp"
#include "millsbounds/reference_oracle.hpp"

namespace mills::analysis {

const std::array<std::array<FourDigits, 5>, kTable1Rows> kPublishedTable1{{
    {{{2074, -3}, {1571, -2}, {9194, -3}, {9374, -4}, {3550, -5}}},
    {{{4796, -4}, {3820, -3}, {1606, -3}, {1041, -4}, {2612, -6}}},
    {{{1723, -4}, {1622, -3}, {4687, -4}, {1896, -5}, {3175, -7}}},
    {{{7888, -5}, {8735, -4}, {1764, -4}, {4591, -6}, {5226, -8}}},
    {{{4214, -5}, {5433, -4}, {7775, -5}, {1342, -6}, {1059, -8}}},
    {{{2499, -5}, {3685, -4}, {3814, -5}, {4480, -7}, {2497, -9}}},
    {{{1599, -5}, {2663, -4}, {2023, -5}, {1655, -7}, {6625, -10}}},
    {{{1082, -5}, {2010, -4}, {1138, -5}, {6616, -8}, {1932, -10}}},
}};

namespace {

constexpr std::size_t kScanPoints = 10000;
constexpr double kScanFloor = 1e-3;
constexpr double kGridAgreement = 1e-4;
constexpr int kGoldenIterations = 200;
constexpr double kSignExclusion = 1e-3;

std::string describe(const char* what, std::size_t k, double x) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s at k=%zu, x=%.17g", what, k, x);
    return buf;
}

// f_k(x) = delta + x + sqrt(c) e^{-delta x} - (k+1)/sqrt(c) e^{delta x}; a
// positive multiple of the sign criterion for the exponential family.
ExtReal exponential_criterion(std::size_t k, const ExtReal& x) {
    const ExtReal c = constants::c_star(k);
    const ExtReal rc = sqrt(c);
    const ExtReal d = constants::delta_k(k);
    return d + x + rc * exp(-d * x) - ExtReal(static_cast<double>(k + 1)) / rc * exp(d * x);
}

ExtReal exponential_sign_change(std::size_t k) {
    ExtReal lo = 1e-9;
    ExtReal hi = 1.0;
    while (exponential_criterion(k, hi).hi() > 0) hi = ldexp(hi, 1);
    for (int i = 0; i < 200 && (hi - lo).hi() > 1e-26; ++i) {
        const ExtReal mid = ldexp(lo + hi, -1);
        if (exponential_criterion(k, mid).hi() > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return ldexp(lo + hi, -1);
}

FourDigits four_digits(const ExtReal& v, bool up) {
    if (!(v.hi() > 0)) throw std::invalid_argument("four-digit rounding needs a positive value");
    int e = static_cast<int>(std::floor(std::log10(v.hi())));
    // Multiply by 10^n (exact for n <= 22) so representable decimals stay exact.
    ExtReal scaled = e - 3 < 0 ? v * pow10(3 - e) : v / pow10(e - 3);
    while (scaled.hi() >= 10000.0) {
        scaled = scaled / ExtReal(10.0);
        ++e;
    }
    while (scaled.hi() < 1000.0) {
        scaled = scaled * ExtReal(10.0);
        --e;
    }
    const ExtReal r = up ? ceil(scaled) : floor(scaled + ExtReal(0.5));
    int m = static_cast<int>(r.hi() + r.lo());
    if (m >= 10000) {
        m /= 10;
        ++e;
    }
    return {m, e};
}

}  // namespace

void validate(const GridSpec& grid) {
    if (!(grid.low < grid.high)) throw std::invalid_argument("grid needs low < high");
    if (grid.points < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (grid.spacing == Spacing::Log && !(grid.low > 0)) throw std::invalid_argument("log grid needs low > 0");
}

std::vector<double> grid_points(const GridSpec& grid) {
    validate(grid);
    std::vector<double> xs(grid.points);
    const double last = static_cast<double>(grid.points - 1);
    if (grid.spacing == Spacing::Linear) {
        for (std::size_t i = 0; i < grid.points; ++i) {
            xs[i] = grid.low + (grid.high - grid.low) * (static_cast<double>(i) / last);
        }
    } else {
        const double a = std::log(grid.low);
        const double b = std::log(grid.high);
        for (std::size_t i = 0; i < grid.points; ++i) xs[i] = std::exp(a + (b - a) * (static_cast<double>(i) / last));
    }
    xs.front() = grid.low;
    xs.back() = grid.high;
    return xs;
}

ExtReal error_at(const BoundId& bound, const ExtReal& x) {
    return oracle::gaussian_density(x) / eval_h(bound, x) - oracle::upper_tail(x);
}

ExtReal golden_section_argmax(const BoundId& bound, const ExtReal& low, const ExtReal& high) {
    const ExtReal inv_phi = (sqrt(ExtReal(5.0)) - ExtReal(1.0)) / ExtReal(2.0);
    auto f = [&](const ExtReal& x) { return abs(error_at(bound, x)); };
    ExtReal a = low;
    ExtReal b = high;
    ExtReal c = b - inv_phi * (b - a);
    ExtReal d = a + inv_phi * (b - a);
    ExtReal fc = f(c);
    ExtReal fd = f(d);
    for (int i = 0; i < kGoldenIterations; ++i) {
        if ((b - a).hi() <= 1e-22 * std::max(1.0, std::abs(a.hi()))) break;
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const ExtReal mid = ldexp(a + b, -1);
    return f(low) > f(mid) ? low : mid;
}

ErrorReport max_abs_error(const BoundId& bound, double domain_low) {
    validate(bound);
    if (!(domain_low >= 0.0) || !(domain_low < kSearchHigh)) {
        throw std::invalid_argument("domain_low must lie in [0, 10)");
    }
    if (bound.family == Family::ClassicCF && domain_low <= 0.0) {
        throw std::invalid_argument("classic continued fraction has no finite maximum on x > 0");
    }
    ErrorReport r;
    r.bound = bound;
    r.domain_low = domain_low;

    const auto known = derivative_sign_change(bound);
    if (known && !(*known > ExtReal(domain_low))) {
        r.argmax_x = domain_low;
    } else {
        r.argmax_x = golden_section_argmax(bound, domain_low, kSearchHigh);
    }
    r.max_abs_error = abs(error_at(bound, r.argmax_x));
    if (bound.family == Family::SquareRootStar) {
        const ExtReal h = ExtReal(static_cast<double>(bound.order)) + ExtReal(0.5);
        r.cap = ExtReal(1.0) / (ExtReal(32.0) * square(h));
    }

    const GridSpec scan{std::max(domain_low, kScanFloor), kSearchHigh, kScanPoints, Spacing::Log};
    const auto xs = grid_points(scan);
    const std::vector<BoundId> one{bound};
    const auto errors = kernels::error_matrix(one, xs);
    r.grid_max = abs(errors[kernels::argmax_abs(errors)]);
    r.grid_agrees = abs(r.grid_max - r.max_abs_error) <= ExtReal(kGridAgreement) * r.max_abs_error;
    return r;
}

std::string FourDigits::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%d.%03de%d", mantissa / 1000, mantissa % 1000, exponent);
    return buf;
}

FourDigits round_up_four_digits(const ExtReal& v) { return four_digits(v, true); }
FourDigits round_nearest_four_digits(const ExtReal& v) { return four_digits(v, false); }

std::size_t Table1::matches() const {
    std::size_t n = 0;
    for (const auto& row : cells) {
        for (const auto& cell : row) n += cell.matches() ? 1 : 0;
    }
    return n;
}

Table1 reproduce_table1() {
    Table1 t;
    for (std::size_t k = 0; k < kTable1Rows; ++k) {
        for (std::size_t col = 0; col < 5; ++col) {
            const BoundId b{col == 0 ? Family::ExponentialStar : Family::SquareRootStar, k};
            Table1Cell& cell = t.cells[k][col];
            cell.computed = max_abs_error(b, kTable1DomainLows[col]).max_abs_error;
            cell.rounded_up = round_up_four_digits(cell.computed);
            cell.rounded_nearest = round_nearest_four_digits(cell.computed);
            cell.published = kPublishedTable1[k][col];
        }
    }
    return t;
}

namespace {

CheckResult verify_chain_points(Family family, std::size_t k_max, const std::vector<double>& all_xs) {
    if (!is_star_family(family)) throw std::invalid_argument("chain checks apply to the star families");
    std::vector<double> xs;
    std::copy_if(all_xs.begin(), all_xs.end(), std::back_inserter(xs), [](double x) { return x > 0; });

    std::vector<BoundId> bounds;
    for (std::size_t k = 0; k <= k_max; ++k) bounds.push_back({family, k});
    const Family partner = family == Family::RationalStar    ? Family::SquareRootStar
                           : family == Family::ExponentialStar ? Family::RationalStar
                                                                : family;
    const bool compare = partner != family;
    if (compare) {
        for (std::size_t k = 0; k <= k_max; ++k) bounds.push_back({partner, k});
    }
    std::vector<ExtReal> x_tildes;
    for (std::size_t k = 0; k <= k_max; ++k) x_tildes.push_back(constants::x_tilde(k));

    const auto errors = kernels::error_matrix(bounds, xs);
    const std::size_t width = bounds.size();
    CheckResult out;
    auto fail = [&](const char* what, std::size_t k, double x) {
        out.ok = false;
        if (!out.first_violation) out.first_violation = describe(what, k, x);
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const ExtReal* row = errors.data() + i * width;
        for (std::size_t k = 0; k <= k_max; ++k) {
            const bool even = k % 2 == 0;
            ++out.checked;
            if (even ? !(row[k].hi() > 0) : !(row[k].hi() < 0)) fail("wrong sign of Delta_k", k, xs[i]);
            if (k + 2 <= k_max) {
                ++out.checked;
                if (even ? !(row[k] > row[k + 2]) : !(row[k] < row[k + 2])) {
                    fail("chain Delta_k vs Delta_{k+2} broken", k, xs[i]);
                }
            }
            if (!compare) continue;
            const ExtReal own = abs(row[k]);
            const ExtReal other = abs(row[k_max + 1 + k]);
            if (family == Family::ExponentialStar) {
                ++out.checked;
                if (!(own < other)) fail("|Delta^_k| < |Delta~_k| broken", k, xs[i]);
            } else if (ExtReal(xs[i]) > x_tildes[k]) {
                ++out.checked;
                if (!(own > other)) fail("|Delta~_k| > |Delta_k| beyond x~_k broken", k, xs[i]);
            }
        }
    }
    return out;
}

}  // namespace

CheckResult verify_chain(Family family, std::size_t k_max, const GridSpec& grid) {
    return verify_chain_points(family, k_max, grid_points(grid));
}

CheckResult verify_chain_at(Family family, std::size_t k_max, const std::vector<double>& xs) {
    return verify_chain_points(family, k_max, xs);
}

std::optional<ExtReal> derivative_sign_change(const BoundId& bound) {
    switch (bound.family) {
        case Family::SquareRootStar:
            return constants::x_star(bound.order);
        case Family::RationalStar:
            return constants::x_tilde(bound.order);
        case Family::ExponentialStar:
            return exponential_sign_change(bound.order);
        case Family::Pollak:
            return constants::x_star(0);
        case Family::NewLowerLB1:
            return constants::x_star(1);
        default:
            return std::nullopt;
    }
}

namespace {

int predicted_sign(const BoundId& bound, const ExtReal& x, const std::optional<ExtReal>& root) {
    const int parity = bound.order % 2 == 0 ? 1 : -1;
    auto toward = [&](const ExtReal& root) { return sign(root - x); };
    switch (bound.family) {
        case Family::ClassicCF:
        case Family::ShentonJ1:
            return -parity;
        case Family::ShentonJ2:
            return parity;
        case Family::SquareRootStar:
        case Family::RationalStar:
        case Family::ExponentialStar:
            return parity * toward(*root);
        case Family::KomatuLower:
            return 1;
        case Family::KomatuUpper:
        case Family::Sampford:
            return -1;
        case Family::Pollak:
            return toward(*root);
        case Family::NewLowerLB1:
            return -toward(*root);
    }
    return 0;
}

}  // namespace

int predicted_derivative_sign(const BoundId& bound, const ExtReal& x) {
    return predicted_sign(bound, x, derivative_sign_change(bound));
}

CheckResult verify_sign_pattern(const BoundId& bound, const GridSpec& grid) {
    validate(bound);
    const auto root = derivative_sign_change(bound);
    std::vector<double> centers;
    for (double x : grid_points(grid)) {
        const double h = 1e-6 * std::max(1.0, x);
        if (x - h <= 0) continue;
        if (root && std::abs(x - root->to_double()) < kSignExclusion) continue;
        centers.push_back(x);
    }
    std::vector<double> probes;
    probes.reserve(2 * centers.size());
    for (double x : centers) {
        const double h = 1e-6 * std::max(1.0, x);
        probes.push_back(x - h);
        probes.push_back(x + h);
    }
    const std::vector<BoundId> one{bound};
    const auto errors = kernels::error_matrix(one, probes);
    CheckResult out;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        ++out.checked;
        const int observed = sign(errors[2 * i + 1] - errors[2 * i]);
        if (observed != predicted_sign(bound, centers[i], root)) {
            out.ok = false;
            if (!out.first_violation) out.first_violation = describe("derivative sign mismatch", bound.order, centers[i]);
        }
    }
    return out;
}

ExtReal crossover_exp_vs_sqrt(std::size_t k) {
    const ExtReal c = constants::c_star(k);
    const ExtReal rc = sqrt(c);
    const ExtReal d = constants::delta_k(k);
    auto f = [&](const ExtReal& x) {
        const ExtReal half = ldexp(x, -1);
        return exp(d * x) * rc - (sqrt(c + square(half)) + half);
    };
    ExtReal lo = 0.1;
    ExtReal hi = 20.0;
    if (!(f(lo).hi() < 0 && f(hi).hi() > 0)) {
        throw std::runtime_error("no sign change of the crossover criterion on [0.1, 20]");
    }
    while ((hi - lo).hi() > 1e-14) {
        const ExtReal mid = ldexp(lo + hi, -1);
        if (f(mid).hi() < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return ldexp(lo + hi, -1);
}

CurveTable curve_dump(const std::vector<BoundId>& bounds, const GridSpec& grid) {
    CurveTable t;
    t.bounds = bounds;
    t.xs = grid_points(grid);
    t.errors = kernels::error_matrix(t.bounds, t.xs);
    return t;
}

std::vector<BoundId> figure_bounds(int figure) {
    std::vector<BoundId> out;
    auto range = [&](Family f, std::size_t from, std::size_t to) {
        for (std::size_t k = from; k <= to; ++k) out.push_back({f, k});
    };
    switch (figure) {
        case 1:
            out = {{Family::KomatuLower, 0}, {Family::NewLowerLB1, 0}, {Family::Pollak, 0}, {Family::Sampford, 0}};
            break;
        case 2:
            range(Family::SquareRootStar, 0, 9);
            break;
        case 3:
            range(Family::RationalStar, 0, 9);
            break;
        case 4:
            range(Family::SquareRootStar, 4, 11);
            range(Family::RationalStar, 4, 11);
            break;
        case 5:
            range(Family::ExponentialStar, 0, 9);
            break;
        default:
            throw std::invalid_argument("figures are numbered 1 to 5");
    }
    return out;
}

}  // namespace mills::analysis
