#include "millsbounds/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include "millsbounds/analysis.hpp"
#include "millsbounds/bound_families.hpp"
#include "millsbounds/constants.hpp"
#include "millsbounds/grid_kernels.hpp"
#include "millsbounds/polynomial_forms.hpp"
#include "millsbounds/reference_oracle.hpp"

namespace mills::verification {
namespace {

using analysis::GridSpec;
using analysis::Spacing;

constexpr std::size_t kConstantsK = 10000;
constexpr std::size_t kShortK = 1000;
constexpr std::size_t kClosedFormK = 200;
constexpr std::size_t kStarZeroK = 20;

// Collects the first failure of a suite and counts checks.
class Tally {
public:
    explicit Tally(std::string name) { r_.name = std::move(name); }

    void check(bool ok, const std::function<std::string()>& describe) {
        ++r_.checked;
        if (!ok && !failure_) failure_ = describe();
    }

    void absorb(const analysis::CheckResult& c, const std::string& context) {
        r_.checked += c.checked;
        if (!c.ok && !failure_) failure_ = context + ": " + c.first_violation.value_or("violation");
    }

    SuiteResult finish() {
        r_.passed = !failure_.has_value();
        r_.detail = failure_ ? *failure_ : std::to_string(r_.checked) + " checks";
        return r_;
    }

private:
    SuiteResult r_;
    std::optional<std::string> failure_;
};

std::string at(const char* what, double x) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s at x=%.17g", what, x);
    return buf;
}

std::string at(const char* what, std::size_t k, double x) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s at k=%zu, x=%.17g", what, k, x);
    return buf;
}

std::string at_k(const char* what, std::size_t k) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s at k=%zu", what, k);
    return buf;
}

bool rel_close(const ExtReal& a, const ExtReal& b, double tol) {
    return abs(a - b) <= ExtReal(tol) * std::max(abs(a), abs(b));
}

std::vector<double> bracket_grid() { return analysis::grid_points({1e-3, 10.0, 2000, Spacing::Log}); }

SuiteResult oracle_dual_method() {
    Tally t("oracle-dual-method");
    for (int i = 1; i <= 30; ++i) {
        const ExtReal x = ExtReal(static_cast<double>(i)) / ExtReal(10.0);
        const ExtReal s = oracle::upper_tail_series(x);
        const ExtReal c = oracle::upper_tail_continued_fraction(x);
        t.check(rel_close(s, c, 1e-25), [&] { return at("series and continued fraction disagree", x.to_double()); });
    }
    return t.finish();
}

SuiteResult oracle_properties() {
    Tally t("oracle-properties");
    const auto xs = analysis::grid_points({1e-3, 30.0, 400, Spacing::Log});
    const auto tails = kernels::upper_tail_grid(xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const ExtReal x = xs[i];
        if (i > 0) t.check(tails[i] < tails[i - 1], [&] { return at("not strictly decreasing", xs[i]); });
        const ExtReal sum = tails[i] + oracle::upper_tail(-x);
        t.check(abs(sum - ExtReal(1.0)).hi() < 1e-30, [&] { return at("Q(x) + Q(-x) != 1", xs[i]); });
        const ExtReal phi = oracle::gaussian_density(x);
        const bool sandwich = phi / (x + ExtReal(1.0) / x) < tails[i] && tails[i] < phi / x;
        t.check(sandwich, [&] { return at("Gordon sandwich broken", xs[i]); });
    }
    return t.finish();
}

SuiteResult oracle_derivative() {
    Tally t("oracle-derivative");
    for (int i = 1; i <= 24; ++i) {
        const double x = 0.25 * i;
        const ExtReal h = 1e-6;
        const ExtReal d = (oracle::upper_tail(ExtReal(x) + h) - oracle::upper_tail(ExtReal(x) - h)) / ldexp(h, 1);
        const ExtReal phi = oracle::gaussian_density(x);
        t.check(rel_close(-d, phi, 1e-10), [&] { return at("d/dx Q != -phi", x); });
    }
    return t.finish();
}

SuiteResult constants_product() {
    Tally t("constants-product-identity");
    for (std::size_t k = 1; k <= kConstantsK; ++k) {
        const ExtReal kk = static_cast<double>(k);
        const ExtReal prod = constants::c_star(k) * constants::c_star(k - 1);
        t.check(rel_close(prod, kk * kk, 1e-25), [&] { return at_k("c_k c_{k-1} != k^2", k); });
    }
    return t.finish();
}

SuiteResult constants_sandwich() {
    Tally t("constants-sandwich");
    for (std::size_t k = 0; k <= kConstantsK; ++k) {
        const auto r = constants::sandwich_check(k);
        t.check(r.holds, [&] { return at_k("sandwich without positive slack", k); });
    }
    return t.finish();
}

SuiteResult constants_closed_form() {
    Tally t("constants-closed-form");
    for (std::size_t k = 0; k <= kClosedFormK; ++k) {
        t.check(rel_close(constants::c_star(k), constants::c_star_closed_form(k), 1e-20),
                [&] { return at_k("recurrence and product form disagree", k); });
    }
    return t.finish();
}

SuiteResult constants_delta() {
    Tally t("constants-delta-forms");
    for (std::size_t k = 0; k <= kShortK; ++k) {
        t.check(rel_close(constants::delta_k(k), constants::delta_k_difference_form(k), 1e-25),
                [&] { return at_k("delta_k forms disagree", k); });
    }
    return t.finish();
}

SuiteResult constants_maximizers() {
    Tally t("constants-maximizer-ordering");
    for (std::size_t k = 0; k <= kShortK; ++k) {
        const ExtReal xs = constants::x_star(k);
        const ExtReal xt = constants::x_tilde(k);
        t.check(ldexp(xs, 1) < xt && xt < ExtReal(1.0), [&] { return at_k("2 x_k < x~_k < 1 broken", k); });
    }
    return t.finish();
}

SuiteResult bracketing(std::size_t k_max) {
    Tally t("bracketing");
    const auto xs = bracket_grid();
    const auto bounds = all_bounds(k_max);
    const auto errors = kernels::error_matrix(bounds, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < bounds.size(); ++j) {
            const ExtReal e = errors[i * bounds.size() + j];
            const bool ok = bound_side(bounds[j]) == BoundSide::Upper ? e.hi() > 0 : e.hi() < 0;
            t.check(ok, [&] { return at(("wrong side for " + bound_label(bounds[j])).c_str(), xs[i]); });
        }
    }
    return t.finish();
}

SuiteResult exact_at_zero() {
    Tally t("star-exact-at-zero");
    const ExtReal target = oracle::sqrt_2_over_pi();
    for (Family f : {Family::SquareRootStar, Family::RationalStar, Family::ExponentialStar}) {
        for (std::size_t k = 0; k <= kStarZeroK; ++k) {
            const BoundId b{f, k};
            t.check(rel_close(eval_h(b, ExtReal(0.0)), target, 1e-20),
                    [&] { return at_k(("h(0) != sqrt(2/pi) for " + bound_label(b)).c_str(), k); });
        }
    }
    return t.finish();
}

SuiteResult terminal_interleaving(std::size_t k_max) {
    Tally t("terminal-interleaving");
    const auto xs = analysis::grid_points({1e-3, 10.0, 400, Spacing::Log});
    for (std::size_t k = 0; k <= k_max; ++k) {
        const ExtReal xt = constants::x_tilde(k);
        for (double xd : xs) {
            const ExtReal x = xd;
            if (abs(x - xt).hi() < 1e-9) continue;
            const ExtReal rational = terminal_g(Family::RationalStar, k, x);
            const ExtReal root = terminal_g(Family::SquareRootStar, k, x);
            const ExtReal expo = terminal_g(Family::ExponentialStar, k, x);
            t.check((rational >= root) == (x <= xt),
                    [&] { return at("rational vs square-root terminal order", k, xd); });
            t.check(expo > rational, [&] { return at("exponential terminal not above rational", k, xd); });
        }
    }
    return t.finish();
}

SuiteResult sampford_identity() {
    Tally t("sampford-shenton-identity");
    for (double x : analysis::grid_points({0.0, 10.0, 201, Spacing::Linear})) {
        const ExtReal xx = x;
        const ExtReal half = ldexp(xx, -1);
        const ExtReal cf = continued_fraction_h(1, xx, sqrt(ExtReal(2.0) + square(half)) + half);
        t.check(rel_close(eval_h({Family::Sampford, 0}, xx), cf, 1e-20),
                [&] { return at("Sampford closed form differs from its continued fraction", x); });
    }
    return t.finish();
}

SuiteResult asymptotic(std::size_t k_max) {
    Tally t("asymptotic-exactness");
    const ExtReal x = 30.0;
    const ExtReal tail = oracle::upper_tail(x);
    for (const auto& b : all_bounds(k_max)) {
        if (is_continued_fraction(b.family) && b.order == 0) continue;
        const ExtReal gap = abs(tail_bound(b, x).value - tail) / tail;
        t.check(gap.hi() < 1e-3, [&] { return "relative gap at x=30 too large for " + bound_label(b); });
    }
    return t.finish();
}

SuiteResult cross_representation(std::size_t k_max) {
    Tally t("cross-representation");
    const auto xs = analysis::grid_points({0.0, 10.0, 101, Spacing::Linear});
    for (const auto& b : all_bounds(k_max)) {
        if (!is_continued_fraction(b.family) || b.order < 1) continue;
        for (double xd : xs) {
            if (b.family == Family::ClassicCF && xd == 0.0) continue;
            const ExtReal x = xd;
            const ExtReal g = terminal_g(b.family, b.order, x);
            const ExtReal cf = continued_fraction_h(b.order, x, g);
            t.check(rel_close(eval_rational_form(b.order, x, g), cf, 1e-20),
                    [&] { return at(("rational form differs for " + bound_label(b)).c_str(), xd); });
            t.check(rel_close(eval_shifted_form(b.order, x, g - x), cf, 1e-20),
                    [&] { return at(("shifted form differs for " + bound_label(b)).c_str(), xd); });
            if (b.family == Family::ClassicCF) {
                const auto next = pq_polynomials(b.order + 1);
                t.check(rel_close(next.p.evaluate(x) / next.q.evaluate(x), cf, 1e-20),
                        [&] { return at("convergent differs from P/Q", b.order, xd); });
            }
        }
    }
    return t.finish();
}

SuiteResult polynomial_invariants() {
    Tally t("polynomial-invariants");
    for (std::size_t k = 0; k <= kMaxPolynomialOrder; ++k) {
        const auto pq = pq_polynomials(k);
        const int kk = static_cast<int>(k);
        t.check(pq.p.degree() == kk, [&] { return at_k("deg P_k != k", k); });
        t.check(k == 0 ? pq.q.degree() == -1 : pq.q.degree() == kk - 1, [&] { return at_k("deg Q_k != k-1", k); });
        t.check(pq.p.coefficient(k) == 1, [&] { return at_k("P_k not monic", k); });
        bool parity = true;
        for (std::size_t i = 0; i < pq.p.coefficients().size(); ++i) {
            const auto& c = pq.p.coefficients()[i];
            if ((i % 2 != k % 2) ? c != 0 : c <= 0) parity = false;
        }
        for (std::size_t i = 0; i < pq.q.coefficients().size(); ++i) {
            const auto& c = pq.q.coefficients()[i];
            if ((i % 2 == k % 2) ? c != 0 : c <= 0) parity = false;
        }
        t.check(parity, [&] { return at_k("coefficient parity pattern broken", k); });
    }
    return t.finish();
}

SuiteResult chains(std::size_t k_max) {
    Tally t("chains");
    const GridSpec grid{1e-3, 10.0, 2000, Spacing::Log};
    const std::size_t depth = std::max<std::size_t>(k_max, 2);
    for (Family f : {Family::SquareRootStar, Family::RationalStar, Family::ExponentialStar}) {
        t.absorb(analysis::verify_chain(f, depth, grid), std::string(family_name(f)));
    }
    return t.finish();
}

SuiteResult named_ordering() {
    Tally t("lb1-below-komatu");
    for (double x : analysis::grid_points({1e-3, 10.0, 1000, Spacing::Log})) {
        const ExtReal xx = x;
        t.check(eval_h({Family::NewLowerLB1, 0}, xx) < eval_h({Family::KomatuLower, 0}, xx),
                [&] { return at("h_LB1 not below h_KomatuLower", x); });
    }
    return t.finish();
}

SuiteResult sign_patterns(std::size_t k_max) {
    Tally t("derivative-sign-patterns");
    const GridSpec grid{1e-3, 10.0, 300, Spacing::Log};
    std::vector<BoundId> bounds;
    for (Family f : {Family::SquareRootStar, Family::RationalStar, Family::ExponentialStar}) {
        for (std::size_t k = 0; k <= std::min(k_max, kStarZeroK); ++k) bounds.push_back({f, k});
    }
    bounds.push_back({Family::ClassicCF, 0});
    for (Family f : {Family::KomatuLower, Family::KomatuUpper, Family::Pollak, Family::Sampford, Family::NewLowerLB1}) {
        bounds.push_back({f, 0});
    }
    for (const auto& b : bounds) t.absorb(analysis::verify_sign_pattern(b, grid), bound_label(b));
    return t.finish();
}

SuiteResult maxima(std::size_t k_max) {
    Tally t("maxima");
    for (std::size_t k = 0; k <= std::min(k_max, kStarZeroK); ++k) {
        const auto sq = analysis::max_abs_error({Family::SquareRootStar, k}, 0.0);
        const auto ra = analysis::max_abs_error({Family::RationalStar, k}, 0.0);
        t.check(sq.max_abs_error < *sq.cap, [&] { return at_k("square-root maximum not below 1/(32(k+1/2)^2)", k); });
        t.check(rel_close(sq.argmax_x, constants::x_star(k), 1e-6),
                [&] { return at_k("square-root argmax differs from x_k", k); });
        t.check(rel_close(ra.argmax_x, constants::x_tilde(k), 1e-6),
                [&] { return at_k("rational argmax differs from x~_k", k); });
        t.check(ra.max_abs_error < sq.max_abs_error, [&] { return at_k("rational maximum not below square-root", k); });
        t.check(sq.grid_agrees && ra.grid_agrees, [&] { return at_k("grid scan disagrees with search", k); });
        for (Family f : {Family::SquareRootStar, Family::RationalStar, Family::ExponentialStar}) {
            const ExtReal tail_edge = abs(analysis::error_at({f, k}, ExtReal(analysis::kSearchHigh)));
            t.check(tail_edge.hi() < 1e-23, [&] { return at_k("|Delta(10)| not below 1e-23", k); });
        }
    }
    return t.finish();
}

SuiteResult crossover(std::size_t k_max) {
    Tally t("crossover");
    const auto xs = analysis::grid_points({0.1, 10.0, 400, Spacing::Log});
    for (std::size_t k = 0; k <= std::min(k_max, kStarZeroK); ++k) {
        ExtReal root;
        try {
            root = analysis::crossover_exp_vs_sqrt(k);
        } catch (const std::exception& e) {
            t.check(false, [&] { return at_k(e.what(), k); });
            continue;
        }
        const double limit = k == 0 ? 3.2 : 3.0;
        t.check(root <= ExtReal(limit), [&] { return at_k("crossover beyond stated threshold", k); });
        for (double x : xs) {
            if (!(ExtReal(x) > root + ExtReal(1e-9))) continue;
            const ExtReal sq = abs(analysis::error_at({Family::SquareRootStar, k}, x));
            const ExtReal ex = abs(analysis::error_at({Family::ExponentialStar, k}, x));
            t.check(sq < ex, [&] { return at("square-root not better beyond crossover", k, x); });
        }
    }
    return t.finish();
}

}  // namespace

std::vector<SuiteResult> run_invariant_suites(std::size_t k_max) {
    std::vector<SuiteResult> out;
    out.push_back(oracle_dual_method());
    out.push_back(oracle_properties());
    out.push_back(oracle_derivative());
    out.push_back(constants_product());
    out.push_back(constants_sandwich());
    out.push_back(constants_closed_form());
    out.push_back(constants_delta());
    out.push_back(constants_maximizers());
    out.push_back(bracketing(k_max));
    out.push_back(exact_at_zero());
    out.push_back(terminal_interleaving(k_max));
    out.push_back(sampford_identity());
    out.push_back(asymptotic(k_max));
    out.push_back(cross_representation(k_max));
    out.push_back(polynomial_invariants());
    out.push_back(chains(k_max));
    out.push_back(named_ordering());
    out.push_back(sign_patterns(k_max));
    out.push_back(maxima(k_max));
    out.push_back(crossover(k_max));
    return out;
}

}  // namespace mills::verification
