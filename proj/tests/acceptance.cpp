// Acceptance checks. `acceptance N` runs criterion N, `acceptance` runs all.
// Each prints one line: "criterion N: PASS|FAIL <name> (<detail>)".

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "millsbounds/analysis.hpp"
#include "millsbounds/bound_families.hpp"
#include "millsbounds/constants.hpp"
#include "millsbounds/grid_kernels.hpp"
#include "millsbounds/polynomial_forms.hpp"
#include "millsbounds/reference_oracle.hpp"

using namespace mills;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const std::vector<double>& log_grid() {
    static const auto xs = analysis::grid_points({1e-3, 10.0, 2000, analysis::Spacing::Log});
    return xs;
}

Outcome table1() {
    const auto t0 = Clock::now();
    const auto t = analysis::reproduce_table1();
    const double elapsed = seconds_since(t0);
    std::string mismatches;
    for (std::size_t k = 0; k < analysis::kTable1Rows; ++k) {
        for (std::size_t c = 0; c < 5; ++c) {
            const auto& cell = t.cells[k][c];
            if (cell.matches()) continue;
            mismatches += fmt(" [k=%zu col=%zu computed=%s up=%s published=%s]", k, c, cell.computed.to_string(8).c_str(),
                              cell.rounded_up.to_string().c_str(), cell.published.to_string().c_str());
        }
    }
    const bool pass = t.matches() == 40 && elapsed < 30.0;
    return {pass, fmt("%zu/40 cells match after round-up, %.1f s;", t.matches(), elapsed) + mismatches};
}

Outcome table2() {
    // Rows as printed: a_0..a_k, then b_0..b_{k-1} (row 0 lists b_0 = 0).
    const std::vector<std::vector<long>> a{
        {1}, {0, 1}, {1, 0, 1}, {0, 3, 0, 1}, {3, 0, 6, 0, 1}, {0, 15, 0, 10, 0, 1}, {15, 0, 45, 0, 15, 0, 1},
        {0, 105, 0, 105, 0, 21, 0, 1}, {105, 0, 420, 0, 210, 0, 28, 0, 1}};
    const std::vector<std::vector<long>> b{
        {0}, {1}, {0, 1}, {2, 0, 1}, {0, 5, 0, 1}, {8, 0, 9, 0, 1}, {0, 33, 0, 14, 0, 1},
        {48, 0, 87, 0, 20, 0, 1}, {0, 279, 0, 185, 0, 27, 0, 1}};
    std::size_t compared = 0;
    for (std::size_t k = 0; k <= 8; ++k) {
        const auto pq = pq_polynomials(k);
        if (pq.p.degree() != static_cast<int>(a[k].size()) - 1) return {false, fmt("deg P_%zu wrong", k)};
        const int qdeg = k == 0 ? -1 : static_cast<int>(b[k].size()) - 1;
        if (pq.q.degree() != qdeg) return {false, fmt("deg Q_%zu wrong", k)};
        for (std::size_t i = 0; i < a[k].size(); ++i, ++compared) {
            if (pq.p.coefficient(i) != a[k][i]) return {false, fmt("P_%zu coefficient %zu differs", k, i)};
        }
        for (std::size_t i = 0; i < b[k].size(); ++i, ++compared) {
            if (pq.q.coefficient(i) != b[k][i]) return {false, fmt("Q_%zu coefficient %zu differs", k, i)};
        }
    }
    return {true, fmt("%zu coefficients for k = 0..8 match exactly", compared)};
}

Outcome error_cap() {
    ExtReal worst_ratio = 0.0;
    for (std::size_t k = 0; k <= 20; ++k) {
        const auto r = analysis::max_abs_error({Family::SquareRootStar, k}, 0.0);
        if (!(r.max_abs_error < *r.cap)) {
            return {false, fmt("k=%zu: max %s >= cap %s", k, r.max_abs_error.to_string(10).c_str(),
                               r.cap->to_string(10).c_str())};
        }
        worst_ratio = std::max(worst_ratio, r.max_abs_error / *r.cap);
    }
    return {true, "k = 0..20 below 1/(32(k+1/2)^2); largest max/cap = " + worst_ratio.to_string(6)};
}

Outcome bracketing() {
    const auto& xs = log_grid();
    const auto bounds = all_bounds(12);
    const auto errors = kernels::error_matrix(bounds, xs);
    std::size_t violations = 0;
    std::string first;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < bounds.size(); ++j) {
            const int want = bound_side(bounds[j]) == BoundSide::Upper ? 1 : -1;
            if (sign(errors[i * bounds.size() + j]) == want) continue;
            if (violations++ == 0) first = fmt(" first: %s at x=%.17g", bound_label(bounds[j]).c_str(), xs[i]);
        }
    }
    return {violations == 0,
            fmt("%zu bounds x %zu points, %zu violations", bounds.size(), xs.size(), violations) + first};
}

Outcome chains() {
    std::size_t checked = 0;
    for (Family f : {Family::SquareRootStar, Family::RationalStar, Family::ExponentialStar}) {
        const auto r = analysis::verify_chain_at(f, 10, log_grid());
        checked += r.checked;
        if (!r.ok) return {false, std::string(family_name(f)) + ": " + r.first_violation.value_or("violation")};
    }
    return {true, fmt("%zu ordering checks, zero violations", checked)};
}

Outcome sandwich() {
    const auto t0 = Clock::now();
    std::size_t bad = 0;
    for (std::size_t k = 0; k <= 10000; ++k) {
        const auto r = constants::sandwich_check(k);
        const bool ok = r.lower_slack.hi() > 0 && r.middle_slack.hi() > 0 && r.upper_slack.hi() > 0;
        if (!ok) ++bad;
    }
    const double elapsed = seconds_since(t0);
    return {bad == 0 && elapsed < 5.0, fmt("k = 0..10000, %zu without positive slack, %.2f s", bad, elapsed)};
}

Outcome cross_representation() {
    const auto xs = analysis::grid_points({0.0, 10.0, 101, analysis::Spacing::Linear});
    double worst = 0.0;
    std::size_t checked = 0;
    for (const auto& b : all_bounds(12)) {
        if (!is_continued_fraction(b.family) || b.order < 1) continue;
        for (double xd : xs) {
            if (b.family == Family::ClassicCF && xd == 0.0) continue;
            const ExtReal x = xd;
            const ExtReal g = terminal_g(b.family, b.order, x);
            const ExtReal cf = continued_fraction_h(b.order, x, g);
            for (const ExtReal& alt : {eval_rational_form(b.order, x, g), eval_shifted_form(b.order, x, g - x)}) {
                worst = std::max(worst, (abs(alt - cf) / cf).to_double());
                ++checked;
            }
        }
    }
    return {worst <= 1e-20, fmt("%zu comparisons, worst relative difference %.3g", checked, worst)};
}

Outcome maximizers() {
    double worst = 0.0;
    for (std::size_t k = 0; k <= 20; ++k) {
        const auto s = analysis::max_abs_error({Family::SquareRootStar, k}, 0.0);
        const auto r = analysis::max_abs_error({Family::RationalStar, k}, 0.0);
        worst = std::max(worst, (abs(s.argmax_x - constants::x_star(k)) / constants::x_star(k)).to_double());
        worst = std::max(worst, (abs(r.argmax_x - constants::x_tilde(k)) / constants::x_tilde(k)).to_double());
    }
    return {worst <= 1e-6, fmt("k = 0..20, worst relative distance to closed form %.3g", worst)};
}

Outcome crossover() {
    std::string roots;
    bool pass = true;
    for (std::size_t k = 0; k <= 20; ++k) {
        const ExtReal root = analysis::crossover_exp_vs_sqrt(k);
        const double limit = k == 0 ? 3.2 : 3.0;
        if (!(root <= ExtReal(limit))) pass = false;
        if (k <= 1 || k == 20) roots += fmt(" k=%zu:%.9f", k, root.to_double());
    }
    return {pass, "roots within 3.2 (k=0) and 3 (k=1..20);" + roots};
}

Outcome oracle_consistency() {
    double worst_dual = 0.0;
    for (int i = 1; i <= 30; ++i) {
        const ExtReal x = ExtReal(static_cast<double>(i)) / ExtReal(10.0);
        const ExtReal s = oracle::upper_tail_series(x);
        const ExtReal c = oracle::upper_tail_continued_fraction(x);
        worst_dual = std::max(worst_dual, (abs(s - c) / s).to_double());
    }
    double worst_deriv = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const ExtReal x = 0.25 * i;
        const ExtReal h = 1e-6;
        const ExtReal d = (oracle::upper_tail(x + h) - oracle::upper_tail(x - h)) / ldexp(h, 1);
        const ExtReal phi = oracle::gaussian_density(x);
        worst_deriv = std::max(worst_deriv, (abs(d + phi) / phi).to_double());
    }
    return {worst_dual <= 1e-25 && worst_deriv <= 1e-10,
            fmt("series vs continued fraction worst %.3g; derivative worst %.3g", worst_dual, worst_deriv)};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    kernels::configure_threads_from_env();
    const std::vector<Criterion> all{
        {"maximal-error table reproduction", table1},
        {"coefficient table reproduction", table2},
        {"square-root family error cap", error_cap},
        {"bracketing suite", bracketing},
        {"chain suites", chains},
        {"constant sandwich", sandwich},
        {"cross-representation", cross_representation},
        {"maximizer agreement", maximizers},
        {"crossover thresholds", crossover},
        {"oracle self-consistency", oracle_consistency},
    };
    std::vector<std::size_t> selected;
    if (argc > 1) {
        const long n = std::strtol(argv[1], nullptr, 10);
        if (n < 1 || n > static_cast<long>(all.size())) {
            std::fprintf(stderr, "usage: acceptance [1-%zu]\n", all.size());
            return 64;
        }
        selected.push_back(static_cast<std::size_t>(n - 1));
    } else {
        for (std::size_t i = 0; i < all.size(); ++i) selected.push_back(i);
    }
    bool ok = true;
    for (std::size_t i : selected) {
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        ok = ok && o.pass;
        std::printf("criterion %zu: %s %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", all[i].name, o.detail.c_str());
    }
    return ok ? 0 : 1;
}
