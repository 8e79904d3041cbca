#include "millsbounds/grid_kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "millsbounds/reference_oracle.hpp"

namespace mills::kernels {
namespace {

int g_thread_limit = 0;

int team_size() { return g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads(); }

void fill_row(std::span<const BoundId> bounds, double x, ExtReal* row) {
    const ExtReal xx = x;
    const ExtReal tail = oracle::upper_tail(xx);
    const ExtReal density = oracle::gaussian_density(xx);
    for (std::size_t j = 0; j < bounds.size(); ++j) row[j] = density / eval_h(bounds[j], xx) - tail;
}

}  // namespace

std::vector<ExtReal> upper_tail_grid(std::span<const double> xs, Exec exec) {
    std::vector<ExtReal> out(xs.size());
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = oracle::upper_tail(xs[i]);
        return out;
    }
#pragma omp parallel for schedule(dynamic, 16) num_threads(team_size())
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = oracle::upper_tail(xs[i]);
    return out;
}

std::vector<ExtReal> error_matrix(std::span<const BoundId> bounds, std::span<const double> xs, Exec exec) {
    for (const auto& b : bounds) validate(b);
    std::vector<ExtReal> out(xs.size() * bounds.size());
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    const std::size_t width = bounds.size();
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) fill_row(bounds, xs[i], out.data() + i * width);
        return out;
    }
    // Exceptions may not leave an OpenMP region; record the first failing row
    // and rethrow from the serial path so the message is deterministic.
    std::ptrdiff_t failed = n;
#pragma omp parallel for schedule(dynamic, 8) num_threads(team_size()) reduction(min : failed)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            fill_row(bounds, xs[i], out.data() + i * width);
        } catch (...) {
            failed = std::min(failed, i);
        }
    }
    if (failed < n) fill_row(bounds, xs[failed], out.data() + failed * width);
    return out;
}

std::size_t argmax_abs(std::span<const ExtReal> values) {
    std::size_t best = 0;
    ExtReal best_value = abs(values[0]);
    for (std::size_t i = 1; i < values.size(); ++i) {
        const ExtReal v = abs(values[i]);
        if (v > best_value) {
            best = i;
            best_value = v;
        }
    }
    return best;
}

void set_thread_limit(int n) { g_thread_limit = n > 0 ? n : 0; }

int thread_limit() { return team_size(); }

void configure_threads_from_env() {
    if (const char* env = std::getenv("MILLS_BOUNDS_THREADS")) {
        try {
            set_thread_limit(std::stoi(env));
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
}

}  // namespace mills::kernels
