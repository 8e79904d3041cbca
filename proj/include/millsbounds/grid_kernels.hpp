#pragma once

// Data-parallel evaluation of approximation errors over a grid of x values.
// Each kernel has a serial reference and an OpenMP version; both produce
// identical results because every grid point is computed independently and
// no floating-point reduction crosses points.

#include <cstddef>
#include <span>
#include <vector>

#include "millsbounds/bound_families.hpp"
#include "millsbounds/double_double.hpp"

namespace mills::kernels {

enum class Exec { Serial, Parallel };

// 1 - Phi(x) at each x.
std::vector<ExtReal> upper_tail_grid(std::span<const double> xs, Exec exec = Exec::Parallel);

// Signed errors phi/h - (1 - Phi), row-major: entry [i * bounds.size() + j]
// belongs to xs[i] and bounds[j].
std::vector<ExtReal> error_matrix(std::span<const BoundId> bounds, std::span<const double> xs,
                                  Exec exec = Exec::Parallel);

// Index of the largest |values[i]|; ties resolve to the lowest index.
// values must be non-empty.
std::size_t argmax_abs(std::span<const ExtReal> values);

// Caps the OpenMP team size. n <= 0 restores the runtime default.
void set_thread_limit(int n);
// Applies MILLS_BOUNDS_THREADS when set to a positive integer.
void configure_threads_from_env();
int thread_limit();

}  // namespace mills::kernels
