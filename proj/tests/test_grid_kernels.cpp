#include <doctest.h>

#include <stdexcept>

#include "millsbounds/analysis.hpp"
#include "millsbounds/grid_kernels.hpp"

using mills::ExtReal;
using mills::Family;
namespace kernels = mills::kernels;

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
    const auto xs = mills::analysis::grid_points({1e-3, 12.0, 777, mills::analysis::Spacing::Log});
    const auto bounds = mills::all_bounds(6);
    for (int threads : {1, 2, 3, 8}) {
        kernels::set_thread_limit(threads);
        CAPTURE(threads);
        CHECK(kernels::upper_tail_grid(xs, kernels::Exec::Parallel) == kernels::upper_tail_grid(xs, kernels::Exec::Serial));
        CHECK(kernels::error_matrix(bounds, xs, kernels::Exec::Parallel) ==
              kernels::error_matrix(bounds, xs, kernels::Exec::Serial));
    }
    kernels::set_thread_limit(0);
}

TEST_CASE("error matrix layout") {
    const std::vector<double> xs{0.5, 2.0};
    const std::vector<mills::BoundId> bounds{{Family::Pollak, 0}, {Family::SquareRootStar, 1}};
    const auto m = kernels::error_matrix(bounds, xs, kernels::Exec::Serial);
    REQUIRE(m.size() == 4);
    CHECK(m[1] == mills::analysis::error_at(bounds[1], 0.5));
    CHECK(m[2] == mills::analysis::error_at(bounds[0], 2.0));
}

TEST_CASE("errors inside the parallel region surface as exceptions") {
    const std::vector<double> xs{1.0, 0.0, 2.0};
    const std::vector<mills::BoundId> bounds{{Family::ClassicCF, 2}};
    CHECK_THROWS_AS(kernels::error_matrix(bounds, xs, kernels::Exec::Parallel), std::domain_error);
    CHECK_THROWS_AS(kernels::error_matrix(bounds, xs, kernels::Exec::Serial), std::domain_error);
}

TEST_CASE("argmax takes the first of equal magnitudes") {
    const std::vector<ExtReal> v{1.0, -3.0, 3.0, 2.0};
    CHECK(kernels::argmax_abs(v) == 1);
}

TEST_CASE("thread limit") {
    kernels::set_thread_limit(3);
    CHECK(kernels::thread_limit() == 3);
    kernels::set_thread_limit(-2);
    CHECK(kernels::thread_limit() >= 1);
}
