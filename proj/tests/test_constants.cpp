#include <doctest.h>

#include <stdexcept>

#include "millsbounds/constants.hpp"
#include "millsbounds/reference_oracle.hpp"
#include "test_support.hpp"

using mills::ExtReal;
using testing::ext;
using testing::rel_err;
namespace constants = mills::constants;

TEST_CASE("optimal constants at fixed k") {
    CHECK(rel_err(constants::c_star(0), ExtReal(2.0) / mills::dd::pi) < 1e-31);
    CHECK(rel_err(constants::c_star(1), mills::dd::pi / ExtReal(2.0)) < 1e-31);
    CHECK(rel_err(constants::c_star(2), ext("2.5464790894703253723021402139602298")) < 1e-29);
    CHECK(rel_err(constants::c_star(7), ext("7.5165058606396420256186291885105294")) < 1e-29);
    CHECK(rel_err(constants::c_star(10), ext("10.511845150385943789316771293908895")) < 1e-29);
    CHECK(rel_err(constants::c_star(100), ext("100.50124371184082232299889460480423")) < 1e-29);
    CHECK(rel_err(constants::c_star(1000), ext("1000.5001249374610273952181057766712")) < 1e-29);
    CHECK(rel_err(constants::c_star(10000), ext("10000.500012499374960946484892288558")) < 1e-28);
}

TEST_CASE("product identity c_k c_{k-1} = k^2") {
    for (std::size_t k = 1; k <= 10000; k += 7) {
        const ExtReal kk = static_cast<double>(k);
        CAPTURE(k);
        CHECK(rel_err(constants::c_star(k) * constants::c_star(k - 1), kk * kk) < 1e-25);
    }
}

TEST_CASE("closed-form products match the recurrence") {
    for (std::size_t k = 0; k <= 200; ++k) {
        CAPTURE(k);
        CHECK(rel_err(constants::c_star_closed_form(k), constants::c_star(k)) < 1e-20);
    }
}

TEST_CASE("derived quantities") {
    CHECK(rel_err(constants::delta_k(0), ext("0.45542957651263489532799052253675889")) < 1e-29);
    CHECK(rel_err(constants::delta_k(5), ext("0.20326658710260616780087482906968903")) < 1e-29);
    CHECK(rel_err(constants::x_star(0), ext("0.453276189992131937154814574684")) < 1e-28);
    CHECK(rel_err(constants::x_star(3), ext("0.258478518038063164110325076683")) < 1e-28);
    CHECK(rel_err(constants::x_star(10), ext("0.153660397174352531675342909034")) < 1e-27);
    CHECK(rel_err(constants::x_tilde(0), ext("0.942415019445264476894291556344")) < 1e-28);
    CHECK(rel_err(constants::x_tilde(3), ext("0.518177145482070779483301591666")) < 1e-28);
    CHECK(rel_err(constants::x_tilde(10), ext("0.307407069544186733235547812154")) < 1e-27);
    for (std::size_t k = 0; k <= 1000; ++k) {
        CAPTURE(k);
        CHECK(rel_err(constants::delta_k(k), constants::delta_k_difference_form(k)) < 1e-25);
        CHECK(rel_err(constants::x_star(k), constants::x_star_centered_form(k)) < 1e-20);
        CHECK(rel_err(constants::x_tilde(k), constants::x_tilde_centered_form(k)) < 1e-20);
        CHECK(ldexp(constants::x_star(k), 1) < constants::x_tilde(k));
        CHECK(constants::x_tilde(k) < ExtReal(1.0));
    }
}

TEST_CASE("sandwich holds with positive slack") {
    for (std::size_t k = 0; k <= 10000; ++k) {
        const auto r = constants::sandwich_check(k);
        CAPTURE(k);
        CHECK(r.holds);
        CHECK(r.lower_slack.hi() > 0);
        CHECK(r.middle_slack.hi() > 0);
        CHECK(r.upper_slack.hi() > 0);
    }
}

TEST_CASE("central binomial identity") {
    for (std::size_t k = 2; k <= 60; k += 2) {
        CAPTURE(k);
        CHECK(constants::binomial_identity_check(k));
    }
    CHECK_THROWS_AS(constants::binomial_identity_check(3), std::invalid_argument);
    CHECK_THROWS_AS(constants::binomial_identity_check(62), std::invalid_argument);
}

TEST_CASE("materialize matches the scalar accessors") {
    const auto t = constants::materialize(25);
    REQUIRE(t.c_star.size() == 26);
    CHECK(t.max_k == 25);
    for (std::size_t k = 0; k <= 25; ++k) {
        CHECK(t.c_star[k] == constants::c_star(k));
        CHECK(t.delta[k] == constants::delta_k(k));
        CHECK(t.x_star[k] == constants::x_star(k));
        CHECK(t.x_tilde[k] == constants::x_tilde(k));
    }
}
