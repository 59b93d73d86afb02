#include <cmath>
#include <limits>
#include <stdexcept>
#include <numbers>

#include "besov/constants.hpp"
#include "doctest.h"

using namespace besov;

TEST_CASE("gaussian moment constant") {
    CHECK(std::abs(gaussian_moment_constant(2.0) - 1.0) <= 1e-14);
    CHECK(std::abs(gaussian_moment_constant(1.0) - std::sqrt(2.0 / std::numbers::pi)) <= 1e-14);
    CHECK(std::abs(gaussian_moment_constant_quadrature(2.0) - 1.0) <= 1e-10);
    CHECK(std::abs(gaussian_moment_constant_quadrature(1.0) - 0.7978845608028654) <= 1e-10);
    // E Z^4 = 3
    CHECK(gaussian_moment_constant(4.0) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-14));
    for (double p = 1.0; p <= 6.0; p += 0.25)
        CHECK(std::abs(gaussian_moment_constant(p) - gaussian_moment_constant_quadrature(p)) <= 1e-10);
}

TEST_CASE("c_t closed form against its integral") {
    for (double t : {1e-6, 1e-3, 0.05, 0.5, 1.0, 3.0, 10.0, 20.0})
        CHECK(std::abs(c_t(t) - c_t_quadrature(t)) <= 1e-10);
    for (int k = 0; k < 1000; ++k) {
        const double t = std::pow(10.0, -6.0 + 8.0 * k / 999.0);
        CHECK(c_t(t) <= std::sqrt(2.0 * t));
    }
    CHECK(std::abs(c_t(20.0) - std::numbers::pi / 2.0) <= 1e-6);
    double prev = 0.0;
    for (double t = 0.01; t < 30.0; t *= 1.3) {
        CHECK(c_t(t) > prev);
        prev = c_t(t);
    }
}

TEST_CASE("gaussian absolute moments") {
    // c_{a,1} = 2^{a/2} Gamma((a+1)/2)/sqrt(pi)
    for (double a : {0.25, 0.5, 1.0}) {
        const double ref = std::exp2(0.5 * a) * std::tgamma(0.5 * (a + 1.0)) / std::sqrt(std::numbers::pi);
        CHECK(c_alpha_n(a, 1) == doctest::Approx(ref).epsilon(1e-14));
        CHECK(std::abs(c_alpha_n(a, 1) - c_alpha_n_quadrature(a, 1)) <= 1e-10);
        CHECK(std::abs(c_alpha_n(a, 2) - c_alpha_n_quadrature(a, 2)) <= 1e-10);
    }
    CHECK(c_alpha_n(2.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c_alpha_n(1.0, 2) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-14));
    // C(n, alpha) <= sqrt(n) + n
    for (int n : {1, 2, 3})
        for (double a = 0.05; a <= 1.0; a += 0.05) CHECK(lebesgue_upper_constant(n, a) <= std::sqrt(n) + n);
}

TEST_CASE("embedding constant") {
    // frozen from the displayed Gamma formula at q = 2
    CHECK(embedding_constant(2.0, 0.5) == doctest::Approx(2.0 / (0.5 * std::tgamma(0.25)) + 2.0 / (std::tgamma(0.25) * 0.5)));
    CHECK(embedding_constant(2.0, 0.5) == doctest::Approx(2.2065253026416745).epsilon(1e-12));
    CHECK_THROWS_AS(embedding_constant(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(embedding_constant(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("startup cross-check") {
    CHECK_NOTHROW(verify_constants());
    const auto k = constants(2.0, 0.5, 1);
    CHECK(k.Cp == 1.0);
    CHECK(k.ct(1.0) == doctest::Approx(std::acos(std::exp(-1.0))));
}
