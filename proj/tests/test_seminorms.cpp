#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "besov/corpus.hpp"
#include "besov/numerics.hpp"
#include "besov/seminorms.hpp"
#include "doctest.h"

using namespace besov;

namespace {

GridFunction smoothed_step_field(const Grid& g) {
    // +1 near 0, -1 near 1, smooth in between
    return sample(g, Measure::lebesgue, [](double x, double) {
        const double u = std::clamp((x - 0.2) / 0.6, 0.0, 1.0);
        return std::cos(std::numbers::pi * u) * std::exp(-std::pow(std::max(0.0, std::abs(x - 0.5) - 0.7), 2) * 50.0);
    });
}

}  // namespace

TEST_CASE("shift seminorm oracles") {
    const Grid g = default_grid(1);
    const auto ind = build_corpus("indicator", g);
    const auto hgrid = default_shift_grid(g);

    CHECK(besov_seminorm(build_corpus("zero", g), 1.0, 0.5, hgrid).value == 0.0);

    const auto e1 = besov_seminorm(ind, 1.0, 1.0, hgrid);
    CHECK(std::abs(e1.value - 2.0) <= 0.04);

    // with shifts capped at 0.1 the sup of 2|h|^{1/2} sits at the cap
    std::vector<Vec2> capped;
    for (double m : log_grid(4.0 * g.step(0), 0.1, 40)) capped.push_back({m, 0.0});
    const auto e2 = besov_seminorm(ind, 1.0, 0.5, capped);
    CHECK(std::abs(e2.value - 2.0 * std::sqrt(0.1)) <= 0.01 * 2.0 * std::sqrt(0.1));
    CHECK(e2.witness_h[0] == doctest::Approx(0.1));

    // default cap 1.6: 2|h|^{1/2} up to |h| = 1, then 2|h|^{-1/2}
    const auto e3 = besov_seminorm(ind, 1.0, 0.5, hgrid);
    CHECK(std::abs(e3.value - 2.0) <= 0.02);
    CHECK(!e3.cap_limited);

    CHECK(std::abs(besov_seminorm(build_corpus("hat", g), 1.0, 1.0, hgrid).value - 2.0) <= 0.04);
    CHECK_THROWS_AS(besov_seminorm(ind, 1.0, 0.5, {}), std::invalid_argument);
    CHECK_THROWS_AS(besov_seminorm(build_corpus("x", g), 1.0, 0.5, hgrid), std::invalid_argument);
}

TEST_CASE("besov estimate recomputes at its witness shift") {
    const Grid g = default_grid(1);
    for (const char* name : {"indicator", "hat", "gauss_bump", "weierstrass"})
        for (double p : {1.0, 2.0})
            for (double a : {0.25, 0.5, 1.0}) {
                const auto f = build_corpus(name, g);
                const auto e = besov_seminorm(f, p, a, default_shift_grid(g));
                CHECK(std::abs(e.value - shift_quotient(f, p, a, e.witness_h)) <= 1e-12 * std::max(1.0, e.value));
                for (double c : {-2.0, 0.5, 10.0})
                    CHECK(std::abs(besov_seminorm(c * f, p, a, default_shift_grid(g)).value - std::abs(c) * e.value) <=
                          1e-12 * std::abs(c) * e.value);
            }
}

TEST_CASE("directional seminorm") {
    const Grid g2 = default_grid(2);
    const auto mags = default_shift_magnitudes(g2);
    const auto gy = sample(g2, Measure::lebesgue, [](double, double y) { return std::exp(-y * y); });
    // constant along x: only the inflow strip at the left edge changes, so |f_h - f|_2 = |h|^{1/2} |g|_2
    const double g_norm = std::pow(std::numbers::pi / 2.0, 0.25);
    CHECK(std::abs(directional_seminorm(gy, 2.0, 0.5, Direction(1.0, 0.0), mags).value - g_norm) <= 0.02 * g_norm);

    const auto sq = build_corpus("indicator", g2);
    const auto d = directional_seminorm(sq, 1.0, 1.0, Direction(1.0, 0.0), mags);
    CHECK(d.kind == "directional");
    CHECK(std::abs(d.value - 2.0) <= 0.04);

    const auto slab = sample(g2, Measure::lebesgue, [](double x, double y) {
        return (x >= 0.0 && x <= 1.0 ? 1.0 : 0.0) * std::exp(-y * y / 2.0) / std::sqrt(2.0 * std::numbers::pi);
    });
    const auto ind1 = build_corpus("indicator", default_grid(1));
    const double one_d = besov_seminorm(ind1, 1.0, 1.0, default_shift_grid(default_grid(1))).value;
    const double two_d = directional_seminorm(slab, 1.0, 1.0, Direction(1.0, 0.0), mags).value;
    CHECK(std::abs(two_d - one_d) <= 0.02 * one_d);
}

TEST_CASE("integration by parts quotient") {
    const Grid g = default_grid(1);
    const auto x = build_corpus("x", g);
    const auto minus_one = sample(g, Measure::gaussian, [](double, double) { return -1.0; });
    const auto w = v_quotient(x, VectorFieldGrid({minus_one}), 2.0, 1.0);
    CHECK(std::abs(w.quotient - 1.0) <= 1e-4);
    CHECK(std::abs(w.numerator - 1.0) <= 1e-4);

    const auto ind = build_corpus("indicator", g);
    const auto phi = smoothed_step_field(g);
    auto s = v_quotient(ind, phi, Direction(1.0), 1.0, 1.0);
    CHECK(std::abs(std::abs(s.quotient) - 2.0) <= 0.02);

    // the directional and field forms agree in 1D
    const auto v = v_quotient(ind, VectorFieldGrid({phi}), 1.0, 0.5);
    CHECK(std::abs(v.quotient - v_quotient(ind, phi, Direction(1.0), 1.0, 0.5).quotient) <= 1e-14);

    // quotient is invariant under scaling of the field
    for (double c : {2.0, 10.0})
        for (double a : {0.3, 0.5, 1.0})
            CHECK(std::abs(v_quotient(ind, c * phi, Direction(1.0), 1.5, a).quotient -
                           v_quotient(ind, phi, Direction(1.0), 1.5, a).quotient) <= 1e-12);

    CHECK(v_quotient(build_corpus("zero", g), phi, Direction(1.0), 2.0, 0.5).quotient == 0.0);
    CHECK_THROWS_AS(v_quotient(ind, GridFunction::zeros(g, Measure::lebesgue), Direction(1.0), 2.0, 0.5),
                    std::invalid_argument);
}

TEST_CASE("witness search lower bounds") {
    const Grid g = default_grid(1);
    const auto ind = build_corpus("indicator", g);
    const auto hgrid = default_shift_grid(g);

    const auto w1 = v_lower_bound(ind, 1.0, 1.0, 20);
    CHECK(w1.quotient >= 2.0 * 0.95);

    const double s_half = besov_seminorm(ind, 1.0, 0.5, hgrid).value;
    const auto w2 = v_lower_bound(ind, 1.0, 0.5, 20);
    CHECK(w2.quotient >= std::pow(2.0, -0.5) * s_half * 0.95);

    CHECK(v_lower_bound(build_corpus("zero", g), 2.0, 0.5, 5).quotient == 0.0);

    // stored witnesses reproduce their quotient
    for (const auto* w : {&w1, &w2}) {
        const double again = w->scalar ? v_quotient(ind, *w->scalar, *w->direction, w->p, w->alpha).quotient
                                       : v_quotient(ind, w->field, w->p, w->alpha).quotient;
        CHECK(std::abs(again - w->quotient) <= 1e-12 * std::max(1.0, w->quotient));
    }
}

TEST_CASE("witness search is deterministic and sound") {
    const Grid g = default_grid(1);
    for (const char* name : {"hat", "gauss_bump"})
        for (double p : {1.0, 2.0})
            for (double a : {0.5, 1.0}) {
                const auto f = build_corpus(name, g);
                const auto w = v_lower_bound(f, p, a, 10);
                const auto again = v_lower_bound(f, p, a, 10);
                CHECK(w.quotient == again.quotient);
                CHECK(w.construction == again.construction);
                const double upper = (1.0 / (1.0 + a) + 1.0) * besov_seminorm(f, p, a, default_shift_grid(g)).value;
                CHECK(w.quotient <= upper * 1.05);
                CHECK(w.quotient > 0.0);
            }
}

TEST_CASE("gaussian kantorovich norm in 1D") {
    const Grid g = default_grid(1);
    CHECK(kantorovich_norm_1d(GridFunction::zeros(g, Measure::gaussian)) == 0.0);
    CHECK(std::abs(kantorovich_norm_1d(build_corpus("x", g)) - 1.0) <= 1e-6);
    CHECK(std::abs(kantorovich_norm_1d(build_corpus("hermite(2)", g)) - std::sqrt(2.0 / std::numbers::pi) / std::sqrt(2.0)) <=
          1e-5);
    CHECK_THROWS_AS(kantorovich_norm_1d(build_corpus("one", g)), std::invalid_argument);
    CHECK_THROWS_AS(kantorovich_norm_1d(build_corpus("xy", default_grid(2))), std::invalid_argument);
}
