#include <cmath>
#include <limits>
#include <stdexcept>
#include <numbers>
#include <random>
#include <sstream>

#include "besov/constants.hpp"
#include "besov/corpus.hpp"
#include "besov/hermite.hpp"
#include "besov/ou.hpp"
#include "doctest.h"

using namespace besov;

namespace {

std::string herm(int n) { return "hermite(" + std::to_string(n) + ")"; }

// max |a-b| over nodes with |x| <= r, relative to max |scale| there.
double interior_rel(const GridFunction& a, const GridFunction& b, const GridFunction& scale, double r = 4.0) {
    const Grid& g = a.grid();
    double e = 0.0, s = 0.0;
    for (std::size_t i = 0; i < g.n(0); ++i)
        for (std::size_t j = 0; j < g.n(1); ++j) {
            const double x = g.axis(0).coord(i);
            const double y = g.dim() == 2 ? g.axis(1).coord(j) : 0.0;
            if (std::abs(x) > r || std::abs(y) > r) continue;
            e = std::max(e, std::abs(a.at(i, j) - b.at(i, j)));
            s = std::max(s, std::abs(scale.at(i, j)));
        }
    return e / s;
}

GridFunction random_field(const Grid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<double> a(6);
    for (auto& v : a) v = nd(rng);
    return sample(g, Measure::gaussian, [&](double x, double) {
        if (std::abs(x) >= 4.0) return 0.0;
        const double u = (x + 4.0) / 8.0;
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::sin(std::numbers::pi * (k + 1) * u) / (k + 1);
        return s * std::sin(std::numbers::pi * u);
    });
}

}  // namespace

TEST_CASE("gauss-hermite rule") {
    const auto r = gauss_hermite(128);
    double w = 0.0, m2 = 0.0, m4 = 0.0, m10 = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
        const double y = r.nodes[k];
        w += r.weights[k];
        m2 += r.weights[k] * y * y;
        m4 += r.weights[k] * std::pow(y, 4);
        m10 += r.weights[k] * std::pow(y, 10);
    }
    CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(m10 == doctest::Approx(945.0).epsilon(1e-11));
    const auto r5 = gauss_hermite(5);
    CHECK(r5.nodes[4] == doctest::Approx(2.8569700138728056).epsilon(1e-13));
}

TEST_CASE("ou semigroup elementary oracles") {
    const Grid g = default_grid(1);
    const auto one = build_corpus("one", g);
    const auto x = build_corpus("x", g);
    for (double t : {0.01, 0.5, 2.0}) {
        CHECK(max_abs(ou_apply(one, t) - one) <= 1e-10);
        CHECK(max_abs(ou_gradient(one, t).components[0]) <= 1e-10);
        const auto ex = std::exp(-t) * x;
        CHECK(interior_rel(ou_apply(x, t), ex, ex) <= 1e-8);
        const auto gx = ou_gradient(x, t).components[0];
        for (std::size_t i = 0; i < g.n(0); i += 64) CHECK(std::abs(gx[i] - std::exp(-t)) <= 1e-8 * std::exp(-t));
        CHECK(std::abs(lp_norm(ou_gradient(build_corpus("hermite(1)", g), t), 2.0) - std::exp(-t)) <= 1e-4 * std::exp(-t));
    }
    CHECK_THROWS_AS(ou_apply(x, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ou_apply(build_corpus("hat", g), 1.0), std::invalid_argument);
}

TEST_CASE("ou quadrature agrees with the spectral multiplier on H_0..H_12") {
    const Grid g = default_grid(1);
    for (int n = 0; n <= 12; ++n) {
        const auto h = build_corpus(herm(n), g);
        std::vector<double> c(13, 0.0);
        c[static_cast<std::size_t>(n)] = 1.0;
        for (double t : {0.1, 1.0, 3.0}) {
            const auto spec = hermite_synthesize(ou_apply_spectral(hermite_coeffs_1d(c), t), g);
            CHECK(interior_rel(ou_apply(h, t), spec, h) <= 1e-8);
        }
    }
}

TEST_CASE("ou gradient agrees with differencing the smoothed function") {
    const Grid g = default_grid(1);
    for (int n : {2, 3, 5}) {
        const auto h = build_corpus(herm(n), g);
        const auto s = ou_state(h, 0.3);
        const double d = g.step(0);
        CHECK(interior_rel(directional_derivative(s.value, Direction(1.0)), s.gradient.components[0], s.gradient.components[0]) <=
              10.0 * d * d);
    }
    const Grid g2 = default_grid(2);
    const auto f = build_corpus("x+y^2", g2);
    const auto s = ou_state(f, 0.5);
    const auto ey = sample(g2, Measure::gaussian, [](double, double y) { return 2.0 * std::exp(-1.0) * y; });
    CHECK(interior_rel(s.gradient.components[1], ey, ey) <= 1e-8);
    const auto ex = sample(g2, Measure::gaussian, [](double, double) { return std::exp(-0.5); });
    CHECK(interior_rel(s.gradient.components[0], ex, ex) <= 1e-8);
}

TEST_CASE("spectral operations") {
    const auto c = hermite_coeffs_1d({0.3, -1.2, 0.7, 2.0});
    CHECK(ou_apply_spectral(c, 0.0).c == c.c);
    const auto half = ou_apply_spectral(hermite_coeffs_1d({0.0, 1.0, 0.0}), std::log(2.0));
    CHECK(half.c[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(half.c[0] == 0.0);
    const auto lim = ou_apply_spectral(c, std::numeric_limits<double>::infinity());
    CHECK(lim.c[0] == 0.3);
    CHECK(lim.c[1] == 0.0);
    CHECK(lim.c[3] == 0.0);
    CHECK(ou_apply_spectral(c, 60.0).c[3] == doctest::Approx(0.0));

    CHECK(bessel_potential(c, 0.0).c == c.c);
    CHECK(bessel_potential(hermite_coeffs_1d({0.0, 1.0}), 2.0).c[1] == doctest::Approx(0.5).epsilon(1e-15));
    for (int n = 0; n < 6; ++n) {
        std::vector<double> v(8, 0.0);
        v[static_cast<std::size_t>(n)] = 1.0;
        for (double a : {0.25, 0.5, 1.0})
            CHECK(sobolev_norm(hermite_coeffs_1d(v), a) == doctest::Approx(std::pow(1.0 + n, 0.5 * a)).epsilon(1e-14));
    }
}

TEST_CASE("hermite projection and parseval") {
    const Grid g = default_grid(1);
    // the remaining error is the mass of h_3 h_n beyond |x| = 8
    const auto h3 = hermite_project(build_corpus("hermite(3)", g), 9);
    for (std::size_t n = 0; n < 9; ++n) CHECK(std::abs(h3.c[n] - (n == 3 ? 1.0 : 0.0)) <= 1e-8);
    CHECK(h3.tail_energy <= 1e-10);

    const auto f = sample(g, Measure::gaussian, [](double x, double) { return std::sin(x) + 0.2 * x * x; });
    const auto c = hermite_project(f, 64);
    CHECK(std::abs(c.energy() + c.tail_energy - std::pow(lp_norm(f, 2.0), 2)) <= 1e-8);
    CHECK(c.tail_energy <= 1e-12);
    CHECK(max_abs(hermite_synthesize(c, Grid(Axis{-4, 4, 401})) -
                  sample(Grid(Axis{-4, 4, 401}), Measure::gaussian, [](double x, double) { return std::sin(x) + 0.2 * x * x; })) <= 1e-5);

    const Grid g2 = default_grid(2);
    const auto c2 = hermite_project(build_corpus("hermite(2,1)", g2), 8);
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) CHECK(std::abs(c2.at(a, b) - (a == 2 && b == 1 ? 1.0 : 0.0)) <= 1e-9);
    const auto xy = hermite_project(build_corpus("xy", g2), 4);
    CHECK(xy.at(1, 1) == doctest::Approx(1.0).epsilon(1e-9));

    std::stringstream ss;
    write_hermite_coeffs(ss, c2);
    const auto back = read_hermite_coeffs(ss);
    CHECK(back.c == c2.c);
    CHECK(back.dim == 2);
}

TEST_CASE("u gamma functional") {
    const Grid g = default_grid(1);
    const auto t_grid = default_t_grid();
    CHECK(u_gamma_functional(build_corpus("one", g), 2.0, 0.5, t_grid).value <= 1e-10);
    const auto x = build_corpus("x", g);
    const double a = 0.5, e = 0.5 * (1.0 - a);
    const double oracle = std::pow(e, e) * std::exp(-e);  // sup of t^e e^{-t} at t = e
    const auto u = u_gamma_functional_refined(x, 2.0, a, t_grid);
    CHECK(u.value == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(u.argmax == doctest::Approx(e).epsilon(1e-2));
    CHECK(u_gamma_functional(x, 2.0, a, t_grid).value <= u.value);
    CHECK(u_gamma_functional(x, 2.0, 1.0, t_grid).value >= 0.999);
}

TEST_CASE("ou contraction and mean preservation") {
    const Grid g = default_grid(1);
    for (const char* name : {"x", "hermite(2)", "hermite(5)"}) {
        const auto f = build_corpus(name, g);
        const auto f2 = f + build_corpus("one", g);
        for (double t : {0.05, 0.5, 2.0}) {
            const auto tf = ou_apply(f2, t);
            CHECK(std::abs(integrate(tf) - integrate(f2)) <= 1e-8);
            for (double p : {1.0, 2.0, 4.0}) CHECK(lp_norm(tf, p) <= lp_norm(f2, p) * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("gradient bound of the ou semigroup") {
    const Grid g = default_grid(1);
    for (const char* name : {"x", "hermite(2)", "hermite(3)", "hermite(6)"}) {
        const auto f = build_corpus(name, g);
        for (double t : {0.01, 0.1, 1.0, 3.0}) {
            const auto grad = ou_gradient(f, t);
            const double k = std::exp(-t) / std::sqrt(-std::expm1(-2.0 * t));
            CHECK(lp_norm(grad, 2.0) <= gaussian_moment_constant(2.0) * k * lp_norm(f, 2.0) * (1.0 + 1e-6));
            CHECK(lp_norm(grad, std::numeric_limits<double>::infinity()) <= gaussian_moment_constant(1.0) * k * lp_norm(f, std::numeric_limits<double>::infinity()) * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("field bound of the ou semigroup for random smooth fields") {
    const Grid g = default_grid(1);
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 8; ++trial) {
        const auto phi = random_field(g, rng);
        for (double t : {0.01, 0.1, 1.0}) {
            const auto tphi = ou_apply(VectorFieldGrid({phi}), t);
            const auto div = divergence_gamma(tphi);
            for (double p : {1.0, 2.0}) {
                const double rhs = gaussian_moment_constant(p) / std::sqrt(-std::expm1(-2.0 * t)) * lp_norm(phi, p);
                CHECK(lp_norm(div, p) <= rhs * (1.0 + 1e-6));
            }
        }
    }
}

TEST_CASE("conditional expectation") {
    const Grid g2 = default_grid(2);
    const Grid g1 = Grid(g2.axis(0));
    const auto gx = conditional_expectation(build_corpus("hermite(3,0)", g2), 0);
    CHECK(max_abs(gx - build_corpus("hermite(3)", g1)) <= 1e-10);
    CHECK(max_abs(conditional_expectation(build_corpus("xy", g2), 0)) <= 1e-10);
    const auto xp1 = conditional_expectation(build_corpus("x+y^2", g2), 0);
    CHECK(max_abs(xp1 - (build_corpus("x", g1) + build_corpus("one", g1))) <= 1e-9);
    CHECK_THROWS_AS(conditional_expectation(build_corpus("x", g1), 0), std::invalid_argument);
}

TEST_CASE("conditional expectation commutes with the ou semigroup") {
    const Grid g2 = default_grid(2);
    for (const char* name : {"x", "xy", "x+y^2"}) {
        const auto f = build_corpus(name, g2);
        for (double t : {0.1, 1.0}) {
            const auto lhs = conditional_expectation(ou_apply(f, t), 0);
            const auto rhs = ou_apply(conditional_expectation(f, 0), t);
            CHECK(lp_norm(lhs - rhs, 2.0) <= 1e-6);
        }
    }
}
