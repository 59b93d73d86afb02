#include "besov/constants.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace besov {

double gaussian_moment_constant(double p) {
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("C(p) needs a finite positive exponent");
    const double m = std::exp2(0.5 * p) * std::tgamma(0.5 * (p + 1.0)) / std::sqrt(std::numbers::pi);
    return std::pow(m, 1.0 / p);
}

double c_t(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("c_t needs t > 0");
    return std::acos(std::exp(-t));
}

double c_alpha_n(double a, int n) {
    if (n < 1 || !(a >= 0.0)) throw std::invalid_argument("c_alpha_n needs a >= 0 and n >= 1");
    return std::exp2(0.5 * a) * std::exp(std::lgamma(0.5 * (n + a)) - std::lgamma(0.5 * n));
}

double lebesgue_upper_constant(int n, double alpha) { return c_alpha_n(alpha, n) + c_alpha_n(1.0 + alpha, n); }

double dual_exponent(double p) {
    if (p == 1.0) return INFINITY;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

double embedding_constant(double p, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("embedding constant needs alpha in (0,1)");
    const double q = dual_exponent(p);
    if (std::isinf(q)) throw std::invalid_argument("embedding constant needs p > 1");
    const double g = std::tgamma(0.5 * alpha);
    return 2.0 / (alpha * g) + 2.0 * gaussian_moment_constant(q) / (g * (1.0 - alpha));
}

double gaussian_moment_constant_quadrature(double p) {
    boost::math::quadrature::exp_sinh<double> q;
    const double c = 2.0 / std::sqrt(2.0 * std::numbers::pi);
    const double m = q.integrate([p, c](double s) { return s > 0.0 ? c * std::exp(p * std::log(s) - 0.5 * s * s) : 0.0; });
    return std::pow(m, 1.0 / p);
}

double c_t_quadrature(double t) {
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate([](double tau) { return std::exp(-tau) / std::sqrt(-std::expm1(-2.0 * tau)); }, 0.0, t);
}

double c_alpha_n_quadrature(double a, int n) {
    boost::math::quadrature::exp_sinh<double> q;
    const double norm = std::exp2(0.5 * n - 1.0) * std::tgamma(0.5 * n);
    return q.integrate([a, n, norm](double r) { return r > 0.0 ? std::exp((a + n - 1.0) * std::log(r) - 0.5 * r * r) / norm : 0.0; });
}

GaussianConstants constants(double p, double alpha, int n) {
    GaussianConstants c;
    c.p = p;
    c.Cp = gaussian_moment_constant(p);
    c.ct = [](double t) { return c_t(t); };
    c.c_alpha_n = c_alpha_n(alpha, n);
    return c;
}

void verify_constants(double tol) {
    auto check = [tol](const char* what, double a, double b) {
        if (std::abs(a - b) > tol * std::max(1.0, std::abs(a)))
            throw std::runtime_error(std::string("constant cross-check failed for ") + what);
    };
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) check("C(p)", gaussian_moment_constant(p), gaussian_moment_constant_quadrature(p));
    for (double t : {1e-3, 0.1, 1.0, 5.0}) check("c_t", c_t(t), c_t_quadrature(t));
    for (int n : {1, 2})
        for (double a : {0.25, 0.5, 1.0, 1.5, 2.0}) check("c_alpha_n", c_alpha_n(a, n), c_alpha_n_quadrature(a, n));
}

}  // namespace besov
