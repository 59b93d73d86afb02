#pragma once

#include <functional>

namespace besov {

// C(p) = (E|Z|^p)^{1/p} for a standard normal Z.
double gaussian_moment_constant(double p);
// c_t = arccos(e^{-t}).
double c_t(double t);
// E|Z|^a for Z standard normal in R^n.
double c_alpha_n(double a, int n);
// C(n, alpha) = E|Z|^alpha + E|Z|^{1+alpha} in R^n.
double lebesgue_upper_constant(int n, double alpha);
// Gamma(a/2)^{-1}(2/a) + 2 Gamma(a/2)^{-1}(1-a)^{-1} C(q), a in (0,1).
double embedding_constant(double p, double alpha);
double dual_exponent(double p);

// Independent quadrature evaluations of the same constants.
double gaussian_moment_constant_quadrature(double p);
double c_t_quadrature(double t);
double c_alpha_n_quadrature(double a, int n);

struct GaussianConstants {
    double p = 2.0;
    double Cp = 1.0;
    std::function<double(double)> ct;
    double c_alpha_n = 0.0;
};
GaussianConstants constants(double p, double alpha, int n);

// Compares closed forms with quadrature; throws std::runtime_error on disagreement above tol.
void verify_constants(double tol = 1e-10);

}  // namespace besov
