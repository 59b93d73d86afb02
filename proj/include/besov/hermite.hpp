#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "besov/grid.hpp"

namespace besov {

// Gauss-Hermite rule for the standard normal law: sum_k w_k g(y_k) ~ E g(Z), sum w_k = 1.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(std::size_t n);

// Local Lagrange interpolation weights on an axis; points outside the box take the nearest end value.
struct Stencil {
    std::size_t first = 0;
    std::size_t count = 0;
    double w[8] = {};
};
Stencil interpolation_stencil(const Axis& a, double x);

// Coefficients against the L2(gamma)-orthonormal Hermite basis; 2D arrays are row-major in (n0, n1).
struct HermiteCoeffs {
    int dim = 1;
    std::size_t n0 = 0;  // number of degrees per axis
    std::size_t n1 = 1;
    std::vector<double> c;
    double tail_energy = 0.0;  // ||f||^2 - sum c^2 at projection time

    double at(std::size_t i, std::size_t j = 0) const { return c[i * n1 + j]; }
    double& at(std::size_t i, std::size_t j = 0) { return c[i * n1 + j]; }
    double energy() const;
};

HermiteCoeffs hermite_coeffs_1d(std::vector<double> c);
HermiteCoeffs hermite_project(const GridFunction& f, std::size_t degrees);
GridFunction hermite_synthesize(const HermiteCoeffs& c, const Grid& g);

HermiteCoeffs ou_apply_spectral(const HermiteCoeffs& c, double t);
HermiteCoeffs bessel_potential(const HermiteCoeffs& c, double alpha);
// (sum (1+|n|)^alpha c_n^2)^{1/2}
double sobolev_norm(const HermiteCoeffs& c, double alpha);

void write_hermite_coeffs(std::ostream& os, const HermiteCoeffs& c);
HermiteCoeffs read_hermite_coeffs(std::istream& is);

}  // namespace besov
