#pragma once

#include <vector>

#include "besov/grid.hpp"
#include "besov/numerics.hpp"

namespace besov {

// 64 log-spaced times in [1e-4, 1e2].
std::vector<double> default_t_grid();

GridFunction heat_apply(const GridFunction& f, double t);
VectorFieldGrid heat_gradient(const GridFunction& f, double t);

struct HeatState {
    GridFunction value;
    VectorFieldGrid gradient;
};
// P_t f and its gradient from one pass over the data.
HeatState heat_state(const GridFunction& f, double t);

// sup_t t^{(1-alpha)/2} ||grad P_t f||_p over the t-grid (a lower bound for the true sup).
SupEstimate u_functional(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid);
// Same, with golden-section refinement around the grid argmax.
SupEstimate u_functional_refined(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid);

// ||f - P_t f||_p and ||grad P_t f||_p for every t and every requested p.
struct SemigroupProfile {
    std::vector<double> t;
    std::vector<double> ps;
    std::vector<std::vector<double>> deviation;  // [p index][t index]
    std::vector<std::vector<double>> grad_norm;
    std::size_t p_index(double p) const;
};
SemigroupProfile heat_profile(const GridFunction& f, const std::vector<double>& t_grid, const std::vector<double>& ps);

// Refined U reusing the gradient norms already held in a profile of f.
SupEstimate u_functional_refined(const GridFunction& f, double p, double alpha, const SemigroupProfile& prof);

}  // namespace besov
