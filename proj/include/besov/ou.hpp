#pragma once

#include <vector>

#include "besov/grid.hpp"
#include "besov/heat.hpp"
#include "besov/numerics.hpp"

namespace besov {

inline constexpr std::size_t kDefaultHermiteNodes = 128;

GridFunction ou_apply(const GridFunction& f, double t, std::size_t nodes = kDefaultHermiteNodes);
VectorFieldGrid ou_gradient(const GridFunction& f, double t, std::size_t nodes = kDefaultHermiteNodes);

struct OuState {
    GridFunction value;
    VectorFieldGrid gradient;
};
OuState ou_state(const GridFunction& f, double t, std::size_t nodes = kDefaultHermiteNodes);

// T_t applied to each component of a field.
VectorFieldGrid ou_apply(const VectorFieldGrid& v, double t);

SupEstimate u_gamma_functional(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid);
SupEstimate u_gamma_functional_refined(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid);

SemigroupProfile ou_profile(const GridFunction& f, const std::vector<double>& t_grid, const std::vector<double>& ps);
// Refined U_gamma reusing the gradient norms of an ou_profile of f.
SupEstimate u_gamma_functional_refined(const GridFunction& f, double p, double alpha, const SemigroupProfile& prof);

// Gaussian average over the dropped axis of a 2D Gaussian-tagged function.
GridFunction conditional_expectation(const GridFunction& f, int kept_axis);

}  // namespace besov
