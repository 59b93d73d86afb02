#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "besov/grid.hpp"

namespace besov {

// Named test functions. The dimension follows the grid passed in.
//   lebesgue: zero, indicator, hat (1D), gauss_bump, weierstrass(a[,J]) (1D)
//   gaussian: one, x, hermite(n) (1D), hermite(n1,n2), xy, x+y^2 (2D)
GridFunction build_corpus(std::string_view name, const Grid& grid);

Measure corpus_measure(std::string_view name);

// Largest alpha for which the named function lies in the L^p Besov class with a finite seminorm.
double corpus_alpha_limit(std::string_view name, double p);

bool corpus_supports_dim(std::string_view name, int dim);

// Normalized probabilists' Hermite polynomial He_n / sqrt(n!).
double hermite_normalized(int n, double x);

struct CorpusName {
    std::string base;
    std::vector<double> args;
};
CorpusName parse_corpus_name(std::string_view name);

}  // namespace besov
