#pragma once

#include <optional>
#include <vector>

#include "besov/grid.hpp"
#include "besov/numerics.hpp"
#include "json.hpp"

namespace besov {

// Nonnegative cell masses on a grid.
struct GridMeasure {
    Grid grid;
    std::vector<double> weights;

    GridMeasure() = default;
    GridMeasure(Grid g, std::vector<double> w);
    double total() const;
    int dim() const { return grid.dim(); }
};

// Cell masses of N(0, I) (exact via the normal cdf), normalized to total 1.
GridMeasure gaussian_measure(const Grid& g);
// Cell masses proportional to a nonnegative density, normalized to total 1.
GridMeasure measure_from_density(const GridFunction& density);
// Uniform on [a, b] of axis 0 (1D), cell-exact.
GridMeasure uniform_measure(const Grid& g, double a, double b);
// Unit mass in the cell nearest x.
GridMeasure point_mass(const Grid& g, double x);

double tv_distance(const GridMeasure& mu, const GridMeasure& nu);

// mu_h(A) = mu(A - h): every cell mass moves by h and splits linearly between its two landing cells.
GridMeasure shift_measure(const GridMeasure& mu, Vec2 h);

struct HolderFit {
    double exponent = 0.0;
    double constant = 0.0;  // sup over the fit window of tv / t^a, a = fitted or prescribed
    double constant_alpha = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double residual = 0.0;  // rms of the log-log regression
};

struct HolderProfile {
    SemigroupCurve curve;  // t -> |mu_{th} - mu|_TV
    HolderFit fit;
};

// Fit window drops t with t|h| below 4 cells. The constant uses alpha when given, else the fitted exponent.
HolderProfile holder_profile(const GridMeasure& mu, Vec2 h, const std::vector<double>& t_grid,
                             std::optional<double> alpha = std::nullopt);

// Grid estimate of V^a(mu; h) over t in t_grid: sup tv(mu_{th}, mu) / t^a.
double holder_constant(const GridMeasure& mu, Vec2 h, double alpha, const std::vector<double>& t_grid);

struct MetricReport {
    std::size_t pairs = 0, triples = 0;
    double identity_max = 0.0;      // d(h, h)
    double symmetry_max = 0.0;      // |d(a,b) - d(b,a)|
    double translation_max = 0.0;   // |d(a+g, b+g) - d(a,b)|
    double triangle_worst = 0.0;    // max of d(a,c) - d(a,b) - d(b,c), relative to the right side
    std::size_t triangle_violations = 0;
    double triangle_slack = 0.0;
    bool pass = false;
};

// Checks the metric axioms of d(a,b) = V^a(mu; a - b) on all pairs and triples of h_list.
MetricReport metric_axioms_check(const GridMeasure& mu, const std::vector<Vec2>& h_list, double alpha,
                                 const std::vector<double>& t_grid, double triangle_slack = 1e-3);

nlohmann::json to_json(const MetricReport& r);

struct Slices {
    int shift_axis = 0;
    std::vector<GridMeasure> slices;  // 1D, each normalized (all-zero when the row is empty)
    std::vector<double> marginal;     // row masses along the other axis
    std::vector<double> coords;       // other-axis coordinate of each slice
};

Slices conditional_slices(const GridMeasure& mu, int shift_axis);
// Largest cell-wise |slice * marginal - mu|.
double disintegration_error(const GridMeasure& mu, const Slices& s);

struct ChainingRow {
    std::size_t index = 0;
    double y = 0.0;
    double C = 0.0;      // max_{n <= M} 2^{n b} tv(mu^y_{2^-n}, mu^y)
    double bound = 0.0;  // max{2, C / (1 - 2^-b)}
    double worst_ratio = 0.0;  // max over s of tv / (bound s^b)
    double worst_s = 0.0;
    bool pass = true;
};

struct ChainingReport {
    double beta = 0.0;
    std::size_t depth = 0;
    std::size_t samples = 0;
    double slack = 0.0;
    std::vector<ChainingRow> rows;
    bool pass = true;
};

// s runs over `samples` log-spaced points of [2^-M, 1); empty slices are skipped.
ChainingReport chaining_check(const Slices& slices, double beta, std::size_t depth, std::size_t samples = 50,
                              double slack = 1e-3);

nlohmann::json to_json(const ChainingReport& r);

}  // namespace besov
