#pragma once

#include <functional>
#include <string>
#include <vector>

#include "besov/grid.hpp"
#include "json.hpp"

namespace besov {

// f(x,y) = 1_[0,2pi](x) sum_{k_start <= k <= N} sin(kx) k^{-a} sqrt(ln k) 1_{J_k}(y), |J_k| = 1/(k ln k),
// J_k placed end to end and wrapped modulo 1.
struct CounterexampleSpec {
    double alpha = 0.5;
    std::size_t N = 1000;
    std::size_t k_start = 2;
    std::vector<double> placements;  // L_k for k = k_start..N

    double length(std::size_t k) const;       // |J_k|
    double amplitude(std::size_t k) const;    // k^{-a} sqrt(ln k)
    double left(std::size_t k) const { return placements.at(k - k_start); }
    bool covers(std::size_t k, double y) const;
};

// Validates and fills the deterministic placements.
CounterexampleSpec make_counterexample_spec(double alpha, std::size_t N, std::size_t k_start = 2);

nlohmann::json to_json(const CounterexampleSpec& s);

// [0, 2pi] x [0, 1], 513 nodes per axis.
Grid counterexample_grid();

struct Counterexample {
    GridFunction f;
    double l2_norm_sq = 0.0;  // pi sum_k k^{-2a-1}, exact for the truncated sum
    double tail_energy = 0.0;  // sum_{k > N} |f_k|_2^2
};

Counterexample build_counterexample(const CounterexampleSpec& spec, const Grid& grid);

// The row x -> f(x, y) sampled on an axis; the axis must contain [0, 2pi].
GridFunction counterexample_slice(const CounterexampleSpec& spec, double y, const Axis& x_axis);

// Indices k with y in J_k.
std::vector<std::size_t> covering_indices(const CounterexampleSpec& spec, double y);
// Sum of |J_k| over the truncation.
double total_length(const CounterexampleSpec& spec);

// a_k(y) = int_0^{2pi} sin(kx) f(x,y) dx for k = 1..k_max, on the row nearest y (or on a 1D slice).
// Needs nodes at x = 0 and x = 2pi and k_max <= (nodes in [0,2pi]) / 8.
std::vector<double> slice_coefficients(const GridFunction& f, double y, std::size_t k_max);

struct BlowupProfile {
    double value = 0.0;  // max_k k^a a_k(y)
    std::size_t argmax = 0;
};
BlowupProfile slice_blowup_profile(const GridFunction& f, double y, double alpha, std::size_t k_max);

struct SliceBlowupRow {
    double y = 0.0;
    std::size_t N = 0;
    std::size_t k_star = 0;  // largest index covering y, 0 when uncovered
    double value = 0.0;      // max_k k^a a_k(y), k <= N
    std::size_t argmax = 0;
    double expected = 0.0;   // pi sqrt(ln k_star)
};

// y_j = (j + 1/2) / y_samples; each row is sampled exactly on a 2^m + 1 node axis with 2^m >= 8 max(N_list).
// Rows are ordered by y, then N.
std::vector<SliceBlowupRow> slice_blowup_study(double alpha, const std::vector<std::size_t>& N_list,
                                               std::size_t y_samples, std::size_t k_start = 2);

// phi(x,y) = a(x) b(y) with a' given; a and b are evaluated only on [0,2pi] and [0,1] plus their sup norms.
struct SeparableTestField {
    std::string name;
    std::function<double(double)> a, da, b;
    double a_sup = 0.0, da_sup = 0.0, b_sup = 0.0;
};

// Smooth bumps and bumps modulated up to frequency nx/8, crossed with bumps in y.
std::vector<SeparableTestField> default_test_family(std::size_t nx = 513);

// int int d_x phi f dx dy / (|phi|_inf^a |d_x phi|_inf^{1-a}) for the truncation N' <= spec.N.
double directional_quotient(const CounterexampleSpec& spec, std::size_t N, const SeparableTestField& phi);

struct DirectionalScanRow {
    std::size_t N = 0;
    double max_quotient = 0.0;
    std::string argmax;
};
std::vector<DirectionalScanRow> directional_bound_scan(const CounterexampleSpec& spec,
                                                       const std::vector<SeparableTestField>& family,
                                                       const std::vector<std::size_t>& N_list);

}  // namespace besov
