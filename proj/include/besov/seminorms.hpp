#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "besov/grid.hpp"

namespace besov {

struct ShiftSample {
    Vec2 h;
    double quotient;
};

struct BesovEstimate {
    double value = 0.0;
    Vec2 witness_h{0.0, 0.0};
    double p = 1.0;
    double alpha = 1.0;
    std::string kind = "shift";  // or "directional"
    bool cap_limited = false;    // argmax sits on the largest admissible magnitude
    std::vector<ShiftSample> profile;
};

// |h|^{-alpha} ||f_h - f||_p
double shift_quotient(const GridFunction& f, double p, double alpha, const Vec2& h);

// `count` log-spaced magnitudes in [4 delta, cap] along one direction in 1D and `directions` angles in [0, pi) in 2D.
std::vector<Vec2> default_shift_grid(const Grid& g, std::size_t count = 40, std::size_t directions = 8);
std::vector<double> default_shift_magnitudes(const Grid& g, std::size_t count = 40);

BesovEstimate besov_seminorm(const GridFunction& f, double p, double alpha, const std::vector<Vec2>& h_grid);
BesovEstimate directional_seminorm(const GridFunction& f, double p, double alpha, const Direction& e,
                                   const std::vector<double>& t_grid);

struct QuotientWitness {
    VectorFieldGrid field;
    std::optional<GridFunction> scalar;  // set for the directional form
    std::optional<Direction> direction;
    double p = 1.0;
    double alpha = 1.0;
    double quotient = 0.0;
    double numerator = 0.0;
    double norm_field = 0.0;
    double norm_div = 0.0;
    std::string construction;
    std::uint64_t seed = 0;
};

// Integration-by-parts quotient; the divergence is div or div_gamma according to the tag of f.
QuotientWitness v_quotient(const GridFunction& f, const VectorFieldGrid& field, double p, double alpha);
QuotientWitness v_quotient(const GridFunction& f, const GridFunction& phi, const Direction& e, double p, double alpha);

// Witness built from the near-dual function of f_h - f and psi(x) = int_0^{|h|} phi(x + s e) ds.
QuotientWitness psi_witness(const GridFunction& f, double p, double alpha, const Vec2& h);

struct WitnessOptions {
    int budget = 20;
    std::uint64_t seed = 20240611;
    std::vector<Vec2> h_grid;          // empty: default shift grid
    std::vector<double> dual_times{1e-3, 1e-2, 1e-1, 1.0};
    std::size_t top_shifts_2d = 6;
    int restarts = 3;
    bool use_psi = true;
    bool use_fourier = true;
    bool use_dual = true;
};

// Best witness over the proof construction, seeded Fourier fields and semigroup-dual fields.
QuotientWitness v_lower_bound(const GridFunction& f, double p, double alpha, int budget);
QuotientWitness v_lower_bound(const GridFunction& f, double p, double alpha, const WitnessOptions& opt);

// Integral of |F| with F the Gaussian-weighted antiderivative of a zero-mean f.
double kantorovich_norm_1d(const GridFunction& f);

}  // namespace besov
