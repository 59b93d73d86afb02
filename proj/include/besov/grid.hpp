#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace besov {

inline constexpr const char* kVersion = "0.3.1";

enum class Measure { lebesgue, gaussian };

std::string to_string(Measure m);
Measure measure_from_string(std::string_view s);

using Vec2 = std::array<double, 2>;

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 2;

    double step() const { return (hi - lo) / static_cast<double>(n - 1); }
    double coord(std::size_t i) const { return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1); }
    double length() const { return hi - lo; }
    bool operator==(const Axis&) const = default;
};

// Uniform 1D or 2D tensor grid. Samples are row-major: index = i0 * n1 + i1.
class Grid {
public:
    Grid() : Grid(Axis{-8.0, 8.0, 4097}) {}
    explicit Grid(Axis x);
    Grid(Axis x, Axis y);

    int dim() const { return dim_; }
    const Axis& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
    std::size_t n(int i) const { return i < dim_ ? axes_[static_cast<std::size_t>(i)].n : 1; }
    std::size_t size() const { return n(0) * n(1); }
    double step(int i) const { return axis(i).step(); }
    double min_step() const;
    double min_side() const;
    double cell_volume() const;
    std::size_t index(std::size_t i0, std::size_t i1 = 0) const { return i0 * n(1) + i1; }
    bool operator==(const Grid&) const = default;

private:
    int dim_ = 1;
    std::array<Axis, 2> axes_{};
};

Grid default_grid(int dim);
// Every other node; requires an even number of cells per axis.
Grid coarsen(const Grid& g);

class GridFunction {
public:
    GridFunction() = default;
    GridFunction(Grid grid, Measure measure, std::vector<double> values);
    static GridFunction zeros(const Grid& grid, Measure measure);

    const Grid& grid() const { return grid_; }
    Measure measure() const { return measure_; }
    int dim() const { return grid_.dim(); }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double at(std::size_t i0, std::size_t i1 = 0) const { return values_[grid_.index(i0, i1)]; }

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double c);

private:
    Grid grid_{};
    Measure measure_ = Measure::lebesgue;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

struct VectorFieldGrid {
    std::vector<GridFunction> components;

    VectorFieldGrid() = default;
    explicit VectorFieldGrid(std::vector<GridFunction> comps);
    const Grid& grid() const { return components.front().grid(); }
    Measure measure() const { return components.front().measure(); }
    int dim() const { return static_cast<int>(components.size()); }
    // Pointwise Euclidean length.
    GridFunction magnitude() const;
};

class Direction {
public:
    explicit Direction(double e0);
    Direction(double e0, double e1);
    static Direction from_angle(double theta) ;
    static Direction axis(int dim, int i);

    int dim() const { return dim_; }
    double operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    const Vec2& vec() const { return e_; }

private:
    int dim_;
    Vec2 e_;
};

// Quadrature weight of each node along one axis (cell width times density).
std::vector<double> axis_weights(const Axis& a, Measure m);

double integrate(const GridFunction& f);
double inner(const GridFunction& f, const GridFunction& g);
double lp_norm(const GridFunction& f, double p);
double lp_norm(const VectorFieldGrid& v, double p);
double max_abs(const GridFunction& f);

void require_measure(const GridFunction& f, Measure m, std::string_view op);
void require_same_grid(const GridFunction& a, const GridFunction& b, std::string_view op);

double shift_cap(const Grid& g);
// f(x - h) by (bi)linear interpolation, zero outside the box. Lebesgue only, |h| capped.
GridFunction shift(const GridFunction& f, const Vec2& h);
// Same interpolation without tag or cap checks.
GridFunction translate(const GridFunction& f, const Vec2& h);

GridFunction partial(const GridFunction& f, int axis);
GridFunction directional_derivative(const GridFunction& f, const Direction& e);
GridFunction divergence(const VectorFieldGrid& v);
GridFunction divergence_gamma(const VectorFieldGrid& v);
VectorFieldGrid gradient(const GridFunction& f);

// Separable Gaussian smoothing with per-axis standard deviation, zero extension.
GridFunction smooth(const GridFunction& f, const Vec2& sigma);

// Restriction to every other node.
GridFunction subsample(const GridFunction& f);

// Zero extension onto a box of twice the side with the same step (n -> 2n - 1 per axis). Lebesgue only.
GridFunction zero_pad(const GridFunction& f);

template <class F>
GridFunction sample(const Grid& g, Measure m, F&& fn) {
    std::vector<double> v(g.size());
    const Axis& a0 = g.axis(0);
    if (g.dim() == 1) {
        for (std::size_t i = 0; i < a0.n; ++i) v[i] = fn(a0.coord(i), 0.0);
    } else {
        const Axis& a1 = g.axis(1);
        for (std::size_t i = 0; i < a0.n; ++i)
            for (std::size_t j = 0; j < a1.n; ++j) v[g.index(i, j)] = fn(a0.coord(i), a1.coord(j));
    }
    return GridFunction(g, m, std::move(v));
}

namespace detail {
// out[i] = sum_m w[m + hw] * in[i - m] along one axis, zero outside.
void convolve_axis(std::span<const double> in, std::span<double> out, const Grid& g, int axis,
                   std::span<const double> kernel);
void translate_axis(std::span<const double> in, std::span<double> out, const Grid& g, int axis, double cells);
}  // namespace detail

}  // namespace besov
