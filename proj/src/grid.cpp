#include "besov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace besov {

std::string to_string(Measure m) { return m == Measure::lebesgue ? "lebesgue" : "gaussian"; }

Measure measure_from_string(std::string_view s) {
    if (s == "lebesgue") return Measure::lebesgue;
    if (s == "gaussian") return Measure::gaussian;
    throw std::invalid_argument("unknown measure tag '" + std::string(s) + "'");
}

namespace {

void check_axis(const Axis& a) {
    if (a.n < 3) throw std::invalid_argument("grid axis needs at least 3 nodes");
    if (!(a.hi > a.lo) || !std::isfinite(a.lo) || !std::isfinite(a.hi))
        throw std::invalid_argument("grid axis bounds must satisfy lo < hi");
}

}  // namespace

Grid::Grid(Axis x) : dim_(1), axes_{x, Axis{0.0, 1.0, 1}} { check_axis(x); }

Grid::Grid(Axis x, Axis y) : dim_(2), axes_{x, y} {
    check_axis(x);
    check_axis(y);
}

double Grid::min_step() const { return dim_ == 1 ? step(0) : std::min(step(0), step(1)); }
double Grid::min_side() const { return dim_ == 1 ? axis(0).length() : std::min(axis(0).length(), axis(1).length()); }
double Grid::cell_volume() const { return dim_ == 1 ? step(0) : step(0) * step(1); }

Grid default_grid(int dim) {
    if (dim == 1) return Grid(Axis{-8.0, 8.0, 4097});
    if (dim == 2) return Grid(Axis{-8.0, 8.0, 513}, Axis{-8.0, 8.0, 513});
    throw std::invalid_argument("dimension must be 1 or 2");
}

Grid coarsen(const Grid& g) {
    auto half = [](const Axis& a) {
        if ((a.n - 1) % 2 != 0) throw std::invalid_argument("coarsen: odd number of cells");
        return Axis{a.lo, a.hi, (a.n - 1) / 2 + 1};
    };
    if (g.dim() == 1) return Grid(half(g.axis(0)));
    return Grid(half(g.axis(0)), half(g.axis(1)));
}

GridFunction::GridFunction(Grid grid, Measure measure, std::vector<double> values)
    : grid_(std::move(grid)), measure_(measure), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("sample count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("grid function samples must be finite");
}

GridFunction GridFunction::zeros(const Grid& grid, Measure measure) {
    return GridFunction(grid, measure, std::vector<double>(grid.size(), 0.0));
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    require_same_grid(*this, o, "addition");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    require_same_grid(*this, o, "subtraction");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

VectorFieldGrid::VectorFieldGrid(std::vector<GridFunction> comps) : components(std::move(comps)) {
    if (components.empty()) throw std::invalid_argument("vector field needs components");
    if (static_cast<int>(components.size()) != components.front().dim())
        throw std::invalid_argument("vector field must have one component per dimension");
    for (const auto& c : components) require_same_grid(components.front(), c, "vector field");
}

GridFunction VectorFieldGrid::magnitude() const {
    if (components.size() == 1) {
        GridFunction m = components[0];
        for (double& v : m.values()) v = std::abs(v);
        return m;
    }
    GridFunction m = components[0];
    const auto& b = components[1].values();
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::hypot(m[k], b[k]);
    return m;
}

Direction::Direction(double e0) : dim_(1), e_{e0, 0.0} {
    if (std::abs(std::abs(e0) - 1.0) > 1e-12) throw std::invalid_argument("direction must be a unit vector");
}

Direction::Direction(double e0, double e1) : dim_(2), e_{e0, e1} {
    if (std::abs(std::hypot(e0, e1) - 1.0) > 1e-12) throw std::invalid_argument("direction must be a unit vector");
}

Direction Direction::from_angle(double theta) { return Direction(std::cos(theta), std::sin(theta)); }

Direction Direction::axis(int dim, int i) {
    if (dim == 1) return Direction(1.0);
    return i == 0 ? Direction(1.0, 0.0) : Direction(0.0, 1.0);
}

std::vector<double> axis_weights(const Axis& a, Measure m) {
    std::vector<double> w(a.n, a.step());
    if (m == Measure::gaussian) {
        const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
        for (std::size_t i = 0; i < a.n; ++i) {
            const double x = a.coord(i);
            w[i] *= c * std::exp(-0.5 * x * x);
        }
    }
    return w;
}

namespace {

template <class Op>
double weighted_sum(const GridFunction& f, Op op) {
    const Grid& g = f.grid();
    const auto w0 = axis_weights(g.axis(0), f.measure());
    const auto& v = f.values();
    double total = 0.0;
    if (g.dim() == 1) {
        for (std::size_t i = 0; i < v.size(); ++i) total += w0[i] * op(v[i], i);
        return total;
    }
    const auto w1 = axis_weights(g.axis(1), f.measure());
    const std::size_t n1 = g.n(1);
    for (std::size_t i = 0; i < g.n(0); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n1; ++j) row += w1[j] * op(v[i * n1 + j], i * n1 + j);
        total += w0[i] * row;
    }
    return total;
}

}  // namespace

double integrate(const GridFunction& f) {
    return weighted_sum(f, [](double x, std::size_t) { return x; });
}

double inner(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g, "inner product");
    const auto& gv = g.values();
    return weighted_sum(f, [&](double x, std::size_t k) { return x * gv[k]; });
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p) && p > 0) return max_abs(f);
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: exponent must be >= 1");
    if (p == 1.0) return weighted_sum(f, [](double x, std::size_t) { return std::abs(x); });
    if (p == 2.0) return std::sqrt(weighted_sum(f, [](double x, std::size_t) { return x * x; }));
    const double s = weighted_sum(f, [p](double x, std::size_t) { return std::pow(std::abs(x), p); });
    return std::pow(s, 1.0 / p);
}

double lp_norm(const VectorFieldGrid& v, double p) { return lp_norm(v.magnitude(), p); }

void require_measure(const GridFunction& f, Measure m, std::string_view op) {
    if (f.measure() != m)
        throw std::invalid_argument(std::string(op) + " requires a " + to_string(m) + "-tagged function, got " +
                                    to_string(f.measure()));
}

void require_same_grid(const GridFunction& a, const GridFunction& b, std::string_view op) {
    if (!(a.grid() == b.grid()) || a.measure() != b.measure())
        throw std::invalid_argument(std::string(op) + ": operands live on different grids or measures");
}

double shift_cap(const Grid& g) { return 0.1 * g.min_side(); }

namespace detail {

namespace {

// Calls fn(offset, stride, count) for every grid line along `axis`.
template <class Fn>
void for_each_line(const Grid& g, int axis, Fn&& fn) {
    const std::size_t n0 = g.n(0), n1 = g.n(1);
    if (axis == 0) {
        for (std::size_t j = 0; j < n1; ++j) fn(j, n1, n0);
    } else {
        for (std::size_t i = 0; i < n0; ++i) fn(i * n1, std::size_t{1}, n1);
    }
}

}  // namespace

void convolve_axis(std::span<const double> in, std::span<double> out, const Grid& g, int axis,
                   std::span<const double> kernel) {
    const long hw = static_cast<long>(kernel.size() / 2);
    for_each_line(g, axis, [&](std::size_t off, std::size_t stride, std::size_t count) {
        const long n = static_cast<long>(count);
        for (long i = 0; i < n; ++i) {
            const long lo = std::max(-hw, i - (n - 1));
            const long hi = std::min(hw, i);
            double acc = 0.0;
            for (long m = lo; m <= hi; ++m)
                acc += kernel[static_cast<std::size_t>(m + hw)] * in[off + static_cast<std::size_t>(i - m) * stride];
            out[off + static_cast<std::size_t>(i) * stride] = acc;
        }
    });
}

void translate_axis(std::span<const double> in, std::span<double> out, const Grid& g, int axis, double cells) {
    // value at node i is the interpolant at i - cells
    const double base = std::floor(-cells);
    const long m0 = static_cast<long>(base);
    const double r = -cells - base;
    for_each_line(g, axis, [&](std::size_t off, std::size_t stride, std::size_t count) {
        const long n = static_cast<long>(count);
        auto get = [&](long k) { return (k < 0 || k >= n) ? 0.0 : in[off + static_cast<std::size_t>(k) * stride]; };
        for (long i = 0; i < n; ++i) {
            const double a = get(i + m0);
            const double b = r == 0.0 ? 0.0 : get(i + m0 + 1);
            out[off + static_cast<std::size_t>(i) * stride] = (1.0 - r) * a + r * b;
        }
    });
}

}  // namespace detail

GridFunction translate(const GridFunction& f, const Vec2& h) {
    if (f.dim() == 1 && h[1] != 0.0) throw std::invalid_argument("shift: second component must be 0 in 1D");
    GridFunction out = f;
    std::vector<double> tmp(f.size());
    const Grid& g = f.grid();
    for (int ax = 0; ax < g.dim(); ++ax) {
        const double cells = h[static_cast<std::size_t>(ax)] / g.step(ax);
        if (cells == 0.0) continue;
        detail::translate_axis(out.values(), tmp, g, ax, cells);
        out.values().swap(tmp);
    }
    return out;
}

GridFunction shift(const GridFunction& f, const Vec2& h) {
    require_measure(f, Measure::lebesgue, "shift");
    const double len = std::hypot(h[0], h[1]);
    const double cap = shift_cap(f.grid());
    if (len > cap * (1.0 + 1e-12))
        throw std::invalid_argument("shift: |h| = " + std::to_string(len) + " exceeds the cap " + std::to_string(cap));
    return translate(f, h);
}

GridFunction partial(const GridFunction& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("partial: axis out of range");
    GridFunction out = GridFunction::zeros(g, f.measure());
    const double inv2d = 1.0 / (2.0 * g.step(axis));
    const auto& in = f.values();
    auto& o = out.values();
    const std::size_t n0 = g.n(0), n1 = g.n(1);
    const std::size_t count = axis == 0 ? n0 : n1;
    const std::size_t stride = axis == 0 ? n1 : 1;
    const std::size_t lines = axis == 0 ? n1 : n0;
    for (std::size_t l = 0; l < lines; ++l) {
        const std::size_t off = axis == 0 ? l : l * n1;
        auto at = [&](std::size_t k) { return in[off + k * stride]; };
        o[off] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2d;
        for (std::size_t k = 1; k + 1 < count; ++k) o[off + k * stride] = (at(k + 1) - at(k - 1)) * inv2d;
        const std::size_t e = count - 1;
        o[off + e * stride] = (3.0 * at(e) - 4.0 * at(e - 1) + at(e - 2)) * inv2d;
    }
    return out;
}

GridFunction directional_derivative(const GridFunction& f, const Direction& e) {
    if (e.dim() != f.dim()) throw std::invalid_argument("directional_derivative: dimension mismatch");
    GridFunction out = partial(f, 0);
    if (f.dim() == 1) return e[0] * out;
    out *= e[0];
    if (e[1] != 0.0) out += e[1] * partial(f, 1);
    return out;
}

GridFunction divergence(const VectorFieldGrid& v) {
    GridFunction out = partial(v.components[0], 0);
    for (int i = 1; i < v.dim(); ++i) out += partial(v.components[static_cast<std::size_t>(i)], i);
    return out;
}

GridFunction divergence_gamma(const VectorFieldGrid& v) {
    require_measure(v.components[0], Measure::gaussian, "divergence_gamma");
    GridFunction out = divergence(v);
    const Grid& g = v.grid();
    auto& o = out.values();
    for (std::size_t i = 0; i < g.n(0); ++i) {
        const double x = g.axis(0).coord(i);
        for (std::size_t j = 0; j < g.n(1); ++j) {
            const std::size_t k = g.index(i, j);
            o[k] -= x * v.components[0][k];
            if (g.dim() == 2) o[k] -= g.axis(1).coord(j) * v.components[1][k];
        }
    }
    return out;
}

VectorFieldGrid gradient(const GridFunction& f) {
    std::vector<GridFunction> c;
    for (int i = 0; i < f.dim(); ++i) c.push_back(partial(f, i));
    return VectorFieldGrid(std::move(c));
}

GridFunction smooth(const GridFunction& f, const Vec2& sigma) {
    GridFunction out = f;
    std::vector<double> tmp(f.size());
    const Grid& g = f.grid();
    for (int ax = 0; ax < g.dim(); ++ax) {
        const double s = sigma[static_cast<std::size_t>(ax)];
        if (s <= 0.0) continue;
        const double d = g.step(ax);
        const long hw = static_cast<long>(std::ceil(8.0 * s / d));
        std::vector<double> k(static_cast<std::size_t>(2 * hw + 1));
        double sum = 0.0;
        for (long m = -hw; m <= hw; ++m) {
            const double x = static_cast<double>(m) * d;
            sum += k[static_cast<std::size_t>(m + hw)] = std::exp(-0.5 * x * x / (s * s));
        }
        for (double& w : k) w /= sum;
        detail::convolve_axis(out.values(), tmp, g, ax, k);
        out.values().swap(tmp);
    }
    return out;
}

GridFunction subsample(const GridFunction& f) {
    const Grid& g = f.grid();
    const Grid c = coarsen(g);
    std::vector<double> v(c.size());
    for (std::size_t i = 0; i < c.n(0); ++i)
        for (std::size_t j = 0; j < c.n(1); ++j)
            v[c.index(i, j)] = f.values()[g.index(2 * i, g.dim() == 2 ? 2 * j : 0)];
    return GridFunction(c, f.measure(), std::move(v));
}

GridFunction zero_pad(const GridFunction& f) {
    require_measure(f, Measure::lebesgue, "zero_pad");
    const Grid& g = f.grid();
    std::array<std::size_t, 2> off{};
    std::array<Axis, 2> ax{};
    for (int a = 0; a < g.dim(); ++a) {
        const Axis& x = g.axis(a);
        if ((x.n - 1) % 2 != 0) throw std::invalid_argument("zero_pad: needs an even number of cells per axis");
        off[static_cast<std::size_t>(a)] = (x.n - 1) / 2;
        ax[static_cast<std::size_t>(a)] = Axis{x.lo - 0.5 * x.length(), x.hi + 0.5 * x.length(), 2 * x.n - 1};
    }
    const Grid p = g.dim() == 1 ? Grid(ax[0]) : Grid(ax[0], ax[1]);
    GridFunction out = GridFunction::zeros(p, Measure::lebesgue);
    for (std::size_t i = 0; i < g.n(0); ++i)
        for (std::size_t j = 0; j < g.n(1); ++j)
            out.values()[p.index(i + off[0], g.dim() == 2 ? j + off[1] : 0)] = f.at(i, j);
    return out;
}

}  // namespace besov
