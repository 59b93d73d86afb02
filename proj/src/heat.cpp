#include "besov/heat.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace besov {

std::vector<double> default_t_grid() { return log_grid(1e-4, 1e2, 64); }

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Kernels {
    std::vector<double> value;  // sampled heat kernel times cell width, unit mass
    std::vector<double> slope;  // sampled kernel derivative, exact on linear data
};

Kernels heat_kernels(double t, double d, std::size_t n) {
    // Normalization runs over the full 8-sigma support; only offsets inside the box are kept.
    const long full = static_cast<long>(std::ceil(8.0 * std::sqrt(t) / d));
    const long hw = std::min(full, static_cast<long>(n) - 1);
    double mass = 0.0, moment = 0.0;
    for (long m = -full; m <= full; ++m) {
        const double x = static_cast<double>(m) * d;
        const double w = std::exp(-0.5 * x * x / t);
        mass += w;
        moment += x * x / t * w;
    }
    Kernels k;
    k.value.resize(static_cast<std::size_t>(2 * hw + 1));
    k.slope.resize(k.value.size());
    for (long m = -hw; m <= hw; ++m) {
        const double x = static_cast<double>(m) * d;
        const double w = std::exp(-0.5 * x * x / t);
        k.value[static_cast<std::size_t>(m + hw)] = w / mass;
        k.slope[static_cast<std::size_t>(m + hw)] = -x / t * w / moment;
    }
    return k;
}

RowMat toeplitz(const std::vector<double>& kernel, std::size_t n) {
    const long hw = static_cast<long>(kernel.size() / 2);
    RowMat m = RowMat::Zero(static_cast<long>(n), static_cast<long>(n));
    for (long i = 0; i < static_cast<long>(n); ++i)
        for (long l = std::max(0L, i - hw); l <= std::min(static_cast<long>(n) - 1, i + hw); ++l)
            m(i, l) = kernel[static_cast<std::size_t>(i - l + hw)];
    return m;
}

// Convolution along one axis; wide kernels in 2D go through a dense Toeplitz product.
std::vector<double> apply_axis(const std::vector<double>& in, const Grid& g, int axis, const std::vector<double>& kernel) {
    std::vector<double> out(in.size());
    if (g.dim() == 1 || kernel.size() <= 129) {
        detail::convolve_axis(in, out, g, axis, kernel);
        return out;
    }
    const long n0 = static_cast<long>(g.n(0)), n1 = static_cast<long>(g.n(1));
    Eigen::Map<const RowMat> F(in.data(), n0, n1);
    Eigen::Map<RowMat> O(out.data(), n0, n1);
    if (axis == 0)
        O.noalias() = toeplitz(kernel, g.n(0)) * F;
    else
        O.noalias() = F * toeplitz(kernel, g.n(1)).transpose();
    return out;
}

void check_heat_args(const GridFunction& f, double t) {
    require_measure(f, Measure::lebesgue, "heat semigroup");
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("heat semigroup: t must be positive");
}

}  // namespace

HeatState heat_state(const GridFunction& f, double t) {
    check_heat_args(f, t);
    const Grid& g = f.grid();
    const Kernels k0 = heat_kernels(t, g.step(0), g.n(0));
    if (g.dim() == 1) {
        GridFunction v(g, f.measure(), apply_axis(f.values(), g, 0, k0.value));
        GridFunction d(g, f.measure(), apply_axis(f.values(), g, 0, k0.slope));
        return {std::move(v), VectorFieldGrid({std::move(d)})};
    }
    const Kernels k1 = heat_kernels(t, g.step(1), g.n(1));
    const auto a = apply_axis(f.values(), g, 1, k1.value);
    const auto b = apply_axis(f.values(), g, 1, k1.slope);
    GridFunction v(g, f.measure(), apply_axis(a, g, 0, k0.value));
    GridFunction d0(g, f.measure(), apply_axis(a, g, 0, k0.slope));
    GridFunction d1(g, f.measure(), apply_axis(b, g, 0, k0.value));
    return {std::move(v), VectorFieldGrid({std::move(d0), std::move(d1)})};
}

GridFunction heat_apply(const GridFunction& f, double t) {
    check_heat_args(f, t);
    const Grid& g = f.grid();
    std::vector<double> v = apply_axis(f.values(), g, 0, heat_kernels(t, g.step(0), g.n(0)).value);
    if (g.dim() == 2) v = apply_axis(v, g, 1, heat_kernels(t, g.step(1), g.n(1)).value);
    return GridFunction(g, f.measure(), std::move(v));
}

VectorFieldGrid heat_gradient(const GridFunction& f, double t) { return heat_state(f, t).gradient; }

namespace {

double u_value(const GridFunction& f, double p, double alpha, double t) {
    return std::pow(t, 0.5 * (1.0 - alpha)) * lp_norm(heat_gradient(f, t), p);
}

void check_u_args(double p, double alpha, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("u_functional: empty t grid");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("u_functional: alpha must lie in (0,1]");
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("u_functional: p must lie in [1, inf)");
}

}  // namespace

SupEstimate u_functional(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid) {
    check_u_args(p, alpha, t_grid);
    SupEstimate out;
    for (double t : t_grid) out.curve.push(t, u_value(f, p, alpha, t));
    const std::size_t k = out.curve.argmax();
    out.value = out.curve.value[k];
    out.argmax = out.curve.t[k];
    return out;
}

SupEstimate u_functional_refined(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid) {
    const SupEstimate coarse = u_functional(f, p, alpha, t_grid);
    return refine_sup(coarse.curve, [&](double t) { return u_value(f, p, alpha, t); }, true);
}

SupEstimate u_functional_refined(const GridFunction& f, double p, double alpha, const SemigroupProfile& prof) {
    check_u_args(p, alpha, prof.t);
    const auto& g = prof.grad_norm[prof.p_index(p)];
    SemigroupCurve curve;
    for (std::size_t i = 0; i < prof.t.size(); ++i) curve.push(prof.t[i], std::pow(prof.t[i], 0.5 * (1.0 - alpha)) * g[i]);
    return refine_sup(curve, [&](double t) { return u_value(f, p, alpha, t); }, true);
}

std::size_t SemigroupProfile::p_index(double p) const {
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (ps[i] == p) return i;
    throw std::invalid_argument("profile was not computed for the requested p");
}

SemigroupProfile heat_profile(const GridFunction& f, const std::vector<double>& t_grid, const std::vector<double>& ps) {
    SemigroupProfile pr;
    pr.t = t_grid;
    pr.ps = ps;
    pr.deviation.assign(ps.size(), {});
    pr.grad_norm.assign(ps.size(), {});
    for (double t : t_grid) {
        const HeatState s = heat_state(f, t);
        const GridFunction diff = f - s.value;
        const GridFunction mag = s.gradient.magnitude();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            pr.deviation[i].push_back(lp_norm(diff, ps[i]));
            pr.grad_norm[i].push_back(lp_norm(mag, ps[i]));
        }
    }
    return pr;
}

}  // namespace besov
