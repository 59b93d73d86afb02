#include "besov/ou.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "besov/hermite.hpp"

namespace besov {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_ou_args(const GridFunction& f, double t) {
    require_measure(f, Measure::gaussian, "ou semigroup");
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("ou semigroup: t must be positive");
}

constexpr std::size_t kContinuationDegree = 20;

// Interpolant through grid nodes near the Chebyshev-Lobatto points of the axis.
// Data that is a polynomial of degree <= 20 is continued exactly past the box; other data keeps the end value.
class Continuation {
public:
    explicit Continuation(const Axis& a) {
        const std::size_t d = kContinuationDegree;
        for (std::size_t k = 0; k <= d; ++k) {
            const double c = std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
            const double u = 0.5 * (1.0 - c) * static_cast<double>(a.n - 1);
            idx_.push_back(static_cast<std::size_t>(std::lround(u)));
        }
        for (std::size_t k = 0; k <= d; ++k) x_.push_back(a.coord(idx_[k]));
        // barycentric weights, rescaled to the half-length to stay in range
        const double r = 0.5 * a.length();
        for (std::size_t k = 0; k <= d; ++k) {
            double w = 1.0;
            for (std::size_t j = 0; j <= d; ++j)
                if (j != k) w *= (x_[k] - x_[j]) / r;
            bw_.push_back(1.0 / w);
        }
    }

    std::size_t size() const { return idx_.size(); }
    std::size_t node(std::size_t k) const { return idx_[k]; }

    using Basis = std::array<double, kContinuationDegree + 1>;

    // Lagrange basis values at x.
    Basis basis(double x) const {
        Basis l{};
        for (std::size_t k = 0; k < l.size(); ++k)
            if (x == x_[k]) {
                l[k] = 1.0;
                return l;
            }
        double den = 0.0;
        for (std::size_t k = 0; k < l.size(); ++k) {
            l[k] = bw_[k] / (x - x_[k]);
            den += l[k];
        }
        for (double& v : l) v /= den;
        return l;
    }

private:
    std::vector<std::size_t> idx_;
    std::vector<double> x_, bw_;
};

// Whether the grid data is reproduced by its tensor interpolant at every node.
bool is_polynomial(const GridFunction& f) {
    const Grid& g = f.grid();
    const double scale = max_abs(f);
    if (scale == 0.0) return true;
    const Continuation c0(g.axis(0));
    std::vector<Continuation::Basis> L0(g.n(0));
    for (std::size_t i = 0; i < g.n(0); ++i) L0[i] = c0.basis(g.axis(0).coord(i));
    const double tol = 1e-9 * scale;
    if (g.dim() == 1) {
        for (std::size_t i = 0; i < g.n(0); ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < c0.size(); ++k) v += L0[i][k] * f[c0.node(k)];
            if (std::abs(v - f[i]) > tol) return false;
        }
        return true;
    }
    const Continuation c1(g.axis(1));
    // A[k][j] = interpolant along axis 1 of row node(k)
    std::vector<std::vector<double>> A(c0.size(), std::vector<double>(g.n(1), 0.0));
    for (std::size_t j = 0; j < g.n(1); ++j) {
        const auto l1 = c1.basis(g.axis(1).coord(j));
        for (std::size_t k = 0; k < c0.size(); ++k) {
            double v = 0.0;
            for (std::size_t m = 0; m < c1.size(); ++m) v += l1[m] * f.at(c0.node(k), c1.node(m));
            A[k][j] = v;
        }
    }
    for (std::size_t i = 0; i < g.n(0); ++i)
        for (std::size_t j = 0; j < g.n(1); ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < c0.size(); ++k) v += L0[i][k] * A[k][j];
            if (std::abs(v - f.at(i, j)) > tol) return false;
        }
    return true;
}

// Calls fn(column, weight) for the linear functional "value of the data at x".
template <class Fn>
void point_rule(const Axis& a, double x, const Continuation* cont, Fn&& fn) {
    if (cont && (x < a.lo || x > a.hi)) {
        const auto l = cont->basis(x);
        for (std::size_t k = 0; k < l.size(); ++k) fn(cont->node(k), l[k]);
        return;
    }
    const Stencil st = interpolation_stencil(a, x);
    for (std::size_t m = 0; m < st.count; ++m) fn(st.first + m, st.w[m]);
}

// Nodes whose weight cannot matter even against degree-20 growth.
bool negligible(const GaussHermiteRule& r, std::size_t k) {
    return r.weights[k] * std::pow(1.0 + std::abs(r.nodes[k]), static_cast<double>(kContinuationDegree)) < 1e-20;
}

// Mehler average along one axis: fn(i, column, value weight, gradient weight).
template <class Fn>
void mehler_rows(const Axis& a, double t, const GaussHermiteRule& r, const Continuation* cont, Fn&& fn) {
    const double decay = std::exp(-t);
    const double s = std::sqrt(-std::expm1(-2.0 * t));
    const double gscale = decay / s;
    for (std::size_t i = 0; i < a.n; ++i) {
        const double x = decay * a.coord(i);
        for (std::size_t k = 0; k < r.nodes.size(); ++k) {
            if (negligible(r, k)) continue;
            const double wv = r.weights[k];
            const double wg = gscale * r.weights[k] * r.nodes[k];
            point_rule(a, x + s * r.nodes[k], cont, [&](std::size_t j, double w) { fn(i, j, wv * w, wg * w); });
        }
    }
}

struct DenseOps {
    RowMat value;
    RowMat slope;
};

DenseOps dense_ops(const Axis& a, double t, const GaussHermiteRule& r, const Continuation* cont) {
    const long n = static_cast<long>(a.n);
    DenseOps d{RowMat::Zero(n, n), RowMat::Zero(n, n)};
    mehler_rows(a, t, r, cont, [&](std::size_t i, std::size_t j, double wv, double wg) {
        d.value(static_cast<long>(i), static_cast<long>(j)) += wv;
        d.slope(static_cast<long>(i), static_cast<long>(j)) += wg;
    });
    return d;
}

}  // namespace

OuState ou_state(const GridFunction& f, double t, std::size_t nodes) {
    check_ou_args(f, t);
    const Grid& g = f.grid();
    const GaussHermiteRule r = gauss_hermite(nodes);
    const bool poly = is_polynomial(f);
    if (g.dim() == 1) {
        std::vector<double> v(g.size(), 0.0), d(g.size(), 0.0);
        const auto& in = f.values();
        const std::optional<Continuation> c0 = poly ? std::optional<Continuation>(g.axis(0)) : std::nullopt;
        mehler_rows(g.axis(0), t, r, c0 ? &*c0 : nullptr, [&](std::size_t i, std::size_t j, double wv, double wg) {
            v[i] += wv * in[j];
            d[i] += wg * in[j];
        });
        return {GridFunction(g, f.measure(), std::move(v)), VectorFieldGrid({GridFunction(g, f.measure(), std::move(d))})};
    }
    const std::optional<Continuation> c0 = poly ? std::optional<Continuation>(g.axis(0)) : std::nullopt;
    const std::optional<Continuation> c1 = poly ? std::optional<Continuation>(g.axis(1)) : std::nullopt;
    const DenseOps o0 = dense_ops(g.axis(0), t, r, c0 ? &*c0 : nullptr);
    const DenseOps o1 = g.axis(1) == g.axis(0) ? o0 : dense_ops(g.axis(1), t, r, c1 ? &*c1 : nullptr);
    const long n0 = static_cast<long>(g.n(0)), n1 = static_cast<long>(g.n(1));
    Eigen::Map<const RowMat> F(f.values().data(), n0, n1);
    const RowMat A = F * o1.value.transpose();
    const RowMat B = F * o1.slope.transpose();
    std::vector<double> v(g.size()), d0(g.size()), d1(g.size());
    Eigen::Map<RowMat>(v.data(), n0, n1).noalias() = o0.value * A;
    Eigen::Map<RowMat>(d0.data(), n0, n1).noalias() = o0.slope * A;
    Eigen::Map<RowMat>(d1.data(), n0, n1).noalias() = o0.value * B;
    return {GridFunction(g, f.measure(), std::move(v)),
            VectorFieldGrid({GridFunction(g, f.measure(), std::move(d0)), GridFunction(g, f.measure(), std::move(d1))})};
}

GridFunction ou_apply(const GridFunction& f, double t, std::size_t nodes) { return ou_state(f, t, nodes).value; }

VectorFieldGrid ou_gradient(const GridFunction& f, double t, std::size_t nodes) { return ou_state(f, t, nodes).gradient; }

VectorFieldGrid ou_apply(const VectorFieldGrid& v, double t) {
    std::vector<GridFunction> c;
    for (const auto& comp : v.components) c.push_back(ou_apply(comp, t));
    return VectorFieldGrid(std::move(c));
}

namespace {

double u_gamma_value(const GridFunction& f, double p, double alpha, double t) {
    return std::pow(t, 0.5 * (1.0 - alpha)) * lp_norm(ou_gradient(f, t), p);
}

}  // namespace

SupEstimate u_gamma_functional(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("u_gamma_functional: empty t grid");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("u_gamma_functional: alpha must lie in (0,1]");
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("u_gamma_functional: p must lie in [1, inf)");
    SupEstimate out;
    for (double t : t_grid) out.curve.push(t, u_gamma_value(f, p, alpha, t));
    const std::size_t k = out.curve.argmax();
    out.value = out.curve.value[k];
    out.argmax = out.curve.t[k];
    return out;
}

SupEstimate u_gamma_functional_refined(const GridFunction& f, double p, double alpha, const std::vector<double>& t_grid) {
    const SupEstimate coarse = u_gamma_functional(f, p, alpha, t_grid);
    return refine_sup(coarse.curve, [&](double t) { return u_gamma_value(f, p, alpha, t); }, true);
}

SupEstimate u_gamma_functional_refined(const GridFunction& f, double p, double alpha, const SemigroupProfile& prof) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("u_gamma_functional: alpha must lie in (0,1]");
    const auto& g = prof.grad_norm[prof.p_index(p)];
    SemigroupCurve curve;
    for (std::size_t i = 0; i < prof.t.size(); ++i) curve.push(prof.t[i], std::pow(prof.t[i], 0.5 * (1.0 - alpha)) * g[i]);
    return refine_sup(curve, [&](double t) { return u_gamma_value(f, p, alpha, t); }, true);
}

SemigroupProfile ou_profile(const GridFunction& f, const std::vector<double>& t_grid, const std::vector<double>& ps) {
    SemigroupProfile pr;
    pr.t = t_grid;
    pr.ps = ps;
    pr.deviation.assign(ps.size(), {});
    pr.grad_norm.assign(ps.size(), {});
    for (double t : t_grid) {
        const OuState s = ou_state(f, t);
        const GridFunction diff = f - s.value;
        const GridFunction mag = s.gradient.magnitude();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            pr.deviation[i].push_back(lp_norm(diff, ps[i]));
            pr.grad_norm[i].push_back(lp_norm(mag, ps[i]));
        }
    }
    return pr;
}

GridFunction conditional_expectation(const GridFunction& f, int kept_axis) {
    require_measure(f, Measure::gaussian, "conditional_expectation");
    if (f.dim() != 2) throw std::invalid_argument("conditional_expectation needs a 2D function");
    if (kept_axis != 0 && kept_axis != 1) throw std::invalid_argument("conditional_expectation: kept axis must be 0 or 1");
    const Grid& g = f.grid();
    const int dropped = 1 - kept_axis;
    const Axis& da = g.axis(dropped);
    const GaussHermiteRule r = gauss_hermite(kDefaultHermiteNodes);
    const std::optional<Continuation> cont = is_polynomial(f) ? std::optional<Continuation>(da) : std::nullopt;
    std::vector<double> row(da.n, 0.0);
    for (std::size_t k = 0; k < r.nodes.size(); ++k)
        point_rule(da, r.nodes[k], cont ? &*cont : nullptr, [&](std::size_t j, double w) { row[j] += r.weights[k] * w; });
    const Axis& ka = g.axis(kept_axis);
    std::vector<double> out(ka.n, 0.0);
    for (std::size_t i = 0; i < ka.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < da.n; ++j) s += row[j] * (kept_axis == 0 ? f.at(i, j) : f.at(j, i));
        out[i] = s;
    }
    return GridFunction(Grid(ka), Measure::gaussian, std::move(out));
}

}  // namespace besov
