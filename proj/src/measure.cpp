#include "besov/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace besov {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Cell masses of N(0,1) on one axis; cells are centred on the nodes.
std::vector<double> axis_gaussian(const Axis& a) {
    std::vector<double> w(a.n);
    const double h = 0.5 * a.step();
    for (std::size_t i = 0; i < a.n; ++i) w[i] = normal_cdf(a.coord(i) + h) - normal_cdf(a.coord(i) - h);
    return w;
}

void normalize(std::vector<double>& w) {
    double t = 0.0;
    for (double v : w) t += v;
    if (!(t > 0.0)) throw std::invalid_argument("measure has no mass");
    for (double& v : w) v /= t;
}

void require_same_grid(const GridMeasure& a, const GridMeasure& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("measures live on different grids");
}

// Landing cell and fraction for a shift of `cells` cells.
struct Split {
    long base;
    double frac;
};
Split split(double cells) {
    const double fl = std::floor(cells);
    double frac = cells - fl;
    if (frac < 1e-12) frac = 0.0;
    if (frac > 1.0 - 1e-12) return {static_cast<long>(fl) + 1, 0.0};
    return {static_cast<long>(fl), frac};
}

}  // namespace

GridMeasure::GridMeasure(Grid g, std::vector<double> w) : grid(std::move(g)), weights(std::move(w)) {
    if (weights.size() != grid.size()) throw std::invalid_argument("measure weights do not match the grid");
    for (double v : weights)
        if (!(v >= 0.0)) throw std::invalid_argument("measure weights must be nonnegative");
}

double GridMeasure::total() const {
    double t = 0.0;
    for (double v : weights) t += v;
    return t;
}

GridMeasure gaussian_measure(const Grid& g) {
    const auto w0 = axis_gaussian(g.axis(0));
    std::vector<double> w(g.size());
    if (g.dim() == 1) {
        w = w0;
    } else {
        const auto w1 = axis_gaussian(g.axis(1));
        for (std::size_t i = 0; i < g.n(0); ++i)
            for (std::size_t j = 0; j < g.n(1); ++j) w[g.index(i, j)] = w0[i] * w1[j];
    }
    normalize(w);
    return GridMeasure(g, std::move(w));
}

GridMeasure measure_from_density(const GridFunction& density) {
    std::vector<double> w = density.values();
    for (double v : w)
        if (!(v >= 0.0)) throw std::invalid_argument("measure_from_density: density must be nonnegative");
    normalize(w);
    return GridMeasure(density.grid(), std::move(w));
}

GridMeasure uniform_measure(const Grid& g, double a, double b) {
    if (g.dim() != 1 || !(b > a)) throw std::invalid_argument("uniform_measure: needs a 1D grid and a < b");
    const Axis& ax = g.axis(0);
    const double h = 0.5 * ax.step();
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < ax.n; ++i) w[i] = std::max(0.0, std::min(ax.coord(i) + h, b) - std::max(ax.coord(i) - h, a));
    normalize(w);
    return GridMeasure(g, std::move(w));
}

GridMeasure point_mass(const Grid& g, double x) {
    if (g.dim() != 1) throw std::invalid_argument("point_mass: needs a 1D grid");
    const Axis& ax = g.axis(0);
    const double u = std::round((x - ax.lo) / ax.step());
    if (u < 0.0 || u > static_cast<double>(ax.n - 1)) throw std::invalid_argument("point_mass: x outside the grid");
    std::vector<double> w(g.size(), 0.0);
    w[static_cast<std::size_t>(u)] = 1.0;
    return GridMeasure(g, std::move(w));
}

double tv_distance(const GridMeasure& mu, const GridMeasure& nu) {
    require_same_grid(mu, nu);
    double s = 0.0;
    for (std::size_t k = 0; k < mu.weights.size(); ++k) s += std::abs(mu.weights[k] - nu.weights[k]);
    return s;
}

GridMeasure shift_measure(const GridMeasure& mu, Vec2 h) {
    const Grid& g = mu.grid;
    const Split s0 = split(h[0] / g.step(0));
    const Split s1 = g.dim() == 2 ? split(h[1] / g.step(1)) : Split{0, 0.0};
    const long n0 = static_cast<long>(g.n(0)), n1 = static_cast<long>(g.n(1));
    std::vector<double> out(g.size(), 0.0);
    auto put = [&](long i, long j, double m) {
        if (m != 0.0 && i >= 0 && i < n0 && j >= 0 && j < n1) out[g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))] += m;
    };
    for (long i = 0; i < n0; ++i)
        for (long j = 0; j < n1; ++j) {
            const double m = mu.weights[g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
            if (m == 0.0) continue;
            const long a = i + s0.base, b = j + s1.base;
            put(a, b, m * (1.0 - s0.frac) * (1.0 - s1.frac));
            put(a + 1, b, m * s0.frac * (1.0 - s1.frac));
            put(a, b + 1, m * (1.0 - s0.frac) * s1.frac);
            put(a + 1, b + 1, m * s0.frac * s1.frac);
        }
    GridMeasure r;
    r.grid = g;
    r.weights = std::move(out);
    return r;
}

double holder_constant(const GridMeasure& mu, Vec2 h, double alpha, const std::vector<double>& t_grid) {
    double c = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("holder_constant: t must be positive");
        c = std::max(c, tv_distance(shift_measure(mu, {t * h[0], t * h[1]}), mu) / std::pow(t, alpha));
    }
    return c;
}

HolderProfile holder_profile(const GridMeasure& mu, Vec2 h, const std::vector<double>& t_grid, std::optional<double> alpha) {
    const double hl = std::hypot(h[0], h[1]);
    if (!(hl > 0.0)) throw std::invalid_argument("holder_profile: h must be nonzero");
    HolderProfile p;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("holder_profile: t must be positive");
        p.curve.push(t, tv_distance(shift_measure(mu, {t * h[0], t * h[1]}), mu));
    }
    const double floor_t = 4.0 * mu.grid.min_step() / hl;
    std::vector<double> lx, ly, ts;
    for (std::size_t i = 0; i < p.curve.size(); ++i)
        if (p.curve.t[i] >= floor_t * (1.0 - 1e-12) && p.curve.value[i] > 0.0) {
            lx.push_back(std::log(p.curve.t[i]));
            ly.push_back(std::log(p.curve.value[i]));
            ts.push_back(p.curve.t[i]);
        }
    if (lx.size() < 2) throw std::invalid_argument("holder_profile: fewer than two usable t above 4 cells");
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i] / n;
        my += ly[i] / n;
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    HolderFit& f = p.fit;
    f.exponent = sxy / sxx;
    const double icpt = my - f.exponent * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) rss += std::pow(ly[i] - icpt - f.exponent * lx[i], 2);
    f.residual = std::sqrt(rss / n);
    f.t_lo = ts.front();
    f.t_hi = ts.back();
    f.constant_alpha = alpha.value_or(f.exponent);
    for (std::size_t i = 0; i < lx.size(); ++i) f.constant = std::max(f.constant, std::exp(ly[i]) / std::pow(ts[i], f.constant_alpha));
    return p;
}

MetricReport metric_axioms_check(const GridMeasure& mu, const std::vector<Vec2>& h_list, double alpha,
                                 const std::vector<double>& t_grid, double triangle_slack) {
    auto d = [&](Vec2 a, Vec2 b) { return holder_constant(mu, {a[0] - b[0], a[1] - b[1]}, alpha, t_grid); };
    const std::size_t m = h_list.size();
    std::vector<double> D(m * m);
    MetricReport r;
    r.triangle_slack = triangle_slack;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) D[i * m + j] = d(h_list[i], h_list[j]);
    const Vec2 g{0.37 * mu.grid.step(0), mu.grid.dim() == 2 ? -0.21 * mu.grid.step(1) : 0.0};
    for (std::size_t i = 0; i < m; ++i) {
        r.identity_max = std::max(r.identity_max, D[i * m + i]);
        for (std::size_t j = i + 1; j < m; ++j) {
            ++r.pairs;
            r.symmetry_max = std::max(r.symmetry_max, std::abs(D[i * m + j] - D[j * m + i]));
            const Vec2 a{h_list[i][0] + g[0], h_list[i][1] + g[1]}, b{h_list[j][0] + g[0], h_list[j][1] + g[1]};
            r.translation_max = std::max(r.translation_max, std::abs(d(a, b) - D[i * m + j]));
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                if (i == j || j == k || i == k) continue;
                ++r.triples;
                const double rhs = D[i * m + j] + D[j * m + k];
                const double excess = D[i * m + k] - rhs;
                if (rhs > 0.0) r.triangle_worst = std::max(r.triangle_worst, excess / rhs);
                if (excess > triangle_slack * rhs) ++r.triangle_violations;
            }
    r.pass = r.identity_max == 0.0 && r.symmetry_max <= 1e-8 && r.translation_max <= 1e-8 && r.triangle_violations == 0;
    return r;
}

nlohmann::json to_json(const MetricReport& r) {
    return {{"pairs", r.pairs},
            {"triples", r.triples},
            {"identity_max", r.identity_max},
            {"symmetry_max", r.symmetry_max},
            {"translation_max", r.translation_max},
            {"triangle_worst_relative_excess", r.triangle_worst},
            {"triangle_violations", r.triangle_violations},
            {"triangle_slack", r.triangle_slack},
            {"pass", r.pass}};
}

Slices conditional_slices(const GridMeasure& mu, int shift_axis) {
    if (mu.dim() != 2) throw std::invalid_argument("conditional_slices needs a 2D measure");
    if (shift_axis != 0 && shift_axis != 1) throw std::invalid_argument("conditional_slices: axis must be 0 or 1");
    const Grid& g = mu.grid;
    const int other = 1 - shift_axis;
    const Grid line(g.axis(shift_axis));
    Slices s;
    s.shift_axis = shift_axis;
    for (std::size_t r = 0; r < g.n(other); ++r) {
        std::vector<double> w(g.n(shift_axis));
        double tot = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] = shift_axis == 0 ? mu.weights[g.index(i, r)] : mu.weights[g.index(r, i)];
            tot += w[i];
        }
        if (tot > 0.0)
            for (double& v : w) v /= tot;
        s.marginal.push_back(tot);
        s.coords.push_back(g.axis(other).coord(r));
        s.slices.emplace_back(line, std::move(w));
    }
    return s;
}

double disintegration_error(const GridMeasure& mu, const Slices& s) {
    const Grid& g = mu.grid;
    double e = 0.0;
    for (std::size_t r = 0; r < s.slices.size(); ++r)
        for (std::size_t i = 0; i < s.slices[r].weights.size(); ++i) {
            const double m = s.shift_axis == 0 ? mu.weights[g.index(i, r)] : mu.weights[g.index(r, i)];
            e = std::max(e, std::abs(s.slices[r].weights[i] * s.marginal[r] - m));
        }
    return e;
}

ChainingReport chaining_check(const Slices& slices, double beta, std::size_t depth, std::size_t samples, double slack) {
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("chaining_check: beta must lie in (0,1]");
    if (depth == 0 || samples == 0) throw std::invalid_argument("chaining_check: depth and samples must be positive");
    ChainingReport rep;
    rep.beta = beta;
    rep.depth = depth;
    rep.samples = samples;
    rep.slack = slack;
    const double lo = std::ldexp(1.0, -static_cast<int>(depth));
    for (std::size_t r = 0; r < slices.slices.size(); ++r) {
        const GridMeasure& mu = slices.slices[r];
        if (!(mu.total() > 0.0)) continue;
        ChainingRow row;
        row.index = r;
        row.y = r < slices.coords.size() ? slices.coords[r] : static_cast<double>(r);
        for (std::size_t n = 0; n <= depth; ++n) {
            const double t = std::ldexp(1.0, -static_cast<int>(n));
            row.C = std::max(row.C, std::pow(2.0, static_cast<double>(n) * beta) * tv_distance(shift_measure(mu, {t, 0.0}), mu));
        }
        row.bound = std::max(2.0, row.C / (1.0 - std::pow(2.0, -beta)));
        for (std::size_t i = 0; i < samples; ++i) {
            // log-spaced in [2^-M, 1)
            const double s = lo * std::pow(1.0 / lo, (static_cast<double>(i) + 0.5) / static_cast<double>(samples));
            const double ratio = tv_distance(shift_measure(mu, {s, 0.0}), mu) / (row.bound * std::pow(s, beta));
            if (ratio > row.worst_ratio) {
                row.worst_ratio = ratio;
                row.worst_s = s;
            }
        }
        row.pass = row.worst_ratio <= 1.0 + slack;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

nlohmann::json to_json(const ChainingReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"index", row.index},
                        {"y", row.y},
                        {"C", row.C},
                        {"bound", row.bound},
                        {"worst_ratio", row.worst_ratio},
                        {"worst_s", row.worst_s},
                        {"pass", row.pass}});
    return {{"beta", r.beta}, {"depth", r.depth}, {"samples", r.samples}, {"slack", r.slack}, {"pass", r.pass}, {"rows", rows}};
}

}  // namespace besov
