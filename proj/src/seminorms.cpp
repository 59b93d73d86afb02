#include "besov/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "besov/constants.hpp"
#include "besov/numerics.hpp"

namespace besov {

double shift_quotient(const GridFunction& f, double p, double alpha, const Vec2& h) {
    const double len = std::hypot(h[0], h[1]);
    if (len == 0.0) throw std::invalid_argument("shift quotient needs h != 0");
    return lp_norm(shift(f, h) - f, p) / std::pow(len, alpha);
}

std::vector<double> default_shift_magnitudes(const Grid& g, std::size_t count) {
    return log_grid(4.0 * g.min_step(), shift_cap(g), count);
}

std::vector<Vec2> default_shift_grid(const Grid& g, std::size_t count, std::size_t directions) {
    const auto mags = default_shift_magnitudes(g, count);
    std::vector<Vec2> out;
    if (g.dim() == 1) {
        for (double m : mags) out.push_back({m, 0.0});
        return out;
    }
    for (std::size_t k = 0; k < directions; ++k) {
        const double th = std::numbers::pi * static_cast<double>(k) / static_cast<double>(directions);
        const double c = std::cos(th), s = std::sin(th);
        for (double m : mags) out.push_back({m * c, m * s});
    }
    return out;
}

namespace {

void check_params(double p, double alpha) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("p must lie in [1, inf)");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
}

BesovEstimate sup_over_shifts(const GridFunction& f, double p, double alpha, const std::vector<Vec2>& h_grid) {
    require_measure(f, Measure::lebesgue, "besov seminorm");
    check_params(p, alpha);
    if (h_grid.empty()) throw std::invalid_argument("besov seminorm: empty shift grid");
    BesovEstimate est;
    est.p = p;
    est.alpha = alpha;
    std::size_t best = 0;
    for (std::size_t k = 0; k < h_grid.size(); ++k) {
        const double q = shift_quotient(f, p, alpha, h_grid[k]);
        est.profile.push_back({h_grid[k], q});
        if (q > est.profile[best].quotient) best = k;
    }
    est.value = est.profile[best].quotient;
    est.witness_h = h_grid[best];

    // neighbours of the argmax along its own ray
    const Vec2 hb = h_grid[best];
    const double lb = std::hypot(hb[0], hb[1]);
    double below = lb, above = lb;
    bool has_larger = false;
    for (const Vec2& h : h_grid) {
        const double l = std::hypot(h[0], h[1]);
        const double cross = h[0] * hb[1] - h[1] * hb[0];
        const double dot = h[0] * hb[0] + h[1] * hb[1];
        if (dot <= 0.0 || std::abs(cross) > 1e-12 * l * lb) continue;
        if (l < lb && (below == lb || l > below)) below = l;
        if (l > lb && (!has_larger || l < above)) {
            above = l;
            has_larger = true;
        }
    }
    est.cap_limited = !has_larger && lb >= shift_cap(f.grid()) * (1.0 - 1e-12);
    if (below < above) {
        const Vec2 e{hb[0] / lb, hb[1] / lb};
        auto fn = [&](double m) { return shift_quotient(f, p, alpha, {m * e[0], m * e[1]}); };
        const ScalarMax m = golden_max(fn, below, above, true, 24);
        if (m.value > est.value) {
            est.value = m.value;
            est.witness_h = {m.x * e[0], m.x * e[1]};
            est.value = shift_quotient(f, p, alpha, est.witness_h);
        }
    }
    return est;
}

}  // namespace

BesovEstimate besov_seminorm(const GridFunction& f, double p, double alpha, const std::vector<Vec2>& h_grid) {
    return sup_over_shifts(f, p, alpha, h_grid);
}

BesovEstimate directional_seminorm(const GridFunction& f, double p, double alpha, const Direction& e,
                                   const std::vector<double>& t_grid) {
    if (e.dim() != f.dim()) throw std::invalid_argument("directional seminorm: dimension mismatch");
    std::vector<Vec2> hs;
    for (double t : t_grid) {
        if (t == 0.0) continue;
        hs.push_back({t * e[0], t * e[1]});
    }
    BesovEstimate est = sup_over_shifts(f, p, alpha, hs);
    est.kind = "directional";
    return est;
}

namespace {

QuotientWitness finish_quotient(const GridFunction& f, VectorFieldGrid field, double p, double alpha) {
    require_same_grid(f, field.components.front(), "v_quotient");
    if (field.dim() != f.dim()) throw std::invalid_argument("v_quotient: field dimension mismatch");
    const GridFunction div = f.measure() == Measure::gaussian ? divergence_gamma(field) : divergence(field);
    const double q = dual_exponent(p);
    QuotientWitness w;
    w.p = p;
    w.alpha = alpha;
    w.numerator = inner(div, f);
    w.norm_field = lp_norm(field, q);
    w.norm_div = lp_norm(div, q);
    if (!(w.norm_div > 1e-10)) throw std::invalid_argument("v_quotient: divergence of the test field vanishes");
    w.quotient = w.numerator / (std::pow(w.norm_field, alpha) * std::pow(w.norm_div, 1.0 - alpha));
    w.field = std::move(field);
    return w;
}

}  // namespace

QuotientWitness v_quotient(const GridFunction& f, const VectorFieldGrid& field, double p, double alpha) {
    check_params(p, alpha);
    return finish_quotient(f, field, p, alpha);
}

QuotientWitness v_quotient(const GridFunction& f, const GridFunction& phi, const Direction& e, double p, double alpha) {
    check_params(p, alpha);
    if (e.dim() != f.dim()) throw std::invalid_argument("v_quotient: direction dimension mismatch");
    std::vector<GridFunction> comps;
    for (int i = 0; i < f.dim(); ++i) comps.push_back(e[i] * phi);
    QuotientWitness w = finish_quotient(f, VectorFieldGrid(std::move(comps)), p, alpha);
    w.scalar = phi;
    w.direction = e;
    return w;
}

double kantorovich_norm_1d(const GridFunction& f) {
    require_measure(f, Measure::gaussian, "kantorovich_norm_1d");
    if (f.dim() != 1) throw std::invalid_argument("kantorovich_norm_1d is defined in one dimension only");
    const double mean = integrate(f);
    if (std::abs(mean) > 1e-8) throw std::invalid_argument("kantorovich_norm_1d needs a zero-mean function");
    const Axis& a = f.grid().axis(0);
    const auto w = axis_weights(a, Measure::gaussian);
    // F at the centre of cell i: full mass of the cells to the left plus half of its own
    double acc = 0.0, total = 0.0;
    for (std::size_t i = 0; i < a.n; ++i) {
        const double m = w[i] * f[i];
        total += std::abs(acc + 0.5 * m) * a.step();
        acc += m;
    }
    return total;
}

}  // namespace besov
