#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "besov/constants.hpp"
#include "besov/heat.hpp"
#include "besov/io.hpp"
#include "besov/ou.hpp"
#include "besov/seminorms.hpp"

namespace besov {

namespace {

// sign(g)|g|^{p-1} / ||g||_p^{p-1}
GridFunction near_dual(const GridFunction& g, double p) {
    GridFunction phi = g;
    if (p == 1.0) {
        for (double& v : phi.values()) v = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        return phi;
    }
    const double n = lp_norm(g, p);
    const double scale = std::pow(n, p - 1.0);
    for (double& v : phi.values()) v = std::copysign(std::pow(std::abs(v), p - 1.0), v) / scale;
    return phi;
}

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

// Smooth cutoff equal to 1 on the inner 70% of each axis and 0 on the outer 10%.
GridFunction box_window(const Grid& g, Measure m) {
    auto one = [](const Axis& a, double x) {
        const double c = 0.5 * (a.lo + a.hi), r = 0.5 * a.length();
        const double u = std::abs(x - c) / r;
        return 1.0 - smooth_step((u - 0.7) / 0.2);
    };
    return sample(g, m, [&](double x, double y) { return one(g.axis(0), x) * (g.dim() == 2 ? one(g.axis(1), y) : 1.0); });
}

GridFunction clip_dual(GridFunction phi, double p) {
    const double q = dual_exponent(p);
    if (std::isinf(q)) {
        for (double& v : phi.values()) v = std::clamp(v, -1.0, 1.0);
        return phi;
    }
    const double n = lp_norm(phi, q);
    if (n > 1.0) phi *= 1.0 / n;
    return phi;
}

// psi(x) = int_0^L phi(x + s e) ds
GridFunction integrate_along(const GridFunction& phi, const Vec2& e, double L) {
    const Grid& g = phi.grid();
    if (g.dim() == 1) {
        const double d = g.step(0);
        const std::size_t n = g.n(0);
        std::vector<double> A(n, 0.0);
        for (std::size_t i = 1; i < n; ++i) A[i] = A[i - 1] + 0.5 * d * (phi[i - 1] + phi[i]);
        auto Aat = [&](double u) {
            if (u <= 0.0) return 0.0;
            if (u >= static_cast<double>(n - 1)) return A[n - 1];
            const auto k = static_cast<std::size_t>(std::floor(u));
            const double r = u - static_cast<double>(k);
            return (1.0 - r) * A[k] + r * A[std::min(k + 1, n - 1)];
        };
        const double off = e[0] * L / d;
        GridFunction psi = GridFunction::zeros(g, phi.measure());
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(i);
            psi[i] = e[0] > 0 ? Aat(u + off) - Aat(u) : Aat(u) - Aat(u + off);
        }
        return psi;
    }
    std::size_t m = 2 * static_cast<std::size_t>(std::ceil(L / g.min_step()));
    m = std::max<std::size_t>(m, 2);
    const double hs = L / static_cast<double>(m);
    GridFunction psi = GridFunction::zeros(g, phi.measure());
    for (std::size_t k = 0; k <= m; ++k) {
        const double w = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        const double s = hs * static_cast<double>(k);
        psi += (w * hs / 3.0) * translate(phi, {-s * e[0], -s * e[1]});
    }
    return psi;
}

}  // namespace

QuotientWitness psi_witness(const GridFunction& f, double p, double alpha, const Vec2& h) {
    const GridFunction diff = shift(f, h) - f;
    if (lp_norm(diff, p) == 0.0) throw std::invalid_argument("psi witness: f_h - f vanishes");
    const Grid& g = f.grid();
    const Vec2 sigma{2.0 * g.step(0), g.dim() == 2 ? 2.0 * g.step(1) : 0.0};
    const GridFunction phi = clip_dual(smooth(near_dual(diff, p), sigma), p);
    const double L = std::hypot(h[0], h[1]);
    const Vec2 e{h[0] / L, h[1] / L};
    const GridFunction psi = integrate_along(phi, e, L);
    const Direction dir = g.dim() == 1 ? Direction(e[0] > 0 ? 1.0 : -1.0) : Direction(e[0], e[1]);
    QuotientWitness w = v_quotient(f, psi, dir, p, alpha);
    if (w.quotient < 0.0) w = v_quotient(f, -1.0 * psi, dir, p, alpha);
    w.construction = "psi h=(" + format_double(h[0]) + "," + format_double(h[1]) + ")";
    return w;
}

namespace {

// One separable term of the field: component c equals fx(x) fy(y); its divergence is dx(x) dy(y).
struct Term {
    int comp = 0;
    std::vector<double> fx, fy, dx, dy;
};

struct FourierBasis {
    Grid grid;
    Measure measure;
    std::vector<Term> terms;
};

std::vector<double> mode_values(const Axis& a, double lo, double hi, int k) {
    std::vector<double> v(a.n, 0.0);
    for (std::size_t i = 0; i < a.n; ++i) {
        const double x = a.coord(i);
        if (x <= lo || x >= hi) continue;
        v[i] = std::sin(std::numbers::pi * k * (x - lo) / (hi - lo));
    }
    return v;
}

std::vector<double> axis_derivative(const Axis& a, const std::vector<double>& v) {
    const GridFunction gf(Grid(a), Measure::lebesgue, v);
    return partial(gf, 0).values();
}

std::vector<double> times_x(const Axis& a, std::vector<double> v) {
    for (std::size_t i = 0; i < a.n; ++i) v[i] *= a.coord(i);
    return v;
}

std::vector<double> minus(std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

// Interval carrying the random fields along one axis.
std::pair<double, double> support_interval(const GridFunction& f, int axis) {
    const Grid& g = f.grid();
    const Axis& a = g.axis(axis);
    const double margin = 4.0 * a.step();
    if (f.measure() == Measure::gaussian) return {std::max(a.lo + margin, -5.0), std::min(a.hi - margin, 5.0)};
    const double thr = 1e-6 * max_abs(f);
    double lo = a.hi, hi = a.lo;
    for (std::size_t i = 0; i < g.n(0); ++i)
        for (std::size_t j = 0; j < g.n(1); ++j) {
            if (std::abs(f.at(i, j)) <= thr) continue;
            const double x = a.coord(axis == 0 ? i : j);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (lo > hi) {
        lo = -1.0;
        hi = 1.0;
    }
    return {std::max(a.lo + margin, lo - 1.0), std::min(a.hi - margin, hi + 1.0)};
}

FourierBasis fourier_basis(const GridFunction& f, const Grid& g, int modes) {
    FourierBasis b{g, f.measure(), {}};
    const bool gauss = f.measure() == Measure::gaussian;
    std::vector<std::pair<double, double>> box;
    for (int ax = 0; ax < g.dim(); ++ax) box.push_back(support_interval(f, ax));
    if (g.dim() == 1) {
        const Axis& a = g.axis(0);
        for (int k = 1; k <= modes; ++k) {
            Term t;
            t.fx = mode_values(a, box[0].first, box[0].second, k);
            t.dx = axis_derivative(a, t.fx);
            if (gauss) t.dx = minus(t.dx, times_x(a, t.fx));
            t.fy = t.dy = {1.0};
            b.terms.push_back(std::move(t));
        }
        return b;
    }
    const Axis& a0 = g.axis(0);
    const Axis& a1 = g.axis(1);
    for (int c = 0; c < 2; ++c)
        for (int i = 1; i <= modes; ++i)
            for (int j = 1; j <= modes; ++j) {
                Term t;
                t.comp = c;
                t.fx = mode_values(a0, box[0].first, box[0].second, i);
                t.fy = mode_values(a1, box[1].first, box[1].second, j);
                if (c == 0) {
                    t.dx = axis_derivative(a0, t.fx);
                    if (gauss) t.dx = minus(t.dx, times_x(a0, t.fx));
                    t.dy = t.fy;
                } else {
                    t.dx = t.fx;
                    t.dy = axis_derivative(a1, t.fy);
                    if (gauss) t.dy = minus(t.dy, times_x(a1, t.fy));
                }
                b.terms.push_back(std::move(t));
            }
    return b;
}

VectorFieldGrid assemble(const FourierBasis& b, const std::vector<double>& coef) {
    const Grid& g = b.grid;
    std::vector<GridFunction> comps(static_cast<std::size_t>(g.dim()), GridFunction::zeros(g, b.measure));
    for (std::size_t k = 0; k < b.terms.size(); ++k) {
        const Term& t = b.terms[k];
        auto& v = comps[static_cast<std::size_t>(t.comp)].values();
        for (std::size_t i = 0; i < g.n(0); ++i)
            for (std::size_t j = 0; j < g.n(1); ++j) v[g.index(i, j)] += coef[k] * t.fx[i] * t.fy[g.dim() == 2 ? j : 0];
    }
    return VectorFieldGrid(std::move(comps));
}

// Quotient evaluator with incremental single-coefficient trials.
class FourierSearch {
public:
    FourierSearch(const FourierBasis& b, const GridFunction& f, double p, double alpha)
        : b_(b), p_(p), q_(dual_exponent(p)), alpha_(alpha) {
        const Grid& g = b.grid;
        const auto w0 = axis_weights(g.axis(0), b.measure);
        const auto w1 = g.dim() == 2 ? axis_weights(g.axis(1), b.measure) : std::vector<double>{1.0};
        w_.resize(g.size());
        for (std::size_t i = 0; i < g.n(0); ++i)
            for (std::size_t j = 0; j < g.n(1); ++j) w_[g.index(i, j)] = w0[i] * w1[g.dim() == 2 ? j : 0];
        for (const Term& t : b.terms) {
            double s = 0.0;
            for (std::size_t i = 0; i < g.n(0); ++i)
                for (std::size_t j = 0; j < g.n(1); ++j) {
                    const std::size_t k = g.index(i, j);
                    s += w_[k] * f[k] * t.dx[i] * t.dy[g.dim() == 2 ? j : 0];
                }
            num_k_.push_back(s);
        }
    }

    void reset(const std::vector<double>& coef) {
        coef_ = coef;
        const Grid& g = b_.grid;
        F_.assign(static_cast<std::size_t>(g.dim()), std::vector<double>(g.size(), 0.0));
        D_.assign(g.size(), 0.0);
        for (std::size_t k = 0; k < coef.size(); ++k) add(k, coef[k], F_, D_);
        value_ = evaluate(F_, D_, numerator());
    }

    double value() const { return value_; }
    const std::vector<double>& coef() const { return coef_; }

    // Quotient after coef[k] += delta, without committing.
    double trial(std::size_t k, double delta) {
        tF_ = F_;
        tD_ = D_;
        add(k, delta, tF_, tD_);
        return evaluate(tF_, tD_, numerator() + delta * num_k_[k]);
    }

    void commit(std::size_t k, double delta) {
        add(k, delta, F_, D_);
        coef_[k] += delta;
        value_ = evaluate(F_, D_, numerator());
    }

    void negate() {
        for (double& c : coef_) c = -c;
        reset(coef_);
    }

private:
    double numerator() const {
        double s = 0.0;
        for (std::size_t k = 0; k < coef_.size(); ++k) s += coef_[k] * num_k_[k];
        return s;
    }

    void add(std::size_t k, double delta, std::vector<std::vector<double>>& F, std::vector<double>& D) const {
        if (delta == 0.0) return;
        const Grid& g = b_.grid;
        const Term& t = b_.terms[k];
        auto& Fc = F[static_cast<std::size_t>(t.comp)];
        for (std::size_t i = 0; i < g.n(0); ++i) {
            const double fx = delta * t.fx[i], dx = delta * t.dx[i];
            if (fx == 0.0 && dx == 0.0) continue;
            for (std::size_t j = 0; j < g.n(1); ++j) {
                const std::size_t jj = g.dim() == 2 ? j : 0;
                const std::size_t idx = g.index(i, j);
                Fc[idx] += fx * t.fy[jj];
                D[idx] += dx * t.dy[jj];
            }
        }
    }

    double qnorm(const std::vector<double>& v) const {
        if (std::isinf(q_)) {
            double m = 0.0;
            for (double x : v) m = std::max(m, std::abs(x));
            return m;
        }
        double s = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) s += w_[k] * std::pow(std::abs(v[k]), q_);
        return std::pow(s, 1.0 / q_);
    }

    double evaluate(const std::vector<std::vector<double>>& F, const std::vector<double>& D, double num) const {
        std::vector<double> mag = F[0];
        if (F.size() == 2)
            for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::hypot(F[0][k], F[1][k]);
        const double nf = qnorm(mag), nd = qnorm(D);
        if (!(nd > 1e-10) || !(nf > 0.0)) return -INFINITY;
        return num / (std::pow(nf, alpha_) * std::pow(nd, 1.0 - alpha_));
    }

    const FourierBasis& b_;
    double p_, q_, alpha_;
    std::vector<double> w_, num_k_, coef_;
    std::vector<std::vector<double>> F_, tF_;
    std::vector<double> D_, tD_;
    double value_ = 0.0;
};

QuotientWitness fourier_witness(const GridFunction& f, double p, double alpha, const WitnessOptions& opt) {
    const Grid& g = f.grid();
    const bool coarse = g.dim() == 2 && g.size() > 100000 && (g.n(0) - 1) % 2 == 0 && (g.n(1) - 1) % 2 == 0;
    const GridFunction fs = coarse ? subsample(f) : f;
    const int modes = g.dim() == 1 ? 10 : 3;
    const int restarts = g.dim() == 1 ? opt.restarts : 1;
    const FourierBasis basis = fourier_basis(f, fs.grid(), modes);
    FourierSearch search(basis, fs, p, alpha);

    std::vector<double> best_coef;
    double best = -INFINITY;
    int best_restart = 0;
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(r));
        std::normal_distribution<double> nd;
        std::vector<double> coef(basis.terms.size());
        for (double& c : coef) c = nd(rng);
        search.reset(coef);
        if (search.value() < 0.0) search.negate();
        double step = 0.5;
        int stale = 0, sweeps = 0;
        while (stale < opt.budget && sweeps < 4 * opt.budget + 20) {
            bool improved = false;
            for (std::size_t k = 0; k < coef.size(); ++k)
                for (double sgn : {1.0, -1.0}) {
                    const double v = search.trial(k, sgn * step);
                    if (v > search.value() + 1e-12 * std::abs(search.value())) {
                        search.commit(k, sgn * step);
                        improved = true;
                        break;
                    }
                }
            if (improved) {
                stale = 0;
            } else {
                ++stale;
                step *= 0.5;
            }
            ++sweeps;
        }
        if (search.value() > best) {
            best = search.value();
            best_coef = search.coef();
            best_restart = r;
        }
    }
    const FourierBasis full = coarse ? fourier_basis(f, g, modes) : basis;
    QuotientWitness w = v_quotient(f, assemble(full, best_coef), p, alpha);
    if (w.quotient < 0.0) {
        for (double& c : best_coef) c = -c;
        w = v_quotient(f, assemble(full, best_coef), p, alpha);
    }
    w.seed = opt.seed;
    w.construction = "fourier restart=" + std::to_string(best_restart);
    return w;
}

std::optional<QuotientWitness> dual_witness(const GridFunction& f, double p, double alpha, double s) {
    const VectorFieldGrid grad = f.measure() == Measure::gaussian ? ou_gradient(f, s) : heat_gradient(f, s);
    const GridFunction mag = grad.magnitude();
    const double top = max_abs(mag);
    if (!(top > 0.0)) return std::nullopt;
    const GridFunction win = box_window(f.grid(), f.measure());
    const double eps = 1e-3 * top;
    std::vector<GridFunction> comps = grad.components;
    for (auto& c : comps)
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double m = mag[k];
            double scale;
            if (p == 1.0)
                scale = 1.0 / std::sqrt(m * m + eps * eps);
            else
                scale = std::pow(m / top, p - 2.0) / top;
            c[k] = -c[k] * scale * win[k];
        }
    QuotientWitness w = v_quotient(f, VectorFieldGrid(std::move(comps)), p, alpha);
    w.construction = "semigroup-dual s=" + format_double(s);
    return w;
}

}  // namespace

QuotientWitness v_lower_bound(const GridFunction& f, double p, double alpha, int budget) {
    WitnessOptions opt;
    opt.budget = budget;
    return v_lower_bound(f, p, alpha, opt);
}

QuotientWitness v_lower_bound(const GridFunction& f, double p, double alpha, const WitnessOptions& opt) {
    std::optional<QuotientWitness> best;
    auto offer = [&](std::optional<QuotientWitness> w) {
        if (w && std::isfinite(w->quotient) && (!best || w->quotient > best->quotient)) best = std::move(w);
    };
    auto attempt = [&](auto&& make) {
        try {
            offer(make());
        } catch (const std::invalid_argument&) {
            // candidate without a usable divergence; skip it
        }
    };

    if (opt.use_psi && f.measure() == Measure::lebesgue && max_abs(f) > 0.0) {
        const auto h_grid = opt.h_grid.empty() ? default_shift_grid(f.grid()) : opt.h_grid;
        const BesovEstimate est = besov_seminorm(f, p, alpha, h_grid);
        std::vector<Vec2> cands{est.witness_h};
        if (f.dim() == 1) {
            for (const auto& s : est.profile) cands.push_back(s.h);
        } else {
            auto prof = est.profile;
            std::stable_sort(prof.begin(), prof.end(), [](const ShiftSample& a, const ShiftSample& b) { return a.quotient > b.quotient; });
            for (std::size_t k = 0; k < std::min(opt.top_shifts_2d, prof.size()); ++k) cands.push_back(prof[k].h);
        }
        for (const Vec2& h : cands) attempt([&] { return std::optional<QuotientWitness>(psi_witness(f, p, alpha, h)); });
    }
    if (opt.use_dual)
        for (double s : opt.dual_times) attempt([&] { return dual_witness(f, p, alpha, s); });
    if (opt.use_fourier || !best) attempt([&] { return std::optional<QuotientWitness>(fourier_witness(f, p, alpha, opt)); });
    if (!best) throw std::runtime_error("witness search produced no admissible field");
    best->seed = opt.seed;
    return *best;
}

}  // namespace besov
