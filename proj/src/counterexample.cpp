#include "besov/counterexample.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace besov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0; }
double dbump(double u) { return std::abs(u) < 1.0 ? bump(u) * (-2.0 * u / ((1.0 - u * u) * (1.0 - u * u))) : 0.0; }

std::size_t pow2_at_least(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// Im of the forward DFT, via a real-to-complex plan.
std::vector<double> sine_sums(const std::vector<double>& g, std::size_t k_max) {
    const std::size_t M = g.size();
    std::vector<double> in(g);
    std::vector<std::complex<double>> out(M / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(M), in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> s(k_max + 1, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k) s[k] = -out[k].imag();  // sum_j g_j sin(2 pi j k / M)
    return s;
}

// Index of the node at x, or npos.
std::size_t node_at(const Axis& a, double x) {
    const double u = (x - a.lo) / a.step();
    const double r = std::round(u);
    if (r < 0.0 || r > static_cast<double>(a.n - 1) || std::abs(u - r) > 1e-9) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(r);
}

void check_spec(const CounterexampleSpec& s) {
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) throw std::invalid_argument("counterexample: alpha must lie in (0,1)");
    if (s.k_start < 2) throw std::invalid_argument("counterexample: k_start must be at least 2 (ln 1 = 0)");
    if (s.N < s.k_start) throw std::invalid_argument("counterexample: N must be at least k_start");
    if (s.placements.size() != s.N - s.k_start + 1) throw std::invalid_argument("counterexample: placements do not match N");
}

double row_value(const CounterexampleSpec& s, const std::vector<std::size_t>& ks, double x) {
    if (x < 0.0 || x > kTwoPi) return 0.0;
    double v = 0.0;
    for (std::size_t k : ks) v += s.amplitude(k) * std::sin(static_cast<double>(k) * x);
    return v;
}

// sum_{k > N} k^{-s} by Euler-Maclaurin from N+1.
double zeta_tail(double s, std::size_t N) {
    const double m = static_cast<double>(N + 1);
    return std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s) + s / 12.0 * std::pow(m, -s - 1.0) -
           s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(m, -s - 3.0);
}

}  // namespace

double CounterexampleSpec::length(std::size_t k) const {
    const double kk = static_cast<double>(k);
    return 1.0 / (kk * std::log(kk));
}

double CounterexampleSpec::amplitude(std::size_t k) const {
    const double kk = static_cast<double>(k);
    return std::pow(kk, -alpha) * std::sqrt(std::log(kk));
}

bool CounterexampleSpec::covers(std::size_t k, double y) const {
    if (k < k_start || k > N || y < 0.0 || y > 1.0) return false;
    double d = y - left(k);
    if (d < 0.0) d += 1.0;
    return d < length(k);
}

CounterexampleSpec make_counterexample_spec(double alpha, std::size_t N, std::size_t k_start) {
    CounterexampleSpec s;
    s.alpha = alpha;
    s.N = N;
    s.k_start = k_start;
    if (k_start < 2) throw std::invalid_argument("counterexample: k_start must be at least 2 (ln 1 = 0)");
    if (N < k_start) throw std::invalid_argument("counterexample: N must be at least k_start");
    double run = 0.0;
    for (std::size_t k = k_start; k <= N; ++k) {
        s.placements.push_back(std::fmod(run, 1.0));
        run += s.length(k);
    }
    check_spec(s);
    return s;
}

nlohmann::json to_json(const CounterexampleSpec& s) {
    return {{"alpha", s.alpha}, {"N", s.N}, {"k_start", s.k_start}, {"placement", "end to end, wrapped modulo 1"},
            {"total_length", total_length(s)}};
}

Grid counterexample_grid() { return Grid(Axis{0.0, kTwoPi, 513}, Axis{0.0, 1.0, 513}); }

std::vector<std::size_t> covering_indices(const CounterexampleSpec& spec, double y) {
    std::vector<std::size_t> ks;
    for (std::size_t k = spec.k_start; k <= spec.N; ++k)
        if (spec.covers(k, y)) ks.push_back(k);
    return ks;
}

double total_length(const CounterexampleSpec& spec) {
    double s = 0.0;
    for (std::size_t k = spec.k_start; k <= spec.N; ++k) s += spec.length(k);
    return s;
}

Counterexample build_counterexample(const CounterexampleSpec& spec, const Grid& grid) {
    check_spec(spec);
    if (grid.dim() != 2) throw std::invalid_argument("build_counterexample needs a 2D grid");
    Counterexample out;
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t j = 0; j < grid.n(1); ++j) {
        const auto ks = covering_indices(spec, grid.axis(1).coord(j));
        if (ks.empty()) continue;
        for (std::size_t i = 0; i < grid.n(0); ++i) v[grid.index(i, j)] = row_value(spec, ks, grid.axis(0).coord(i));
    }
    out.f = GridFunction(grid, Measure::lebesgue, std::move(v));
    const double s = 2.0 * spec.alpha + 1.0;
    for (std::size_t k = spec.k_start; k <= spec.N; ++k) out.l2_norm_sq += std::numbers::pi * std::pow(static_cast<double>(k), -s);
    out.tail_energy = zeta_tail(s, spec.N);
    return out;
}

GridFunction counterexample_slice(const CounterexampleSpec& spec, double y, const Axis& x_axis) {
    check_spec(spec);
    if (x_axis.lo > 0.0 || x_axis.hi < kTwoPi) throw std::invalid_argument("counterexample_slice: axis must contain [0, 2pi]");
    const auto ks = covering_indices(spec, y);
    std::vector<double> v(x_axis.n);
    for (std::size_t i = 0; i < x_axis.n; ++i) v[i] = row_value(spec, ks, x_axis.coord(i));
    return GridFunction(Grid(x_axis), Measure::lebesgue, std::move(v));
}

std::vector<double> slice_coefficients(const GridFunction& f, double y, std::size_t k_max) {
    const Axis& ax = f.grid().axis(0);
    const std::size_t i0 = node_at(ax, 0.0), i1 = node_at(ax, kTwoPi);
    if (i0 == static_cast<std::size_t>(-1) || i1 == static_cast<std::size_t>(-1))
        throw std::invalid_argument("slice_coefficients: x grid needs nodes at 0 and 2pi");
    const std::size_t M = i1 - i0;
    if (k_max == 0 || 8 * k_max > M + 1)
        throw std::invalid_argument("slice_coefficients: k_max must lie in [1, nodes in [0,2pi] / 8]");
    std::size_t row = 0;
    if (f.dim() == 2) {
        const Axis& ay = f.grid().axis(1);
        const double u = std::round((y - ay.lo) / ay.step());
        row = static_cast<std::size_t>(std::clamp(u, 0.0, static_cast<double>(ay.n - 1)));
    }
    std::vector<double> g(M);
    for (std::size_t j = 0; j < M; ++j) g[j] = f.at(i0 + j, row);
    // trapezoid on [0, 2pi]; both end terms carry sin = 0
    auto s = sine_sums(g, k_max);
    const double h = kTwoPi / static_cast<double>(M);
    std::vector<double> a(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) a[k - 1] = h * s[k];
    return a;
}

BlowupProfile slice_blowup_profile(const GridFunction& f, double y, double alpha, std::size_t k_max) {
    const auto a = slice_coefficients(f, y, k_max);
    BlowupProfile b;
    for (std::size_t k = 1; k <= a.size(); ++k) {
        const double v = std::pow(static_cast<double>(k), alpha) * a[k - 1];
        if (v > b.value) {
            b.value = v;
            b.argmax = k;
        }
    }
    return b;
}

std::vector<SliceBlowupRow> slice_blowup_study(double alpha, const std::vector<std::size_t>& N_list,
                                               std::size_t y_samples, std::size_t k_start) {
    if (N_list.empty() || y_samples == 0) throw std::invalid_argument("slice_blowup_study: empty N list or y set");
    std::vector<CounterexampleSpec> specs;
    for (std::size_t N : N_list) specs.push_back(make_counterexample_spec(alpha, N, k_start));
    const std::size_t n_max = *std::max_element(N_list.begin(), N_list.end());
    const Axis ax{0.0, kTwoPi, pow2_at_least(8 * n_max) + 1};
    std::vector<SliceBlowupRow> rows;
    for (std::size_t j = 0; j < y_samples; ++j) {
        const double y = (static_cast<double>(j) + 0.5) / static_cast<double>(y_samples);
        for (const auto& s : specs) {
            SliceBlowupRow r;
            r.y = y;
            r.N = s.N;
            const auto ks = covering_indices(s, y);
            if (!ks.empty()) {
                r.k_star = ks.back();
                r.expected = std::numbers::pi * std::sqrt(std::log(static_cast<double>(r.k_star)));
            }
            const auto b = slice_blowup_profile(counterexample_slice(s, y, ax), y, alpha, s.N);
            r.value = b.value;
            r.argmax = b.argmax;
            rows.push_back(r);
        }
    }
    return rows;
}

std::vector<SeparableTestField> default_test_family(std::size_t nx) {
    std::vector<double> freqs{0.0};
    for (std::size_t m = 1; m <= nx / 8; m *= 2) freqs.push_back(static_cast<double>(m));
    std::vector<SeparableTestField> fam;
    for (double c : {0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi})
        for (double w : {0.25, 0.5, 1.0, 1.5})
            for (double m : freqs)
                for (int phase = 0; phase < (m == 0.0 ? 1 : 2); ++phase)
                    for (auto [yc, yw] : {std::pair{0.25, 0.1}, {0.5, 0.25}, {0.75, 0.1}, {0.5, 1.0}}) {
                        SeparableTestField t;
                        t.name = "bump(c=" + std::to_string(c) + ",w=" + std::to_string(w) + ",m=" + std::to_string(static_cast<int>(m)) +
                                 (phase ? ",sin" : ",cos") + ";y=" + std::to_string(yc) + "," + std::to_string(yw) + ")";
                        const double sh = phase ? 0.5 * std::numbers::pi : 0.0;
                        t.a = [=](double x) { return bump((x - c) / w) * std::cos(m * (x - c) - sh); };
                        t.da = [=](double x) {
                            const double u = (x - c) / w;
                            return dbump(u) / w * std::cos(m * (x - c) - sh) - m * bump(u) * std::sin(m * (x - c) - sh);
                        };
                        t.b = [=](double y) { return bump((y - yc) / yw); };
                        t.b_sup = 1.0;
                        fam.push_back(std::move(t));
                    }
    return fam;
}

namespace {

struct FieldTransform {
    std::vector<double> x_part;  // int_0^{2pi} a'(x) sin(kx) dx, index k
    std::vector<double> y_part;  // int_{J_k} b
    double denom = 0.0;
};

FieldTransform transform(const CounterexampleSpec& spec, std::size_t N, const SeparableTestField& phi) {
    const std::size_t M = pow2_at_least(std::max<std::size_t>(16384, 8 * N));
    const double h = kTwoPi / static_cast<double>(M);
    std::vector<double> g(M);
    double a_sup = phi.a_sup, da_sup = phi.da_sup;
    for (std::size_t j = 0; j < M; ++j) {
        const double x = h * static_cast<double>(j);
        g[j] = phi.da(x);
        if (phi.a_sup == 0.0) a_sup = std::max(a_sup, std::abs(phi.a(x)));
        if (phi.da_sup == 0.0) da_sup = std::max(da_sup, std::abs(g[j]));
    }
    FieldTransform t;
    t.x_part = sine_sums(g, N);
    for (double& v : t.x_part) v *= h;

    // cumulative integral of b on [0,1]
    constexpr std::size_t Q = 1 << 16;
    std::vector<double> B(Q + 1, 0.0);
    double prev = phi.b(0.0), b_sup = phi.b_sup == 0.0 ? std::abs(prev) : phi.b_sup;
    for (std::size_t i = 1; i <= Q; ++i) {
        const double cur = phi.b(static_cast<double>(i) / Q);
        if (phi.b_sup == 0.0) b_sup = std::max(b_sup, std::abs(cur));
        B[i] = B[i - 1] + 0.5 * (prev + cur) / Q;
        prev = cur;
    }
    auto cum = [&](double y) {
        const double u = std::clamp(y, 0.0, 1.0) * Q;
        const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), Q - 1);
        return B[i] + (u - static_cast<double>(i)) * (B[i + 1] - B[i]);
    };
    t.y_part.assign(N + 1, 0.0);
    for (std::size_t k = spec.k_start; k <= N; ++k) {
        const double L = spec.left(k), R = L + spec.length(k);
        t.y_part[k] = R <= 1.0 ? cum(R) - cum(L) : (cum(1.0) - cum(L)) + cum(R - 1.0);
    }
    t.denom = std::pow(a_sup * b_sup, spec.alpha) * std::pow(da_sup * b_sup, 1.0 - spec.alpha);
    return t;
}

}  // namespace

double directional_quotient(const CounterexampleSpec& spec, std::size_t N, const SeparableTestField& phi) {
    check_spec(spec);
    if (N < spec.k_start || N > spec.N) throw std::invalid_argument("directional_quotient: N outside the truncation");
    const FieldTransform t = transform(spec, N, phi);
    if (!(t.denom > 0.0)) throw std::invalid_argument("directional_quotient: test field vanishes");
    double s = 0.0;
    for (std::size_t k = spec.k_start; k <= N; ++k) s += spec.amplitude(k) * t.x_part[k] * t.y_part[k];
    return std::abs(s) / t.denom;
}

std::vector<DirectionalScanRow> directional_bound_scan(const CounterexampleSpec& spec,
                                                       const std::vector<SeparableTestField>& family,
                                                       const std::vector<std::size_t>& N_list) {
    check_spec(spec);
    std::vector<DirectionalScanRow> rows;
    std::size_t n_max = 0;
    for (std::size_t N : N_list) {
        if (N < spec.k_start || N > spec.N) throw std::invalid_argument("directional_bound_scan: N outside the truncation");
        rows.push_back({N, 0.0, ""});
        n_max = std::max(n_max, N);
    }
    for (const auto& phi : family) {
        const FieldTransform t = transform(spec, n_max, phi);
        if (!(t.denom > 0.0)) continue;
        // partial sums at every requested N
        std::vector<double> partial(n_max + 1, 0.0);
        for (std::size_t k = spec.k_start; k <= n_max; ++k) partial[k] = partial[k - 1] + spec.amplitude(k) * t.x_part[k] * t.y_part[k];
        for (auto& r : rows) {
            const double q = std::abs(partial[r.N]) / t.denom;
            if (q > r.max_quotient) {
                r.max_quotient = q;
                r.argmax = phi.name;
            }
        }
    }
    return rows;
}

}  // namespace besov
