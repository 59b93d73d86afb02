#include "besov/hermite.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "besov/corpus.hpp"
#include "besov/io.hpp"

namespace besov {

GaussHermiteRule gauss_hermite(std::size_t n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
    GaussHermiteRule r;
    if (n == 1) {
        r.nodes = {0.0};
        r.weights = {1.0};
        return r;
    }
    // Golub-Welsch on the Jacobi matrix of He_k, then Newton polish and Christoffel weights.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<long>(n));
    Eigen::VectorXd off(static_cast<long>(n - 1));
    for (std::size_t k = 1; k < n; ++k) off(static_cast<long>(k - 1)) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    const int deg = static_cast<int>(n);
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double x = es.eigenvalues()(static_cast<long>(k));
        for (int it = 0; it < 3; ++it) {
            const double hn = hermite_normalized(deg, x);
            const double dh = std::sqrt(static_cast<double>(deg)) * hermite_normalized(deg - 1, x);
            if (dh == 0.0) break;
            x -= hn / dh;
        }
        double s = 0.0;
        for (int j = 0; j < deg; ++j) {
            const double h = hermite_normalized(j, x);
            s += h * h;
        }
        r.nodes[k] = x;
        r.weights[k] = 1.0 / s;
    }
    for (std::size_t k = 0; k < n / 2; ++k) {
        const std::size_t m = n - 1 - k;
        const double x = 0.5 * (r.nodes[m] - r.nodes[k]);
        const double w = 0.5 * (r.weights[m] + r.weights[k]);
        r.nodes[k] = -x;
        r.nodes[m] = x;
        r.weights[k] = r.weights[m] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    double total = 0.0;
    for (double w : r.weights) total += w;
    for (double& w : r.weights) w /= total;
    return r;
}

Stencil interpolation_stencil(const Axis& a, double x) {
    Stencil s;
    if (a.n < 8) throw std::invalid_argument("interpolation needs at least 8 nodes per axis");
    if (x <= a.lo) {
        s.first = 0;
        s.count = 1;
        s.w[0] = 1.0;
        return s;
    }
    if (x >= a.hi) {
        s.first = a.n - 1;
        s.count = 1;
        s.w[0] = 1.0;
        return s;
    }
    const double u = (x - a.lo) / a.step();
    const long base = std::clamp(static_cast<long>(std::floor(u)) - 3, 0L, static_cast<long>(a.n) - 8);
    const double v = u - static_cast<double>(base);
    s.first = static_cast<std::size_t>(base);
    s.count = 8;
    const double nearest = std::round(v);
    if (std::abs(v - nearest) < 1e-13) {
        s.w[static_cast<int>(nearest)] = 1.0;
        return s;
    }
    // barycentric form: c_m = (-1)^(7-m) / (m! (7-m)!)
    static constexpr double c[8] = {-1.0 / 5040, 1.0 / 720, -1.0 / 240, 1.0 / 144, -1.0 / 144, 1.0 / 240, -1.0 / 720, 1.0 / 5040};
    double prod = 1.0;
    for (int m = 0; m < 8; ++m) prod *= v - m;
    for (int m = 0; m < 8; ++m) s.w[m] = c[m] / (v - m) * prod;
    return s;
}

double HermiteCoeffs::energy() const {
    double e = 0.0;
    for (double x : c) e += x * x;
    return e;
}

HermiteCoeffs hermite_coeffs_1d(std::vector<double> c) {
    if (c.empty()) throw std::invalid_argument("hermite coefficients need at least c_0");
    HermiteCoeffs h;
    h.dim = 1;
    h.n0 = c.size();
    h.n1 = 1;
    h.c = std::move(c);
    return h;
}

namespace {

// basis[d][k] = h_d(y_k)
std::vector<std::vector<double>> basis_table(std::size_t degrees, const std::vector<double>& y) {
    std::vector<std::vector<double>> b(degrees, std::vector<double>(y.size()));
    for (std::size_t k = 0; k < y.size(); ++k) {
        double prev = 0.0, cur = 1.0;
        for (std::size_t d = 0; d < degrees; ++d) {
            b[d][k] = cur;
            const double next = (y[k] * cur - std::sqrt(static_cast<double>(d)) * prev) / std::sqrt(static_cast<double>(d + 1));
            prev = cur;
            cur = next;
        }
    }
    return b;
}

}  // namespace

HermiteCoeffs hermite_project(const GridFunction& f, std::size_t degrees) {
    require_measure(f, Measure::gaussian, "hermite_project");
    if (degrees < 1) throw std::invalid_argument("hermite_project: need at least one degree");
    // Same weighted node rule as inner() and lp_norm(), so Parseval closes on the grid.
    const Grid& g = f.grid();
    auto axis_nodes = [](const Axis& a) {
        std::vector<double> x(a.n);
        for (std::size_t i = 0; i < a.n; ++i) x[i] = a.coord(i);
        return x;
    };
    const auto B0 = basis_table(degrees, axis_nodes(g.axis(0)));
    const auto w0 = axis_weights(g.axis(0), Measure::gaussian);
    HermiteCoeffs h;
    h.dim = f.dim();
    h.n0 = degrees;
    h.n1 = f.dim() == 1 ? 1 : degrees;
    h.c.assign(h.n0 * h.n1, 0.0);
    const double norm2 = std::pow(lp_norm(f, 2.0), 2);
    if (f.dim() == 1) {
        for (std::size_t d = 0; d < degrees; ++d) {
            double s = 0.0;
            for (std::size_t i = 0; i < g.n(0); ++i) s += w0[i] * B0[d][i] * f[i];
            h.c[d] = s;
        }
    } else {
        const auto B1 = basis_table(degrees, axis_nodes(g.axis(1)));
        const auto w1 = axis_weights(g.axis(1), Measure::gaussian);
        const std::size_t n0 = g.n(0), n1 = g.n(1);
        // tmp[i][b] = sum_j w1_j h_b(y_j) f_ij
        std::vector<double> tmp(n0 * degrees, 0.0);
        for (std::size_t b = 0; b < degrees; ++b)
            for (std::size_t i = 0; i < n0; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < n1; ++j) s += w1[j] * B1[b][j] * f.at(i, j);
                tmp[i * degrees + b] = s;
            }
        for (std::size_t a = 0; a < degrees; ++a)
            for (std::size_t b = 0; b < degrees; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < n0; ++i) s += w0[i] * B0[a][i] * tmp[i * degrees + b];
                h.at(a, b) = s;
            }
    }
    h.tail_energy = std::max(0.0, norm2 - h.energy());
    return h;
}

GridFunction hermite_synthesize(const HermiteCoeffs& c, const Grid& g) {
    if (g.dim() != c.dim) throw std::invalid_argument("hermite_synthesize: dimension mismatch");
    std::vector<double> x0(g.n(0));
    for (std::size_t i = 0; i < g.n(0); ++i) x0[i] = g.axis(0).coord(i);
    const auto B0 = basis_table(c.n0, x0);
    std::vector<double> v(g.size(), 0.0);
    if (c.dim == 1) {
        for (std::size_t d = 0; d < c.n0; ++d)
            for (std::size_t i = 0; i < g.n(0); ++i) v[i] += c.c[d] * B0[d][i];
        return GridFunction(g, Measure::gaussian, std::move(v));
    }
    std::vector<double> x1(g.n(1));
    for (std::size_t j = 0; j < g.n(1); ++j) x1[j] = g.axis(1).coord(j);
    const auto B1 = basis_table(c.n1, x1);
    for (std::size_t a = 0; a < c.n0; ++a)
        for (std::size_t b = 0; b < c.n1; ++b) {
            const double cab = c.at(a, b);
            if (cab == 0.0) continue;
            for (std::size_t i = 0; i < g.n(0); ++i) {
                const double s = cab * B0[a][i];
                for (std::size_t j = 0; j < g.n(1); ++j) v[g.index(i, j)] += s * B1[b][j];
            }
        }
    return GridFunction(g, Measure::gaussian, std::move(v));
}

namespace {

template <class Mult>
HermiteCoeffs multiply(const HermiteCoeffs& c, Mult m) {
    HermiteCoeffs out = c;
    for (std::size_t a = 0; a < c.n0; ++a)
        for (std::size_t b = 0; b < c.n1; ++b) out.at(a, b) *= m(static_cast<double>(a + b));
    return out;
}

}  // namespace

HermiteCoeffs ou_apply_spectral(const HermiteCoeffs& c, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("ou_apply_spectral: t must be >= 0");
    if (std::isinf(t)) return multiply(c, [](double n) { return n == 0.0 ? 1.0 : 0.0; });
    return multiply(c, [t](double n) { return std::exp(-n * t); });
}

HermiteCoeffs bessel_potential(const HermiteCoeffs& c, double alpha) {
    return multiply(c, [alpha](double n) { return std::pow(1.0 + n, -0.5 * alpha); });
}

double sobolev_norm(const HermiteCoeffs& c, double alpha) {
    double s = 0.0;
    for (std::size_t a = 0; a < c.n0; ++a)
        for (std::size_t b = 0; b < c.n1; ++b) s += std::pow(1.0 + static_cast<double>(a + b), alpha) * c.at(a, b) * c.at(a, b);
    return std::sqrt(s);
}

void write_hermite_coeffs(std::ostream& os, const HermiteCoeffs& c) {
    if (c.dim == 1) {
        os << "n,coefficient\n";
        for (std::size_t a = 0; a < c.n0; ++a) os << a << ',' << format_double(c.c[a]) << "\n";
        return;
    }
    os << "n1,n2,coefficient\n";
    for (std::size_t a = 0; a < c.n0; ++a)
        for (std::size_t b = 0; b < c.n1; ++b) os << a << ',' << b << ',' << format_double(c.at(a, b)) << "\n";
}

HermiteCoeffs read_hermite_coeffs(std::istream& is) {
    std::string header;
    std::getline(is, header);
    const bool two = header == "n1,n2,coefficient";
    if (!two && header != "n,coefficient") throw std::invalid_argument("hermite coefficients: bad header");
    std::vector<std::tuple<std::size_t, std::size_t, double>> rows;
    std::string line;
    std::size_t m0 = 0, m1 = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::size_t a = 0, b = 0;
        double v = 0.0;
        if (!(ls >> a) || (two && !(ls >> b)) || !(ls >> v)) throw std::invalid_argument("hermite coefficients: bad row");
        rows.emplace_back(a, b, v);
        m0 = std::max(m0, a + 1);
        m1 = std::max(m1, b + 1);
    }
    if (rows.empty()) throw std::invalid_argument("hermite coefficients: no rows");
    HermiteCoeffs h;
    h.dim = two ? 2 : 1;
    h.n0 = m0;
    h.n1 = two ? m1 : 1;
    h.c.assign(h.n0 * h.n1, 0.0);
    for (const auto& [a, b, v] : rows) h.at(a, b) = v;
    return h;
}

}  // namespace besov
