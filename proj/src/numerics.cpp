#include "besov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "besov/io.hpp"

namespace besov {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

ScalarMax golden_max(const std::function<double(double)>& fn, double lo, double hi, bool log_scale, int iters) {
    auto to_x = [&](double u) { return log_scale ? std::exp(u) : u; };
    double a = log_scale ? std::log(lo) : lo;
    double b = log_scale ? std::log(hi) : hi;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = fn(to_x(c)), fd = fn(to_x(d));
    for (int k = 0; k < iters; ++k) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = fn(to_x(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = fn(to_x(d));
        }
    }
    return fc >= fd ? ScalarMax{to_x(c), fc} : ScalarMax{to_x(d), fd};
}

void SemigroupCurve::push(double tt, double v) {
    if (!t.empty() && !(tt > t.back())) throw std::invalid_argument("curve abscissae must increase strictly");
    if (!std::isfinite(v)) throw std::invalid_argument("curve values must be finite");
    t.push_back(tt);
    value.push_back(v);
}

std::size_t SemigroupCurve::argmax() const {
    if (value.empty()) throw std::invalid_argument("empty curve");
    return static_cast<std::size_t>(std::max_element(value.begin(), value.end()) - value.begin());
}

void SemigroupCurve::write_csv(std::ostream& os) const {
    os << "t,value\n";
    for (std::size_t i = 0; i < t.size(); ++i) os << format_double(t[i]) << ',' << format_double(value[i]) << "\n";
}

SupEstimate refine_sup(const SemigroupCurve& curve, const std::function<double(double)>& fn, bool log_scale) {
    SupEstimate out;
    out.curve = curve;
    const std::size_t k = curve.argmax();
    out.value = curve.value[k];
    out.argmax = curve.t[k];
    if (curve.size() < 2) return out;
    const double lo = curve.t[k == 0 ? 0 : k - 1];
    const double hi = curve.t[k + 1 == curve.size() ? k : k + 1];
    const ScalarMax m = golden_max(fn, lo, hi, log_scale, 16);
    if (m.value > out.value) {
        out.value = m.value;
        out.argmax = m.x;
    }
    return out;
}

}  // namespace besov
