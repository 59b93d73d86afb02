#include "besov/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace besov {

CorpusName parse_corpus_name(std::string_view name) {
    CorpusName out;
    const auto open = name.find('(');
    if (open == std::string_view::npos) {
        out.base = std::string(name);
        return out;
    }
    if (name.back() != ')') throw std::invalid_argument("malformed corpus name '" + std::string(name) + "'");
    out.base = std::string(name.substr(0, open));
    std::string inner(name.substr(open + 1, name.size() - open - 2));
    std::size_t pos = 0;
    while (pos <= inner.size()) {
        const auto comma = inner.find(',', pos);
        const std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.args.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad argument '" + tok + "' in corpus name '" + std::string(name) + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

double hermite_normalized(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite degree must be >= 0");
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(static_cast<double>(k + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

const std::vector<std::string> kLebesgue = {"zero", "indicator", "hat", "gauss_bump", "weierstrass"};
const std::vector<std::string> kGaussian = {"one", "x", "hermite", "xy", "x+y^2"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

// Average of 1_{[a,b]} over the cell of width d centred at x.
double cell_indicator(double x, double d, double a, double b) {
    const double lo = std::max(x - 0.5 * d, a), hi = std::min(x + 0.5 * d, b);
    return hi > lo ? (hi - lo) / d : 0.0;
}

int int_arg(const CorpusName& c, std::size_t i) {
    const double v = c.args.at(i);
    if (v != std::floor(v) || v < 0) throw std::invalid_argument("corpus '" + c.base + "' expects integer arguments");
    return static_cast<int>(v);
}

}  // namespace

Measure corpus_measure(std::string_view name) {
    const auto c = parse_corpus_name(name);
    if (contains(kLebesgue, c.base)) return Measure::lebesgue;
    if (contains(kGaussian, c.base)) return Measure::gaussian;
    throw std::invalid_argument("unknown corpus function '" + std::string(name) + "'");
}

bool corpus_supports_dim(std::string_view name, int dim) {
    const auto c = parse_corpus_name(name);
    if (c.base == "hat" || c.base == "weierstrass") return dim == 1;
    if (c.base == "xy" || c.base == "x+y^2") return dim == 2;
    if (c.base == "hermite") return (dim == 1 && c.args.size() == 1) || (dim == 2 && c.args.size() == 2);
    corpus_measure(name);
    return dim == 1 || dim == 2;
}

double corpus_alpha_limit(std::string_view name, double p) {
    const auto c = parse_corpus_name(name);
    if (c.base == "indicator") return std::min(1.0, 1.0 / p);
    if (c.base == "weierstrass") return c.args.empty() ? 0.5 : c.args[0];
    corpus_measure(name);
    return 1.0;
}

GridFunction build_corpus(std::string_view name, const Grid& grid) {
    const auto c = parse_corpus_name(name);
    const Measure m = corpus_measure(name);
    const int dim = grid.dim();
    if (!corpus_supports_dim(name, dim))
        throw std::invalid_argument("corpus function '" + std::string(name) + "' is not defined in dimension " +
                                    std::to_string(dim));
    const double d0 = grid.step(0);
    const double d1 = dim == 2 ? grid.step(1) : 1.0;

    if (c.base == "zero") return GridFunction::zeros(grid, m);
    if (c.base == "one") return sample(grid, m, [](double, double) { return 1.0; });
    if (c.base == "indicator") {
        return sample(grid, m, [&](double x, double y) {
            const double a = cell_indicator(x, d0, 0.0, 1.0);
            return dim == 1 ? a : a * cell_indicator(y, d1, 0.0, 1.0);
        });
    }
    if (c.base == "hat") return sample(grid, m, [](double x, double) { return std::max(0.0, 1.0 - std::abs(x)); });
    if (c.base == "gauss_bump")
        return sample(grid, m, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
    if (c.base == "weierstrass") {
        const double a = c.args.empty() ? 0.5 : c.args[0];
        const int J = c.args.size() > 1 ? int_arg(c, 1) : 6;
        if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("weierstrass order must lie in (0,1]");
        return sample(grid, m, [&](double x, double) {
            const double u = 0.5 * x;
            double s = 0.0;
            for (int j = 0; j <= J; ++j) s += std::exp2(-a * j) * std::cos(std::exp2(j) * x);
            return std::exp(-u * u * u * u) * s;
        });
    }
    if (c.base == "x") return sample(grid, m, [](double x, double) { return x; });
    if (c.base == "xy") return sample(grid, m, [](double x, double y) { return x * y; });
    if (c.base == "x+y^2") return sample(grid, m, [](double x, double y) { return x + y * y; });
    if (c.base == "hermite") {
        const int n0 = int_arg(c, 0);
        if (dim == 1) return sample(grid, m, [n0](double x, double) { return hermite_normalized(n0, x); });
        const int n1 = int_arg(c, 1);
        return sample(grid, m,
                      [n0, n1](double x, double y) { return hermite_normalized(n0, x) * hermite_normalized(n1, y); });
    }
    throw std::invalid_argument("unknown corpus function '" + std::string(name) + "'");
}

}  // namespace besov
