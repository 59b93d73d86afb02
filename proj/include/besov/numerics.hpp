#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace besov {

std::vector<double> log_grid(double lo, double hi, std::size_t n);

struct ScalarMax {
    double x;
    double value;
};

// Golden-section search for a maximum of fn on [lo, hi], in log coordinates when log_scale is set.
ScalarMax golden_max(const std::function<double(double)>& fn, double lo, double hi, bool log_scale, int iters = 40);

// Sampled map t -> value with strictly increasing t.
struct SemigroupCurve {
    std::vector<double> t;
    std::vector<double> value;

    void push(double tt, double v);
    std::size_t size() const { return t.size(); }
    std::size_t argmax() const;
    void write_csv(std::ostream& os) const;
};

// Grid supremum of a curve, refined by golden section between the neighbours of the argmax.
struct SupEstimate {
    double value = 0.0;
    double argmax = 0.0;
    SemigroupCurve curve;
};

SupEstimate refine_sup(const SemigroupCurve& curve, const std::function<double(double)>& fn, bool log_scale);

}  // namespace besov
