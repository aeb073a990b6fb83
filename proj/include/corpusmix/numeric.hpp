#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace corpusmix {

// Kahan compensated summation. Keeps probability normalization and hour
// totals accurate across hundreds of strata or millions of records.
class KahanSum {
public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }

    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// Linear-interpolation quantile over sorted values (R-7 / numpy default).
// q in [0, 1]; values must be non-empty and ascending.
inline double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.size() == 1)
        return sorted[0];
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size())
        return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, q);
}

}  // namespace corpusmix
