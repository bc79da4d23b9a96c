// Small statistics helpers used across the pipeline and the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "nlos/errors.hpp"

namespace nlos {

inline double mean_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / double(xs.size());
}

// Population variance about the sample mean.
inline double variance_of(std::span<const double> xs) {
    if (xs.size() < 1) return 0.0;
    double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / double(xs.size());
}

inline double stddev_of(std::span<const double> xs) {
    return std::sqrt(variance_of(xs));
}

// Percentile with linear interpolation between order statistics:
// rank = p/100 * (n-1), value = x[floor] + frac * (x[floor+1] - x[floor]).
// This is the rule used everywhere plots are clipped or summarized.
inline double percentile(std::vector<double> xs, double p) {
    if (xs.empty()) throw Error("percentile of empty range");
    std::sort(xs.begin(), xs.end());
    if (p <= 0.0) return xs.front();
    if (p >= 100.0) return xs.back();
    double rank = p / 100.0 * double(xs.size() - 1);
    auto lo = static_cast<std::size_t>(rank);
    double frac = rank - double(lo);
    if (lo + 1 >= xs.size()) return xs.back();
    return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

// Median via nth_element; even count averages the two central values.
inline double median_inplace(std::vector<double>& xs) {
    if (xs.empty()) throw Error("median of empty range");
    std::size_t n = xs.size();
    auto mid = xs.begin() + std::ptrdiff_t(n / 2);
    std::nth_element(xs.begin(), mid, xs.end());
    double hi = *mid;
    if (n % 2 == 1) return hi;
    double lo = *std::max_element(xs.begin(), mid);
    return 0.5 * (lo + hi);
}

inline double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw Error("correlation: size mismatch");
    double ma = mean_of(a), mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

// Spearman rank correlation; average ranks on ties.
inline double spearman(std::span<const double> a, std::span<const double> b) {
    auto ranks = [](std::span<const double> xs) {
        std::size_t n = xs.size();
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
        std::vector<double> r(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && xs[idx[j + 1]] == xs[idx[i]]) ++j;
            double avg = 0.5 * (double(i) + double(j));
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    auto ra = ranks(a);
    auto rb = ranks(b);
    return correlation(ra, rb);
}

} // namespace nlos
