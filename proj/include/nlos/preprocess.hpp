// Signal extraction: temporal-mean subtraction, AC-flicker removal,
// display amplification, space-time collapse and percentile normalization.
// Batch forms operate on whole clips; OnlineMean + window_residual provide
// the streaming equivalents.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "nlos/errors.hpp"
#include "nlos/plot.hpp"
#include "nlos/stats.hpp"
#include "nlos/video.hpp"

namespace nlos {

// Requires log-space input: downstream math treats samples as additive.
inline ResidualVideo subtract_temporal_mean(const VideoTensor& v) {
    if (v.space != Space::Log)
        throw Error("subtract_temporal_mean expects a log-space video");
    if (v.frames < 2) throw Error("too-few-frames: need at least 2 frames");
    ResidualVideo r;
    r.width = v.width;
    r.height = v.height;
    r.frames = v.frames;
    r.channels = v.channels;
    r.rate = v.rate;
    r.data.resize(v.data.size());
    const std::size_t fs = v.frame_samples();
    std::vector<double> mean(fs, 0.0);
    for (std::size_t t = 0; t < v.frames; ++t) {
        const double* src = v.data.data() + t * fs;
        for (std::size_t i = 0; i < fs; ++i) mean[i] += src[i];
    }
    const double inv = 1.0 / double(v.frames);
    for (auto& m : mean) m *= inv;
    for (std::size_t t = 0; t < v.frames; ++t) {
        const double* src = v.data.data() + t * fs;
        double* dst = r.data.data() + t * fs;
        for (std::size_t i = 0; i < fs; ++i) dst[i] = src[i] - mean[i];
    }
    return r;
}

// Global per-frame median over all pixels and channels jointly. AC flicker
// is achromatic to first order, so one curve serves all channels.
inline std::vector<double> frame_median_curve(const ResidualVideo& r) {
    const std::size_t fs = r.frame_samples();
    std::vector<double> curve(r.frames);
    std::vector<double> scratch(fs);
    for (std::size_t t = 0; t < r.frames; ++t) {
        const double* src = r.data.data() + t * fs;
        scratch.assign(src, src + fs);
        curve[t] = median_inplace(scratch);
    }
    return curve;
}

// Projects every pixel/channel time series onto the orthogonal complement
// of the median curve. Degenerate curves (|m|^2 < 1e-12) leave the input
// untouched.
inline ResidualVideo remove_flicker(const ResidualVideo& r) {
    std::vector<double> m = frame_median_curve(r);
    double mm = 0.0;
    for (double v : m) mm += v * v;
    if (mm < 1e-12) return r;
    ResidualVideo out = r;
    const std::size_t fs = r.frame_samples();
    // One pass for the inner products, one for the subtraction.
    std::vector<double> pm(fs, 0.0);
    for (std::size_t t = 0; t < r.frames; ++t) {
        const double* src = r.data.data() + t * fs;
        const double mt = m[t];
        for (std::size_t i = 0; i < fs; ++i) pm[i] += src[i] * mt;
    }
    const double inv_mm = 1.0 / mm;
    for (std::size_t t = 0; t < r.frames; ++t) {
        double* dst = out.data.data() + t * fs;
        const double mt = m[t];
        for (std::size_t i = 0; i < fs; ++i) dst[i] -= pm[i] * inv_mm * mt;
    }
    return out;
}

// Visualization only: gain, mid-gray base, clamp to displayable range.
inline VideoTensor amplify_for_display(const ResidualVideo& r,
                                       double gain = 50.0, double base = 0.5) {
    VideoTensor out(r.width, r.height, r.frames, r.channels, r.rate,
                    Space::Linear);
    for (std::size_t i = 0; i < r.data.size(); ++i)
        out.data[i] = std::clamp(gain * r.data[i] + base, 0.0, 1.0);
    return out;
}

// Mean over the discarded spatial axis. Horizontal keeps width (W x T x C),
// vertical keeps height (H x T x C). Output is un-normalized.
inline SpaceTimePlot collapse_to_stplot(const ResidualVideo& r,
                                        CollapseAxis axis) {
    const bool horiz = axis == CollapseAxis::Horizontal;
    const std::size_t S = horiz ? r.width : r.height;
    SpaceTimePlot p(axis, S, r.frames, r.channels, r.rate);
    const double inv = 1.0 / double(horiz ? r.height : r.width);
    for (std::size_t t = 0; t < r.frames; ++t)
        for (std::size_t y = 0; y < r.height; ++y)
            for (std::size_t x = 0; x < r.width; ++x)
                for (std::size_t c = 0; c < r.channels; ++c)
                    p.at(horiz ? x : y, t, c) += r.at(x, y, t, c);
    for (auto& v : p.data) v *= inv;
    return p;
}

// Clamp to the [p2, p98] percentile band, then map that band affinely onto
// [0,1]. A (near-)constant plot maps to all 0.5.
inline SpaceTimePlot clip_normalize(const SpaceTimePlot& p) {
    SpaceTimePlot out = p;
    std::vector<double> sorted = p.data;
    std::sort(sorted.begin(), sorted.end());
    auto interp = [&](double pct) {
        double rank = pct / 100.0 * double(sorted.size() - 1);
        auto lo_i = static_cast<std::size_t>(rank);
        double frac = rank - double(lo_i);
        if (lo_i + 1 >= sorted.size()) return sorted.back();
        return sorted[lo_i] + frac * (sorted[lo_i + 1] - sorted[lo_i]);
    };
    double lo = interp(2.0);
    double hi = interp(98.0);
    double range = hi - lo;
    if (range < 1e-300) {
        std::fill(out.data.begin(), out.data.end(), 0.5);
        return out;
    }
    const double inv = 1.0 / range;
    for (auto& v : out.data) v = (std::clamp(v, lo, hi) - lo) * inv;
    return out;
}

// Classifier input: plot values shifted/scaled to zero mean, unit std.
struct StandardizedPlot {
    CollapseAxis axis = CollapseAxis::Horizontal;
    std::size_t space = 0, time = 0, channels = 0;
    std::vector<double> data; // (s*T + t)*C + c

    std::size_t index(std::size_t s, std::size_t t, std::size_t c) const {
        return (s * time + t) * channels + c;
    }
    double at(std::size_t s, std::size_t t, std::size_t c) const {
        return data[index(s, t, c)];
    }
};

inline StandardizedPlot standardize(const SpaceTimePlot& p) {
    StandardizedPlot out;
    out.axis = p.axis;
    out.space = p.space;
    out.time = p.time;
    out.channels = p.channels;
    out.data = p.data;
    double mu = mean_of(out.data);
    double sd = stddev_of(out.data);
    if (sd < 1e-8) {
        std::fill(out.data.begin(), out.data.end(), 0.0);
        return out;
    }
    const double inv = 1.0 / sd;
    for (auto& v : out.data) v = (v - mu) * inv;
    return out;
}

// ---------------------------------------------------------------------------
// Streaming state

// Running per-pixel mean over every frame seen this session, kept as an
// exact sum so it matches the batch mean of the same frames.
struct OnlineMean {
    std::size_t width = 0, height = 0, channels = 0;
    std::size_t count = 0;
    std::vector<double> sum;

    void update(const std::vector<double>& frame, std::size_t w, std::size_t h,
                std::size_t c) {
        if (count == 0) {
            width = w;
            height = h;
            channels = c;
            sum.assign(w * h * c, 0.0);
        } else if (w != width || h != height || c != channels) {
            throw ShapeError("shape-mismatch: frame does not match stream");
        }
        if (frame.size() != sum.size())
            throw ShapeError("shape-mismatch: frame sample count");
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += frame[i];
        ++count;
    }

    double mean_at(std::size_t i) const { return sum[i] / double(count); }
};

// Subtracts the all-session mean (not the window mean) from the buffered
// frames, then removes flicker within the window.
inline ResidualVideo window_residual(const std::vector<std::vector<double>>& window,
                                     const OnlineMean& m, double rate = 15.0) {
    if (window.empty()) throw Error("window_residual: empty window");
    if (m.count == 0) throw Error("window_residual: mean has no frames");
    ResidualVideo r;
    r.width = m.width;
    r.height = m.height;
    r.channels = m.channels;
    r.frames = window.size();
    r.rate = rate;
    const std::size_t fs = m.sum.size();
    r.data.resize(fs * window.size());
    const double inv_n = 1.0 / double(m.count);
    for (std::size_t t = 0; t < window.size(); ++t) {
        if (window[t].size() != fs)
            throw ShapeError("shape-mismatch: window frame sample count");
        double* dst = r.data.data() + t * fs;
        const double* src = window[t].data();
        for (std::size_t i = 0; i < fs; ++i)
            dst[i] = src[i] - m.sum[i] * inv_n;
    }
    return remove_flicker(r);
}

} // namespace nlos
