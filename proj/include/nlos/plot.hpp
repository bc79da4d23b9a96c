// Space-time plots: a residual video collapsed along one spatial axis,
// leaving space x time x channels. Serialized form, little-endian:
//   magic "NLSP" | u32 version=1 | u8 axis (0=horizontal,1=vertical)
//   | u32 S,T,C | f32 rate | payload f32, indexed (s*T + t)*C + c.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "nlos/errors.hpp"
#include "nlos/image_png.hpp"
#include "nlos/io_util.hpp"

namespace nlos {

enum class CollapseAxis : std::uint8_t { Horizontal = 0, Vertical = 1 };

inline constexpr char kPlotMagic[4] = {'N', 'L', 'S', 'P'};
inline constexpr std::uint32_t kPlotVersion = 1;

struct SpaceTimePlot {
    CollapseAxis axis = CollapseAxis::Horizontal;
    std::size_t space = 0;    // S: retained spatial samples
    std::size_t time = 0;     // T
    std::size_t channels = 0; // C
    double rate = 15.0;
    std::vector<double> data; // (s*T + t)*C + c

    SpaceTimePlot() = default;
    SpaceTimePlot(CollapseAxis ax, std::size_t s, std::size_t t, std::size_t c,
                  double fps = 15.0)
        : axis(ax), space(s), time(t), channels(c), rate(fps),
          data(s * t * c, 0.0) {}

    std::size_t index(std::size_t s, std::size_t t, std::size_t c) const {
        return (s * time + t) * channels + c;
    }
    double& at(std::size_t s, std::size_t t, std::size_t c) {
        return data[index(s, t, c)];
    }
    double at(std::size_t s, std::size_t t, std::size_t c) const {
        return data[index(s, t, c)];
    }

    // Column range [t0, t0+len) as a new plot; used for segment extraction.
    SpaceTimePlot window(std::size_t t0, std::size_t len) const {
        if (t0 + len > time) throw ShapeError("plot window out of range");
        SpaceTimePlot out(axis, space, len, channels, rate);
        for (std::size_t s = 0; s < space; ++s)
            std::copy(data.begin() + std::ptrdiff_t(index(s, t0, 0)),
                      data.begin() + std::ptrdiff_t(index(s, t0 + len, 0)),
                      out.data.begin() + std::ptrdiff_t(out.index(s, 0, 0)));
        return out;
    }
};

inline void save_plot(const SpaceTimePlot& p, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot open plot file for writing: " + path);
    os.write(kPlotMagic, 4);
    put_u32(os, kPlotVersion);
    os.put(char(static_cast<std::uint8_t>(p.axis)));
    put_u32(os, std::uint32_t(p.space));
    put_u32(os, std::uint32_t(p.time));
    put_u32(os, std::uint32_t(p.channels));
    put_f32(os, float(p.rate));
    for (double v : p.data) put_f32(os, float(v));
    if (!os) throw DataError("io failure writing plot: " + path);
}

inline SpaceTimePlot load_plot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open plot file: " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kPlotMagic, 4) != 0)
        throw DataError("bad plot magic in " + path);
    std::uint32_t version = 0;
    if (!get_u32(is, version) || version != kPlotVersion)
        throw DataError("unsupported plot version in " + path);
    int axis = is.get();
    std::uint32_t s = 0, t = 0, c = 0;
    float rate = 15.f;
    if (axis < 0 || !get_u32(is, s) || !get_u32(is, t) || !get_u32(is, c) ||
        !get_f32(is, rate))
        throw DataError("truncated plot header in " + path);
    if (s < 1 || t < 1 || c < 1) throw DataError("bad plot dims in " + path);
    SpaceTimePlot p(axis == 0 ? CollapseAxis::Horizontal
                              : CollapseAxis::Vertical,
                    s, t, c, rate);
    for (auto& v : p.data) {
        float f;
        if (!get_f32(is, f)) throw DataError("truncated plot payload in " + path);
        v = f;
    }
    return p;
}

// 8-bit export, space down the rows and time across the columns. Values are
// clamped to [0,1]; intended for normalized plots.
inline void export_plot_png(const SpaceTimePlot& p, const std::string& path) {
    std::size_t c_out = (p.channels == 3) ? 3 : 1;
    std::vector<unsigned char> pixels(p.space * p.time * c_out);
    for (std::size_t s = 0; s < p.space; ++s)
        for (std::size_t t = 0; t < p.time; ++t)
            for (std::size_t c = 0; c < c_out; ++c) {
                double v = p.at(s, t, std::min(c, p.channels - 1));
                v = std::clamp(v, 0.0, 1.0);
                pixels[(s * p.time + t) * c_out + c] =
                    static_cast<unsigned char>(std::lround(v * 255.0));
            }
    write_png(path, pixels.data(), p.time, p.space, c_out);
}

} // namespace nlos
