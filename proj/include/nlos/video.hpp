// Video container (.nlwv) and the core tensor transforms feeding the
// signal-extraction chain: log conversion, cropping, block-mean
// downsampling, plus a PGM frame-directory import path.
//
// .nlwv layout, little-endian:
//   magic "NLWV" | u32 version=1 | u32 W,H,T,C | u32 bit_depth=16 | f32 rate
//   then frames t-major, rows top-down, channel-interleaved u16.
// Samples are stored as 16-bit integers and map to [0,1] by division with
// 65535; the format supports appending whole frames to a stream.
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nlos/errors.hpp"
#include "nlos/io_util.hpp"

namespace nlos {

enum class Space { Linear, Log };

inline constexpr char kVideoMagic[4] = {'N', 'L', 'W', 'V'};
inline constexpr std::uint32_t kVideoVersion = 1;
inline constexpr std::uint32_t kVideoBitDepth = 16;
inline constexpr std::size_t kVideoHeaderBytes = 4 + 4 * 6 + 4;
// One least-significant 16-bit step; default epsilon for log conversion.
inline constexpr double kLogEpsilon = 1.0 / 65535.0;

struct VideoTensor {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t frames = 0;
    std::size_t channels = 0;
    double rate = 15.0;
    Space space = Space::Linear;
    std::vector<double> data; // indexed ((t*H + y)*W + x)*C + c

    VideoTensor() = default;
    VideoTensor(std::size_t w, std::size_t h, std::size_t t, std::size_t c,
                double fps = 15.0, Space sp = Space::Linear)
        : width(w), height(h), frames(t), channels(c), rate(fps), space(sp),
          data(w * h * t * c, 0.0) {
        if (w < 1 || h < 1 || t < 1 || c < 1)
            throw ShapeError("video dimensions must all be >= 1");
    }

    std::size_t index(std::size_t x, std::size_t y, std::size_t t,
                      std::size_t c) const {
        return ((t * height + y) * width + x) * channels + c;
    }
    double& at(std::size_t x, std::size_t y, std::size_t t, std::size_t c) {
        return data[index(x, y, t, c)];
    }
    double at(std::size_t x, std::size_t y, std::size_t t, std::size_t c) const {
        return data[index(x, y, t, c)];
    }
    std::size_t frame_samples() const { return width * height * channels; }
    std::size_t sample_count() const { return data.size(); }
};

// Zero temporal mean per pixel/channel; shares the VideoTensor layout.
struct ResidualVideo {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t frames = 0;
    std::size_t channels = 0;
    double rate = 15.0;
    std::vector<double> data;

    std::size_t index(std::size_t x, std::size_t y, std::size_t t,
                      std::size_t c) const {
        return ((t * height + y) * width + x) * channels + c;
    }
    double& at(std::size_t x, std::size_t y, std::size_t t, std::size_t c) {
        return data[index(x, y, t, c)];
    }
    double at(std::size_t x, std::size_t y, std::size_t t, std::size_t c) const {
        return data[index(x, y, t, c)];
    }
    std::size_t frame_samples() const { return width * height * channels; }
    std::size_t sample_count() const { return data.size(); }
};

// ---------------------------------------------------------------------------
// Container IO

inline void write_video_header(std::ostream& os, std::uint32_t w,
                               std::uint32_t h, std::uint32_t t,
                               std::uint32_t c, double rate) {
    os.write(kVideoMagic, 4);
    put_u32(os, kVideoVersion);
    put_u32(os, w);
    put_u32(os, h);
    put_u32(os, t);
    put_u32(os, c);
    put_u32(os, kVideoBitDepth);
    put_f32(os, static_cast<float>(rate));
}

struct VideoHeader {
    std::uint32_t width = 0, height = 0, frames = 0, channels = 0;
    std::uint32_t bit_depth = 16;
    double rate = 15.0;
    std::size_t frame_bytes() const {
        return std::size_t(width) * height * channels * 2;
    }
};

// Parses and validates the fixed header. Error messages carry the byte
// offset of the offending field.
inline VideoHeader read_video_header(std::istream& is,
                                     const std::string& origin) {
    char magic[4];
    if (!is.read(magic, 4))
        throw DataError("truncated-payload: " + origin +
                        ": header ends before magic (byte offset 0)");
    if (std::memcmp(magic, kVideoMagic, 4) != 0)
        throw DataError("bad-magic: " + origin +
                        ": expected 'NLWV' at byte offset 0");
    std::uint32_t version;
    if (!get_u32(is, version))
        throw DataError("truncated-payload: " + origin +
                        ": header ends at byte offset 4");
    if (version != kVideoVersion)
        throw DataError("unsupported-version: " + origin + ": got version " +
                        std::to_string(version) + " at byte offset 4");
    VideoHeader h;
    std::uint32_t fields[5];
    for (int i = 0; i < 5; ++i) {
        if (!get_u32(is, fields[i]))
            throw DataError("truncated-payload: " + origin +
                            ": header ends at byte offset " +
                            std::to_string(8 + 4 * i));
    }
    h.width = fields[0];
    h.height = fields[1];
    h.frames = fields[2];
    h.channels = fields[3];
    h.bit_depth = fields[4];
    float rate;
    if (!get_f32(is, rate))
        throw DataError("truncated-payload: " + origin +
                        ": header ends at byte offset 28");
    h.rate = rate;
    if (h.width < 1 || h.height < 1 || h.frames < 1 || h.channels < 1)
        throw DataError("bad-header: " + origin + ": zero dimension");
    if (h.bit_depth != kVideoBitDepth)
        throw DataError("bad-header: " + origin + ": bit depth " +
                        std::to_string(h.bit_depth) + " unsupported");
    return h;
}

// Reads one frame worth of u16 samples scaled to [0,1]; false on clean EOF.
inline bool read_video_frame(std::istream& is, const VideoHeader& h,
                             std::vector<double>& out,
                             const std::string& origin,
                             std::size_t frame_index) {
    const std::size_t n = std::size_t(h.width) * h.height * h.channels;
    std::vector<unsigned char> raw(n * 2);
    is.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
    auto got = static_cast<std::size_t>(is.gcount());
    if (got == 0) return false;
    if (got != raw.size())
        throw DataError("truncated-payload: " + origin + ": frame " +
                        std::to_string(frame_index) + " ends at byte offset " +
                        std::to_string(kVideoHeaderBytes +
                                       frame_index * n * 2 + got));
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = std::uint16_t(raw[2 * i]) | (std::uint16_t(raw[2 * i + 1]) << 8);
        out[i] = double(v) / 65535.0;
    }
    return true;
}

inline VideoTensor load_video(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open video file: " + path);
    VideoHeader h = read_video_header(is, path);
    VideoTensor v(h.width, h.height, h.frames, h.channels, h.rate, Space::Linear);
    std::vector<double> frame;
    for (std::size_t t = 0; t < h.frames; ++t) {
        if (!read_video_frame(is, h, frame, path, t))
            throw DataError("truncated-payload: " + path + ": frame " +
                            std::to_string(t) + " missing at byte offset " +
                            std::to_string(kVideoHeaderBytes +
                                           t * h.frame_bytes()));
        std::copy(frame.begin(), frame.end(),
                  v.data.begin() + std::ptrdiff_t(t * v.frame_samples()));
    }
    return v;
}

inline void save_video(const VideoTensor& v, const std::string& path) {
    if (v.space != Space::Linear)
        throw DataError("range-violation: refusing to quantize a log-space "
                        "video; convert to linear first");
    for (std::size_t i = 0; i < v.data.size(); ++i) {
        double s = v.data[i];
        if (!(s >= 0.0 && s <= 1.0))
            throw DataError("range-violation: sample " + std::to_string(i) +
                            " = " + std::to_string(s) + " outside [0,1]");
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("io-failure: cannot open " + path);
    write_video_header(os, std::uint32_t(v.width), std::uint32_t(v.height),
                       std::uint32_t(v.frames), std::uint32_t(v.channels),
                       v.rate);
    std::vector<unsigned char> raw(v.frame_samples() * 2);
    for (std::size_t t = 0; t < v.frames; ++t) {
        const double* src = v.data.data() + t * v.frame_samples();
        for (std::size_t i = 0; i < v.frame_samples(); ++i) {
            auto q = static_cast<std::uint16_t>(std::llround(src[i] * 65535.0));
            raw[2 * i] = static_cast<unsigned char>(q & 0xff);
            raw[2 * i + 1] = static_cast<unsigned char>(q >> 8);
        }
        os.write(reinterpret_cast<const char*>(raw.data()),
                 std::streamsize(raw.size()));
    }
    if (!os) throw DataError("io-failure: short write to " + path);
}

// ---------------------------------------------------------------------------
// Tensor transforms

inline VideoTensor to_log_space(const VideoTensor& v,
                                double epsilon = kLogEpsilon) {
    if (v.space == Space::Log)
        throw Error("already-log: video is already in log space");
    if (!(epsilon > 0.0)) throw ConfigError("log epsilon must be > 0");
    VideoTensor out = v;
    out.space = Space::Log;
    for (auto& s : out.data) s = std::log(s + epsilon);
    return out;
}

inline VideoTensor crop_region(const VideoTensor& v, std::size_t x0,
                               std::size_t y0, std::size_t w, std::size_t h) {
    if (w < 1 || h < 1 || x0 + w > v.width || y0 + h > v.height)
        throw ShapeError("out-of-bounds: crop rectangle exceeds frame");
    VideoTensor out(w, h, v.frames, v.channels, v.rate, v.space);
    for (std::size_t t = 0; t < v.frames; ++t)
        for (std::size_t y = 0; y < h; ++y) {
            const double* src = &v.data[v.index(x0, y0 + y, t, 0)];
            double* dst = &out.data[out.index(0, y, t, 0)];
            std::copy(src, src + w * v.channels, dst);
        }
    return out;
}

// Block mean over factor x factor tiles per frame/channel. Trailing rows and
// columns that do not fill a block are truncated.
inline VideoTensor spatial_downsample(const VideoTensor& v, std::size_t factor) {
    if (factor < 1) throw ConfigError("downsample factor must be >= 1");
    if (factor == 1) return v;
    std::size_t ow = v.width / factor;
    std::size_t oh = v.height / factor;
    if (ow < 1 || oh < 1)
        throw ShapeError("downsample factor larger than frame");
    VideoTensor out(ow, oh, v.frames, v.channels, v.rate, v.space);
    const double inv = 1.0 / double(factor * factor);
    for (std::size_t t = 0; t < v.frames; ++t)
        for (std::size_t oy = 0; oy < oh; ++oy)
            for (std::size_t ox = 0; ox < ow; ++ox)
                for (std::size_t c = 0; c < v.channels; ++c) {
                    double acc = 0.0;
                    for (std::size_t dy = 0; dy < factor; ++dy)
                        for (std::size_t dx = 0; dx < factor; ++dx)
                            acc += v.at(ox * factor + dx, oy * factor + dy, t, c);
                    out.at(ox, oy, t, c) = acc * inv;
                }
    return out;
}

// ---------------------------------------------------------------------------
// PGM frame-directory import (binary P5, maxval 65535, big-endian samples
// per the netpbm spec). Lexicographic file order defines temporal order.

inline std::vector<double> load_pgm16(const std::string& path,
                                      std::size_t& w, std::size_t& h) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open PGM: " + path);
    std::string tag;
    is >> tag;
    if (tag != "P5") throw DataError("bad PGM magic in " + path);
    auto next_int = [&]() {
        // skip whitespace and '#' comment lines
        for (;;) {
            int ch = is.peek();
            if (ch == '#') {
                std::string line;
                std::getline(is, line);
            } else if (std::isspace(ch)) {
                is.get();
            } else {
                break;
            }
        }
        long v;
        if (!(is >> v)) throw DataError("bad PGM header in " + path);
        return v;
    };
    long pw = next_int(), ph = next_int(), maxval = next_int();
    if (pw < 1 || ph < 1) throw DataError("bad PGM size in " + path);
    if (maxval != 65535)
        throw DataError("PGM " + path + " is not 16-bit (maxval " +
                        std::to_string(maxval) + ")");
    is.get(); // single whitespace after maxval
    w = std::size_t(pw);
    h = std::size_t(ph);
    std::vector<unsigned char> raw(w * h * 2);
    if (!is.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size())))
        throw DataError("truncated PGM payload in " + path);
    std::vector<double> out(w * h);
    for (std::size_t i = 0; i < w * h; ++i) {
        auto v = std::uint16_t((raw[2 * i] << 8) | raw[2 * i + 1]);
        out[i] = double(v) / 65535.0;
    }
    return out;
}

inline VideoTensor import_pgm_directory(const std::string& dir,
                                        double rate = 15.0) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir);
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".pgm")
            files.push_back(e.path().string());
    if (files.empty()) throw DataError("no .pgm frames in " + dir);
    std::sort(files.begin(), files.end());
    std::size_t w = 0, h = 0;
    auto first = load_pgm16(files[0], w, h);
    VideoTensor v(w, h, files.size(), 1, rate, Space::Linear);
    std::copy(first.begin(), first.end(), v.data.begin());
    for (std::size_t t = 1; t < files.size(); ++t) {
        std::size_t fw = 0, fh = 0;
        auto frame = load_pgm16(files[t], fw, fh);
        if (fw != w || fh != h)
            throw ShapeError("frame size changes at " + files[t]);
        std::copy(frame.begin(), frame.end(),
                  v.data.begin() + std::ptrdiff_t(t * v.frame_samples()));
    }
    return v;
}

} // namespace nlos
