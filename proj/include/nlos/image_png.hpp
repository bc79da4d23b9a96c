// Minimal 8-bit PNG writer (grayscale or RGB) on top of zlib. Inspection
// output only; the binary plot container is the canonical format.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <zlib.h>

#include "nlos/errors.hpp"
#include "nlos/io_util.hpp"

namespace nlos {

namespace detail {
inline void png_be32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back((v >> 24) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back(v & 0xff);
}

inline void png_chunk(std::vector<unsigned char>& out, const char type[4],
                      const std::vector<unsigned char>& payload) {
    png_be32(out, std::uint32_t(payload.size()));
    std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    uLong crc = crc32(0L, out.data() + crc_start, uInt(out.size() - crc_start));
    png_be32(out, std::uint32_t(crc));
}
} // namespace detail

// pixels: row-major, `channels` = 1 (gray) or 3 (RGB), 8 bits per sample.
inline void write_png(const std::string& path, const unsigned char* pixels,
                      std::size_t width, std::size_t height,
                      std::size_t channels) {
    if (channels != 1 && channels != 3)
        throw ConfigError("PNG export supports 1 or 3 channels");
    std::vector<unsigned char> raw;
    raw.reserve(height * (1 + width * channels));
    for (std::size_t y = 0; y < height; ++y) {
        raw.push_back(0); // filter: none
        const unsigned char* row = pixels + y * width * channels;
        raw.insert(raw.end(), row, row + width * channels);
    }
    uLongf bound = compressBound(uLong(raw.size()));
    std::vector<unsigned char> idat(bound);
    if (compress2(idat.data(), &bound, raw.data(), uLong(raw.size()), 6) != Z_OK)
        throw Error("zlib compression failed for " + path);
    idat.resize(bound);

    std::vector<unsigned char> png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<unsigned char> ihdr;
    detail::png_be32(ihdr, std::uint32_t(width));
    detail::png_be32(ihdr, std::uint32_t(height));
    ihdr.push_back(8);                              // bit depth
    ihdr.push_back(channels == 1 ? 0 : 2);          // gray / truecolor
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    detail::png_chunk(png, "IHDR", ihdr);
    detail::png_chunk(png, "IDAT", idat);
    detail::png_chunk(png, "IEND", {});
    write_file_bytes(path, png);
}

} // namespace nlos
