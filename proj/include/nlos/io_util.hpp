// Little-endian binary readers/writers for the on-disk container formats.
#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "nlos/errors.hpp"

namespace nlos {

// All file formats in this project are little-endian. The helpers below
// assemble values byte-by-byte so they behave the same on any host.

inline void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_u16(std::ostream& os, std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 2);
}

inline void put_f32(std::ostream& os, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(os, bits);
}

inline bool get_u32(std::istream& is, std::uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
        (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
    return true;
}

inline bool get_u16(std::istream& is, std::uint16_t& v) {
    unsigned char b[2];
    if (!is.read(reinterpret_cast<char*>(b), 2)) return false;
    v = std::uint16_t(b[0]) | (std::uint16_t(b[1]) << 8);
    return true;
}

inline bool get_f32(std::istream& is, float& v) {
    std::uint32_t bits;
    if (!get_u32(is, bits)) return false;
    std::memcpy(&v, &bits, 4);
    return true;
}

inline std::vector<unsigned char> read_file_bytes(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open file: " + path);
    is.seekg(0, std::ios::end);
    auto n = static_cast<std::size_t>(is.tellg());
    is.seekg(0);
    std::vector<unsigned char> buf(n);
    if (n && !is.read(reinterpret_cast<char*>(buf.data()), std::streamsize(n)))
        throw DataError("cannot read file: " + path);
    return buf;
}

inline void write_file_bytes(const std::string& path,
                             const std::vector<unsigned char>& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot open file for writing: " + path);
    os.write(reinterpret_cast<const char*>(bytes.data()),
             std::streamsize(bytes.size()));
    if (!os) throw DataError("io failure while writing: " + path);
}

} // namespace nlos
