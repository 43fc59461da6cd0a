#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "acousim/image.hpp"

namespace acousim::io {

/// Decodes a PNG into 1 (gray) or 3 (RGB) interleaved 8-bit channels.
/// Alpha is composited away, palettes are expanded, 16-bit is reduced.
RawImage read_png(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const Image& img);
void write_png(const std::filesystem::path& path, const RawImage& img);

/// Binary PGM (P5) raster. Samples keep their native depth (maxval <= 65535).
struct Pgm {
    int width = 0;
    int height = 0;
    int maxval = 255;
    std::vector<std::uint16_t> samples;
};

Pgm read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Pgm& pgm);

}  // namespace acousim::io
