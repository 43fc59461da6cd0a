#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace acousim {

/// 8-bit grayscale raster, row-major.
///
/// Construction validates the pixel count. Kernels that need a 3x3
/// neighborhood (LBP, Sobel) check their own minimum size, so small images
/// can still flow through resize and histogramming.
class Image {
public:
    Image() = default;
    Image(int width, int height, std::uint8_t fill = 0);
    Image(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }

    bool operator==(const Image&) const = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Interleaved 8-bit raster with 1 or more channels, as decoded from disk.
struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;
};

/// Inclusive pixel rectangle.
struct BoundingBox {
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;

    int width() const noexcept { return x_max - x_min + 1; }
    int height() const noexcept { return y_max - y_min + 1; }
    bool valid_for(int image_width, int image_height) const noexcept;

    bool operator==(const BoundingBox&) const = default;
};

/// Boolean raster with the same layout as Image.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells;

    bool at(int x, int y) const {
        return cells[static_cast<std::size_t>(y) * width + x] != 0;
    }
    std::size_t count() const noexcept;
};

}  // namespace acousim
