#include "acousim/image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace acousim {

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Image::Image(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::invalid_argument("pixel buffer holds " + std::to_string(pixels_.size()) +
                                    " values, expected " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

bool BoundingBox::valid_for(int image_width, int image_height) const noexcept {
    return x_min >= 0 && y_min >= 0 && x_min <= x_max && y_min <= y_max &&
           x_max < image_width && y_max < image_height;
}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(),
                                                  [](std::uint8_t c) { return c != 0; }));
}

}  // namespace acousim
