#include "acousim/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace acousim::imaging {

namespace {

std::uint8_t round_to_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

Image to_grayscale(const RawImage& raw) {
    const std::size_t n = static_cast<std::size_t>(raw.width) * static_cast<std::size_t>(raw.height);
    if (raw.channels == 1) {
        return Image(raw.width, raw.height, raw.data);
    }
    if (raw.channels != 3) {
        throw std::invalid_argument("to_grayscale: unsupported channel count " +
                                    std::to_string(raw.channels) + " (expected 1 or 3)");
    }
    if (raw.data.size() != n * 3) {
        throw std::invalid_argument("to_grayscale: buffer size does not match dimensions");
    }
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Integer weights in thousandths keep the half-up rounding exact.
        const unsigned r = raw.data[3 * i];
        const unsigned g = raw.data[3 * i + 1];
        const unsigned b = raw.data[3 * i + 2];
        out[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
    }
    return Image(raw.width, raw.height, std::move(out));
}

Image resize(const Image& img, int target_w, int target_h) {
    if (target_w < 3 || target_h < 3) {
        throw std::invalid_argument("resize: target " + std::to_string(target_w) + "x" +
                                    std::to_string(target_h) + " is below the 3x3 minimum");
    }
    if (img.empty()) throw std::invalid_argument("resize: empty image");
    if (img.width() == target_w && img.height() == target_h) return img;

    const double sx = static_cast<double>(img.width()) / target_w;
    const double sy = static_cast<double>(img.height()) / target_h;
    const int max_x = img.width() - 1;
    const int max_y = img.height() - 1;

    Image out(target_w, target_h);
    for (int y = 0; y < target_h; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(max_y));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, max_y);
        const double wy = fy - y0;
        for (int x = 0; x < target_w; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(max_x));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, max_x);
            const double wx = fx - x0;
            const double top = img.at(x0, y0) * (1.0 - wx) + img.at(x1, y0) * wx;
            const double bottom = img.at(x0, y1) * (1.0 - wx) + img.at(x1, y1) * wx;
            out.at(x, y) = round_to_u8(top * (1.0 - wy) + bottom * wy);
        }
    }
    return out;
}

Image gradient_magnitude(const Image& img) {
    const int w = img.width();
    const int h = img.height();
    if (w < 3 || h < 3) {
        throw std::invalid_argument("gradient_magnitude: image must be at least 3x3, got " +
                                    std::to_string(w) + "x" + std::to_string(h));
    }
    constexpr double kMaxResponse = 255.0 * 4.0 * std::numbers::sqrt2;
    constexpr double kScale = 255.0 / kMaxResponse;

    Image out(w, h);
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const int tl = img.at(x - 1, y - 1), t = img.at(x, y - 1), tr = img.at(x + 1, y - 1);
            const int l = img.at(x - 1, y), r = img.at(x + 1, y);
            const int bl = img.at(x - 1, y + 1), b = img.at(x, y + 1), br = img.at(x + 1, y + 1);
            const int gx = (tr + 2 * r + br) - (tl + 2 * l + bl);
            const int gy = (bl + 2 * b + br) - (tl + 2 * t + tr);
            const double mag = std::sqrt(static_cast<double>(gx * gx + gy * gy));
            out.at(x, y) = round_to_u8(mag * kScale);
        }
    }
    for (int y = 0; y < h; ++y) {
        const int iy = std::clamp(y, 1, h - 2);
        for (int x = 0; x < w; ++x) {
            if (y > 0 && y < h - 1 && x > 0 && x < w - 1) continue;
            out.at(x, y) = out.at(std::clamp(x, 1, w - 2), iy);
        }
    }
    return out;
}

BoundingBox expand_box(const BoundingBox& bbox, double margin) {
    if (!(margin >= 0.0) || !std::isfinite(margin)) {
        throw std::invalid_argument("crop margin must be finite and >= 0");
    }
    const int pad = static_cast<int>(
        std::floor(margin * std::max(bbox.width(), bbox.height()) + 0.5));
    return {bbox.x_min - pad, bbox.y_min - pad, bbox.x_max + pad, bbox.y_max + pad};
}

BoundingBox crop_window(const BoundingBox& bbox, int image_width, int image_height,
                        double margin) {
    if (!bbox.valid_for(image_width, image_height)) {
        throw std::invalid_argument(
            "bounding box (" + std::to_string(bbox.x_min) + "," + std::to_string(bbox.y_min) +
            ")-(" + std::to_string(bbox.x_max) + "," + std::to_string(bbox.y_max) +
            ") lies outside the " + std::to_string(image_width) + "x" +
            std::to_string(image_height) + " image");
    }
    BoundingBox win = expand_box(bbox, margin);
    win.x_min = std::max(win.x_min, 0);
    win.y_min = std::max(win.y_min, 0);
    win.x_max = std::min(win.x_max, image_width - 1);
    win.y_max = std::min(win.y_max, image_height - 1);
    return win;
}

Image subset_crop(const Image& img, const BoundingBox& bbox, double margin) {
    const BoundingBox win = crop_window(bbox, img.width(), img.height(), margin);
    Image cropped(win.width(), win.height());
    for (int y = 0; y < win.height(); ++y) {
        for (int x = 0; x < win.width(); ++x) {
            cropped.at(x, y) = img.at(win.x_min + x, win.y_min + y);
        }
    }
    return resize(cropped, kCanonicalSize, kCanonicalSize);
}

}  // namespace acousim::imaging
