#pragma once

#include "acousim/image.hpp"

namespace acousim::imaging {

/// Side length every image is normalized to before statistics are taken.
inline constexpr int kCanonicalSize = 256;
inline constexpr double kDefaultCropMargin = 0.25;

/// BT.601 luma (0.299, 0.587, 0.114), rounded half-up. Single-channel
/// input is passed through. Throws std::invalid_argument for any other
/// channel count.
Image to_grayscale(const RawImage& raw);

/// Bilinear resampling with half-pixel centers. Both target dimensions
/// must be at least 3. Same-size resize returns the input unchanged.
Image resize(const Image& img, int target_w, int target_h);

/// Sobel magnitude mapped to 8 bits by the fixed factor 255 / (255*4*sqrt 2),
/// so results are comparable across images. The 1-pixel frame copies the
/// nearest interior value. Requires at least 3x3 input.
Image gradient_magnitude(const Image& img);

/// Crop window for subset_crop before it is resized: `bbox` grown by
/// margin * max(bbox width, bbox height) on every side, clamped to the
/// image.
BoundingBox crop_window(const BoundingBox& bbox, int image_width, int image_height,
                        double margin);

/// Object-centred crop, resized to kCanonicalSize x kCanonicalSize.
Image subset_crop(const Image& img, const BoundingBox& bbox,
                  double margin = kDefaultCropMargin);

/// Unclamped expansion of `bbox`, exposed for inspection.
BoundingBox expand_box(const BoundingBox& bbox, double margin);

}  // namespace acousim::imaging
