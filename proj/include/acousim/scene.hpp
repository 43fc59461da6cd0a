#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acousim/image.hpp"

namespace acousim::scenesim {

enum class ObjectClass { plane, ship, custom };

std::string to_string(ObjectClass c);
ObjectClass object_class_from_string(const std::string& s);

/// Parametric target geometry. Lengths in meters, heading in degrees
/// counter-clockwise from +x. Ground position is relative to the footprint
/// centre.
struct ObjectParams {
    double length_m = 8.0;  ///< ship hull / plane fuselage / custom raster extent along heading
    double beam_m = 1.6;    ///< hull or fuselage width; custom raster extent across heading
    double peak_height_m = 1.2;
    double wingspan_m = 6.0;  ///< plane only
    double wing_chord_m = 1.2;
    double wing_height_ratio = 0.4;  ///< wing peak as a fraction of peak_height_m
    double center_x_m = 0.0;
    double center_y_m = 0.0;
    double heading_deg = 0.0;
    std::string heightfield_path;  ///< custom only: P5 PGM, white = peak height
};

/// One rendered frame.
///
/// Illumination angles drive the shadows: yaw is the azimuth the light comes
/// from (0 = from +x, 90 = from +y, where +y runs down the image rows),
/// pitch is its elevation above the seabed, and roll tilts the ambient term
/// into a linear gradient across the image perpendicular to the light
/// azimuth.
struct SceneConfig {
    std::uint64_t seed = 0;
    double altitude_m = 15.0;
    double fov_deg = 60.0;
    double illum_yaw_deg = 0.0;
    double illum_pitch_deg = 30.0;
    double illum_roll_deg = 0.0;
    ObjectClass object_class = ObjectClass::ship;
    ObjectParams object;
    int texture_octaves = 4;
    double texture_persistence = 0.5;
    double texture_base_freq = 0.5;  ///< cycles per meter
    double reflectance_min = 0.3;
    double reflectance_max = 0.7;
    double highlight_boost = 0.3;
    double ambient = 0.15;
    double shadow_level = 0.05;
    int image_size = 256;

    /// Throws std::invalid_argument on hard violations; returns warnings
    /// (e.g. altitude outside the 10-20 m survey envelope).
    std::vector<std::string> validate() const;

    /// Ground footprint side length, 2 * altitude * tan(fov / 2).
    double footprint_m() const;
    double meters_per_pixel() const;
};

/// Real-valued raster (light or reflectance), row-major.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// Seabed plus stamped object. `support` marks the object footprint cells
/// (set even where the stamped height is zero).
struct HeightField {
    int width = 0;
    int height = 0;
    double cell_size_m = 1.0;
    std::vector<double> heights;
    Mask support;

    HeightField() = default;
    HeightField(int w, int h, double cell_size);

    double at(int x, int y) const { return heights[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return heights[static_cast<std::size_t>(y) * width + x]; }

    /// Bilinear lookup at fractional cell coordinates (cell centres on
    /// integers). Coordinates must lie inside [0, width-1] x [0, height-1].
    double sample(double fx, double fy) const;

    double max_height() const;
};

struct LightResult {
    Raster light;
    Mask shadow;
};

struct RenderOutput {
    Image image;
    BoundingBox object_bbox;
    Mask shadow_mask;
    double meters_per_pixel = 0.0;
};

/// Flat seabed with the configured object stamped in. Throws when the object
/// does not fit in the footprint or a custom object has no raster path.
HeightField build_heightfield(const SceneConfig& cfg);

/// Seabed backscatter: seeded fractal value noise mapped into
/// [reflectance_min, reflectance_max], plus highlight_boost on object cells.
Raster reflectance_map(const SceneConfig& cfg);
Raster reflectance_map(const SceneConfig& cfg, const HeightField& field);

/// Directional light with hard ray-marched shadows.
LightResult shadow_and_light(const HeightField& field, const SceneConfig& cfg);

/// Pixelwise round(255 * light * reflectance).
Image compose(const Raster& light, const Raster& reflectance);

/// Full first-order render of one frame (no sensor noise).
RenderOutput render(const SceneConfig& cfg);

/// Tight pixel box around the object support cells.
BoundingBox support_bbox(const Mask& support);

}  // namespace acousim::scenesim
