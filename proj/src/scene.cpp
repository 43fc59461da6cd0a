#include "acousim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "acousim/counter_rng.hpp"
#include "acousim/image_io.hpp"

namespace acousim::scenesim {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::invalid_argument config_error(const std::string& what) {
    return std::invalid_argument("scene config: " + what);
}

bool finite_all(std::initializer_list<double> values) {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double snap(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

/// Half-ellipsoid with semi-axes (a, b) in the local frame; returns the
/// height, or a negative value outside the footprint ellipse.
double half_ellipsoid(double u, double v, double a, double b, double peak) {
    const double q = (u / a) * (u / a) + (v / b) * (v / b);
    if (q > 1.0) return -1.0;
    return peak * std::sqrt(1.0 - q);
}

double object_extent(const SceneConfig& cfg) {
    const auto& o = cfg.object;
    switch (cfg.object_class) {
        case ObjectClass::ship:
            return std::max(o.length_m, o.beam_m);
        case ObjectClass::plane:
            return std::max({o.length_m, o.beam_m, o.wingspan_m, o.wing_chord_m});
        case ObjectClass::custom:
            return std::hypot(o.length_m, o.beam_m);
    }
    return 0.0;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

std::uint64_t lattice_key(std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint32_t>(iy);
}

double value_noise(const CounterRng& rng, std::uint64_t octave, double x, double y) {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx);
    const auto iy = static_cast<std::int64_t>(fy);
    const double tx = smoothstep(x - fx);
    const double ty = smoothstep(y - fy);
    const double v00 = rng.uniform(octave, lattice_key(ix, iy));
    const double v10 = rng.uniform(octave, lattice_key(ix + 1, iy));
    const double v01 = rng.uniform(octave, lattice_key(ix, iy + 1));
    const double v11 = rng.uniform(octave, lattice_key(ix + 1, iy + 1));
    const double top = v00 + (v10 - v00) * tx;
    const double bottom = v01 + (v11 - v01) * tx;
    return top + (bottom - top) * ty;
}

}  // namespace

std::string to_string(ObjectClass c) {
    switch (c) {
        case ObjectClass::plane: return "plane";
        case ObjectClass::ship: return "ship";
        case ObjectClass::custom: return "custom";
    }
    return "unknown";
}

ObjectClass object_class_from_string(const std::string& s) {
    if (s == "plane") return ObjectClass::plane;
    if (s == "ship") return ObjectClass::ship;
    if (s == "custom") return ObjectClass::custom;
    throw config_error("unknown object_class '" + s + "' (expected plane, ship or custom)");
}

std::vector<std::string> SceneConfig::validate() const {
    std::vector<std::string> warnings;
    if (!finite_all({altitude_m, fov_deg, illum_yaw_deg, illum_pitch_deg, illum_roll_deg,
                     texture_persistence, texture_base_freq, reflectance_min, reflectance_max,
                     highlight_boost, ambient, shadow_level})) {
        throw config_error("all numeric fields must be finite");
    }
    if (altitude_m <= 0.0) throw config_error("altitude_m must be positive");
    if (altitude_m < 10.0 || altitude_m > 20.0) {
        std::ostringstream os;
        os << "altitude_m " << altitude_m << " is outside the 10-20 m survey envelope";
        warnings.push_back(os.str());
    }
    if (fov_deg <= 0.0 || fov_deg >= 180.0) throw config_error("fov_deg must lie in (0, 180)");
    if (illum_pitch_deg <= 0.0 || illum_pitch_deg > 90.0) {
        throw config_error("illum_pitch_deg must lie in (0, 90]");
    }
    if (reflectance_min < 0.0 || reflectance_max > 1.0 || reflectance_min > reflectance_max) {
        throw config_error("reflectance range must satisfy 0 <= r_min <= r_max <= 1");
    }
    if (highlight_boost < 0.0) throw config_error("highlight_boost must be >= 0");
    if (ambient < 0.0 || ambient >= 1.0) throw config_error("ambient must lie in [0, 1)");
    if (shadow_level < 0.0 || shadow_level > ambient) {
        throw config_error("shadow_level must lie in [0, ambient]");
    }
    if (image_size < 3) throw config_error("image_size must be at least 3");
    if (texture_octaves < 1) throw config_error("texture_octaves must be at least 1");
    if (texture_persistence <= 0.0) throw config_error("texture_persistence must be positive");
    if (texture_base_freq <= 0.0) throw config_error("texture_base_freq must be positive");

    const auto& o = object;
    if (!finite_all({o.length_m, o.beam_m, o.peak_height_m, o.wingspan_m, o.wing_chord_m,
                     o.wing_height_ratio, o.center_x_m, o.center_y_m, o.heading_deg})) {
        throw config_error("object parameters must be finite");
    }
    if (o.length_m <= 0.0 || o.beam_m <= 0.0) {
        throw config_error("object length_m and beam_m must be positive");
    }
    if (o.peak_height_m < 0.0) throw config_error("object peak_height_m must be >= 0");
    if (object_class == ObjectClass::plane &&
        (o.wingspan_m <= 0.0 || o.wing_chord_m <= 0.0 || o.wing_height_ratio < 0.0)) {
        throw config_error("plane wingspan_m and wing_chord_m must be positive");
    }
    if (object_class == ObjectClass::custom && o.heightfield_path.empty()) {
        throw config_error("custom object_class requires object.heightfield_path");
    }
    return warnings;
}

double SceneConfig::footprint_m() const {
    return 2.0 * altitude_m * std::tan(fov_deg * kDegToRad / 2.0);
}

double SceneConfig::meters_per_pixel() const { return footprint_m() / image_size; }

HeightField::HeightField(int w, int h, double cell_size)
    : width(w), height(h), cell_size_m(cell_size),
      heights(static_cast<std::size_t>(w) * h, 0.0),
      support{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)} {}

double HeightField::sample(double fx, double fy) const {
    const int x0 = std::min(static_cast<int>(fx), width - 1);
    const int y0 = std::min(static_cast<int>(fy), height - 1);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double wx = fx - x0;
    const double wy = fy - y0;
    const double top = at(x0, y0) * (1.0 - wx) + at(x1, y0) * wx;
    const double bottom = at(x0, y1) * (1.0 - wx) + at(x1, y1) * wx;
    return top * (1.0 - wy) + bottom * wy;
}

double HeightField::max_height() const {
    return heights.empty() ? 0.0 : *std::max_element(heights.begin(), heights.end());
}

HeightField build_heightfield(const SceneConfig& cfg) {
    cfg.validate();
    const double footprint = cfg.footprint_m();
    const double extent = object_extent(cfg);
    if (extent > footprint) {
        std::ostringstream os;
        os << "object extent " << extent << " m exceeds the ground footprint " << footprint
           << " m (altitude " << cfg.altitude_m << " m, fov " << cfg.fov_deg << " deg)";
        throw std::invalid_argument(os.str());
    }

    const int n = cfg.image_size;
    const double cell = cfg.meters_per_pixel();
    HeightField field(n, n, cell);

    const auto& o = cfg.object;
    const double heading = o.heading_deg * kDegToRad;
    const double ch = std::cos(heading);
    const double sh = std::sin(heading);

    io::Pgm pgm;
    if (cfg.object_class == ObjectClass::custom) pgm = io::read_pgm(o.heightfield_path);

    for (int y = 0; y < n; ++y) {
        const double wy = (y + 0.5) * cell - footprint / 2.0 - o.center_y_m;
        for (int x = 0; x < n; ++x) {
            const double wx = (x + 0.5) * cell - footprint / 2.0 - o.center_x_m;
            const double u = wx * ch + wy * sh;
            const double v = -wx * sh + wy * ch;
            double h = -1.0;
            switch (cfg.object_class) {
                case ObjectClass::ship:
                    h = half_ellipsoid(u, v, o.length_m / 2.0, o.beam_m / 2.0, o.peak_height_m);
                    break;
                case ObjectClass::plane: {
                    const double body =
                        half_ellipsoid(u, v, o.length_m / 2.0, o.beam_m / 2.0, o.peak_height_m);
                    const double wing =
                        half_ellipsoid(u, v, o.wing_chord_m / 2.0, o.wingspan_m / 2.0,
                                       o.peak_height_m * o.wing_height_ratio);
                    h = std::max(body, wing);
                    break;
                }
                case ObjectClass::custom: {
                    const double su = (u / o.length_m + 0.5) * (pgm.width - 1);
                    const double sv = (v / o.beam_m + 0.5) * (pgm.height - 1);
                    if (su < 0.0 || sv < 0.0 || su > pgm.width - 1 || sv > pgm.height - 1) break;
                    const int x0 = static_cast<int>(su);
                    const int y0 = static_cast<int>(sv);
                    const int x1 = std::min(x0 + 1, pgm.width - 1);
                    const int y1 = std::min(y0 + 1, pgm.height - 1);
                    auto px = [&](int ix, int iy) {
                        return static_cast<double>(pgm.samples[static_cast<std::size_t>(iy) * pgm.width + ix]);
                    };
                    const double fx = su - x0;
                    const double fy = sv - y0;
                    const double s = (px(x0, y0) * (1 - fx) + px(x1, y0) * fx) * (1 - fy) +
                                     (px(x0, y1) * (1 - fx) + px(x1, y1) * fx) * fy;
                    if (s > 0.0) h = s / pgm.maxval * o.peak_height_m;
                    break;
                }
            }
            if (h >= 0.0) {
                field.at(x, y) = h;
                field.support.cells[static_cast<std::size_t>(y) * n + x] = 1;
            }
        }
    }

    if (field.support.count() == 0) {
        // Object smaller than a cell: mark the cell holding its centre.
        const int cx = static_cast<int>(std::floor((o.center_x_m + footprint / 2.0) / cell));
        const int cy = static_cast<int>(std::floor((o.center_y_m + footprint / 2.0) / cell));
        if (cx < 0 || cy < 0 || cx >= n || cy >= n) {
            throw std::invalid_argument("object centre lies outside the ground footprint");
        }
        field.support.cells[static_cast<std::size_t>(cy) * n + cx] = 1;
    }
    return field;
}

Raster reflectance_map(const SceneConfig& cfg) { return reflectance_map(cfg, build_heightfield(cfg)); }

Raster reflectance_map(const SceneConfig& cfg, const HeightField& field) {
    const CounterRng rng(derive_seed(cfg.seed, 0x7E47u));
    const double cell = field.cell_size_m;
    Raster out{field.width, field.height,
               std::vector<double>(static_cast<std::size_t>(field.width) * field.height)};

    double amp_total = 0.0;
    for (int o = 0; o < cfg.texture_octaves; ++o) amp_total += std::pow(cfg.texture_persistence, o);
    const double span = cfg.reflectance_max - cfg.reflectance_min;

    for (int y = 0; y < field.height; ++y) {
        for (int x = 0; x < field.width; ++x) {
            const double mx = (x + 0.5) * cell;
            const double my = (y + 0.5) * cell;
            double sum = 0.0;
            double freq = cfg.texture_base_freq;
            double amp = 1.0;
            for (int o = 0; o < cfg.texture_octaves; ++o) {
                sum += amp * value_noise(rng, static_cast<std::uint64_t>(o), mx * freq, my * freq);
                freq *= 2.0;
                amp *= cfg.texture_persistence;
            }
            double r = cfg.reflectance_min + span * std::clamp(sum / amp_total, 0.0, 1.0);
            if (field.support.at(x, y)) r = std::min(1.0, r + cfg.highlight_boost);
            out.at(x, y) = r;
        }
    }
    return out;
}

LightResult shadow_and_light(const HeightField& field, const SceneConfig& cfg) {
    const int w = field.width;
    const int h = field.height;
    const double cell = field.cell_size_m;
    const double pitch = cfg.illum_pitch_deg * kDegToRad;
    const double yaw = cfg.illum_yaw_deg * kDegToRad;
    const double roll = cfg.illum_roll_deg * kDegToRad;

    const double dir_x = snap(std::cos(yaw));
    const double dir_y = snap(std::sin(yaw));
    const double light_x = std::cos(pitch) * dir_x;
    const double light_y = std::cos(pitch) * dir_y;
    const double light_z = std::sin(pitch);
    const bool overhead = cfg.illum_pitch_deg >= 90.0;
    const double rise = overhead ? 0.0 : cell * std::tan(pitch);
    const double roll_amp = std::sin(roll);
    const double top = field.max_height();

    LightResult out;
    out.light = Raster{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
    out.shadow = Mask{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)};

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool shadowed = false;
            if (!overhead) {
                const double h0 = field.at(x, y);
                for (int t = 1;; ++t) {
                    const double ray = h0 + t * rise;
                    if (ray >= top) break;
                    const double px = x + t * dir_x;
                    const double py = y + t * dir_y;
                    if (px < 0.0 || py < 0.0 || px > w - 1 || py > h - 1) break;
                    if (field.sample(px, py) > ray + 1e-12) {
                        shadowed = true;
                        break;
                    }
                }
            }
            if (shadowed) {
                out.light.at(x, y) = cfg.shadow_level;
                out.shadow.cells[static_cast<std::size_t>(y) * w + x] = 1;
                continue;
            }
            const int xl = std::max(x - 1, 0), xr = std::min(x + 1, w - 1);
            const int yu = std::max(y - 1, 0), yd = std::min(y + 1, h - 1);
            const double dhdx = (field.at(xr, y) - field.at(xl, y)) / ((xr - xl) * cell);
            const double dhdy = (field.at(x, yd) - field.at(x, yu)) / ((yd - yu) * cell);
            const double norm = std::sqrt(dhdx * dhdx + dhdy * dhdy + 1.0);
            const double ndotl = (-dhdx * light_x - dhdy * light_y + light_z) / norm;

            // Position across the image perpendicular to the light azimuth, in [-1, 1].
            const double px = (x + 0.5) / w * 2.0 - 1.0;
            const double py = (y + 0.5) / h * 2.0 - 1.0;
            const double across = std::clamp(-px * dir_y + py * dir_x, -1.0, 1.0);
            const double ambient = cfg.ambient * (1.0 + roll_amp * across);
            out.light.at(x, y) =
                std::clamp(ambient + (1.0 - cfg.ambient) * std::max(0.0, ndotl), 0.0, 1.0);
        }
    }
    return out;
}

Image compose(const Raster& light, const Raster& reflectance) {
    if (light.width != reflectance.width || light.height != reflectance.height) {
        throw std::invalid_argument("compose: light and reflectance rasters differ in size");
    }
    Image img(light.width, light.height);
    auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const double v = 255.0 * light.values[i] * reflectance.values[i];
        px[i] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
    }
    return img;
}

BoundingBox support_bbox(const Mask& support) {
    BoundingBox box{support.width, support.height, -1, -1};
    for (int y = 0; y < support.height; ++y) {
        for (int x = 0; x < support.width; ++x) {
            if (!support.at(x, y)) continue;
            box.x_min = std::min(box.x_min, x);
            box.y_min = std::min(box.y_min, y);
            box.x_max = std::max(box.x_max, x);
            box.y_max = std::max(box.y_max, y);
        }
    }
    if (box.x_max < 0) throw std::invalid_argument("support_bbox: empty support mask");
    return box;
}

RenderOutput render(const SceneConfig& cfg) {
    const HeightField field = build_heightfield(cfg);
    LightResult lit = shadow_and_light(field, cfg);
    const Raster refl = reflectance_map(cfg, field);

    RenderOutput out;
    out.image = compose(lit.light, refl);
    out.object_bbox = support_bbox(field.support);
    out.shadow_mask = std::move(lit.shadow);
    out.meters_per_pixel = cfg.meters_per_pixel();
    return out;
}

}  // namespace acousim::scenesim
