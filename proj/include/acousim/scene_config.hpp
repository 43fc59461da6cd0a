#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "acousim/noise.hpp"
#include "acousim/scene.hpp"

namespace acousim::scenesim {

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Batch-generation template: a base SceneConfig, optional per-seed ranges
/// for the randomized fields, and the sensor noise applied afterwards.
struct GenerationConfig {
    SceneConfig scene;
    noise::NoiseConfig noise;
    bool noise_enabled = true;

    std::optional<Range> altitude_m;
    std::optional<Range> illum_yaw_deg;
    std::optional<Range> illum_pitch_deg;
    std::optional<Range> illum_roll_deg;
    std::optional<Range> heading_deg;
    std::optional<Range> center_x_m;
    std::optional<Range> center_y_m;

    /// Scene for one image: ranged fields drawn uniformly from a counter
    /// stream keyed on `seed`, scene.seed set to `seed`.
    SceneConfig draw(std::uint64_t seed) const;

    /// Noise settings for one image, seeded from `seed`.
    noise::NoiseConfig noise_for(std::uint64_t seed) const;
};

/// Parses the scene JSON document. Unknown keys, wrong types and invalid
/// ranges throw std::invalid_argument with the offending key in the message.
GenerationConfig parse_generation_config(const nlohmann::json& doc);
GenerationConfig load_generation_config(const std::string& path);

nlohmann::json to_json(const SceneConfig& cfg);
nlohmann::json to_json(const noise::NoiseConfig& cfg);
nlohmann::json to_json(const BoundingBox& box);

struct GeneratedSample {
    std::uint64_t seed = 0;
    SceneConfig scene;
    noise::NoiseConfig noise;
    bool noise_enabled = true;
    RenderOutput render;  ///< render.image holds the final (noisy) image
    std::vector<std::string> warnings;
};

GeneratedSample generate_sample(const GenerationConfig& cfg, std::uint64_t seed);

/// Sidecar document written next to each generated PNG.
nlohmann::json sidecar_json(const GeneratedSample& sample, const std::string& file_name);

}  // namespace acousim::scenesim
