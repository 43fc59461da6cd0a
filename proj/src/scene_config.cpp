#include "acousim/scene_config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "acousim/counter_rng.hpp"

namespace acousim::scenesim {

using nlohmann::json;

namespace {

std::invalid_argument schema_error(const std::string& key, const std::string& what) {
    return std::invalid_argument("config key '" + key + "': " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw schema_error(where.empty() ? key : where + "." + key, "unknown key");
        }
    }
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw schema_error(key, "expected a number");
    return v.get<double>();
}

void read_number(const json& obj, const char* key, double& dst, const std::string& prefix = "") {
    if (obj.contains(key)) dst = number(obj.at(key), prefix + key);
}

/// Accepts either a scalar or a [lo, hi] pair.
void read_ranged(const json& obj, const char* key, double& dst, std::optional<Range>& range,
                 const std::string& prefix = "") {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    const std::string name = prefix + key;
    if (v.is_array()) {
        if (v.size() != 2) throw schema_error(name, "range must be [lo, hi]");
        Range r{number(v[0], name), number(v[1], name)};
        if (!(r.lo <= r.hi)) throw schema_error(name, "range lower bound exceeds upper bound");
        range = r;
        dst = r.lo;
    } else {
        dst = number(v, name);
    }
}

int integer(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw schema_error(key, "expected an integer");
    return v.get<int>();
}

constexpr std::uint64_t kDrawStream = 0xD4A7;

}  // namespace

GenerationConfig parse_generation_config(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("scene config must be a JSON object");
    reject_unknown(doc,
                   {"seed", "altitude_m", "fov_deg", "illum_yaw_deg", "illum_pitch_deg",
                    "illum_roll_deg", "object_class", "object", "texture_octaves",
                    "texture_persistence", "texture_base_freq", "reflectance_range",
                    "highlight_boost", "ambient", "shadow_level", "image_size", "noise"},
                   "");

    GenerationConfig g;
    SceneConfig& s = g.scene;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw schema_error("seed", "expected a non-negative integer");
        s.seed = doc["seed"].get<std::uint64_t>();
    }
    read_ranged(doc, "altitude_m", s.altitude_m, g.altitude_m);
    read_number(doc, "fov_deg", s.fov_deg);
    read_ranged(doc, "illum_yaw_deg", s.illum_yaw_deg, g.illum_yaw_deg);
    read_ranged(doc, "illum_pitch_deg", s.illum_pitch_deg, g.illum_pitch_deg);
    read_ranged(doc, "illum_roll_deg", s.illum_roll_deg, g.illum_roll_deg);
    if (doc.contains("object_class")) {
        if (!doc["object_class"].is_string()) throw schema_error("object_class", "expected a string");
        s.object_class = object_class_from_string(doc["object_class"].get<std::string>());
    }
    if (doc.contains("object")) {
        const json& o = doc["object"];
        if (!o.is_object()) throw schema_error("object", "expected an object");
        reject_unknown(o,
                       {"length_m", "beam_m", "peak_height_m", "wingspan_m", "wing_chord_m",
                        "wing_height_ratio", "center_x_m", "center_y_m", "heading_deg",
                        "heightfield_path"},
                       "object");
        auto& op = s.object;
        const std::string p = "object.";
        read_number(o, "length_m", op.length_m, p);
        read_number(o, "beam_m", op.beam_m, p);
        read_number(o, "peak_height_m", op.peak_height_m, p);
        read_number(o, "wingspan_m", op.wingspan_m, p);
        read_number(o, "wing_chord_m", op.wing_chord_m, p);
        read_number(o, "wing_height_ratio", op.wing_height_ratio, p);
        read_ranged(o, "center_x_m", op.center_x_m, g.center_x_m, p);
        read_ranged(o, "center_y_m", op.center_y_m, g.center_y_m, p);
        read_ranged(o, "heading_deg", op.heading_deg, g.heading_deg, p);
        if (o.contains("heightfield_path")) {
            if (!o["heightfield_path"].is_string()) {
                throw schema_error("object.heightfield_path", "expected a string");
            }
            op.heightfield_path = o["heightfield_path"].get<std::string>();
        }
    }
    if (doc.contains("texture_octaves")) s.texture_octaves = integer(doc["texture_octaves"], "texture_octaves");
    read_number(doc, "texture_persistence", s.texture_persistence);
    read_number(doc, "texture_base_freq", s.texture_base_freq);
    if (doc.contains("reflectance_range")) {
        const json& r = doc["reflectance_range"];
        if (!r.is_array() || r.size() != 2) {
            throw schema_error("reflectance_range", "expected [r_min, r_max]");
        }
        s.reflectance_min = number(r[0], "reflectance_range");
        s.reflectance_max = number(r[1], "reflectance_range");
    }
    read_number(doc, "highlight_boost", s.highlight_boost);
    read_number(doc, "ambient", s.ambient);
    read_number(doc, "shadow_level", s.shadow_level);
    if (doc.contains("image_size")) s.image_size = integer(doc["image_size"], "image_size");

    if (doc.contains("noise")) {
        const json& n = doc["noise"];
        if (!n.is_object()) throw schema_error("noise", "expected an object");
        reject_unknown(n, {"enabled", "gaussian_sigma", "speckle_sigma", "speckle_model"}, "noise");
        if (n.contains("enabled")) {
            if (!n["enabled"].is_boolean()) throw schema_error("noise.enabled", "expected a boolean");
            g.noise_enabled = n["enabled"].get<bool>();
        }
        read_number(n, "gaussian_sigma", g.noise.gaussian_sigma, "noise.");
        read_number(n, "speckle_sigma", g.noise.speckle_sigma, "noise.");
        if (n.contains("speckle_model")) {
            if (!n["speckle_model"].is_string()) throw schema_error("noise.speckle_model", "expected a string");
            g.noise.speckle_model = noise::speckle_model_from_string(n["speckle_model"].get<std::string>());
        }
    }

    // Validate the extreme corners of every range, not only the base value.
    auto check_corner = [&](bool upper) {
        SceneConfig c = s;
        auto pick = [&](const std::optional<Range>& r, double& dst) {
            if (r) dst = upper ? r->hi : r->lo;
        };
        pick(g.altitude_m, c.altitude_m);
        pick(g.illum_yaw_deg, c.illum_yaw_deg);
        pick(g.illum_pitch_deg, c.illum_pitch_deg);
        pick(g.illum_roll_deg, c.illum_roll_deg);
        c.validate();
    };
    check_corner(false);
    check_corner(true);
    g.noise.validate();
    return g;
}

GenerationConfig load_generation_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene config " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return parse_generation_config(doc);
}

SceneConfig GenerationConfig::draw(std::uint64_t seed) const {
    const CounterRng rng(derive_seed(seed, kDrawStream));
    SceneConfig c = scene;
    c.seed = seed;
    std::uint64_t slot = 0;
    auto apply = [&](const std::optional<Range>& r, double& dst) {
        const std::uint64_t counter = slot++;
        if (r) dst = rng.uniform(0, counter, r->lo, r->hi);
    };
    apply(altitude_m, c.altitude_m);
    apply(illum_yaw_deg, c.illum_yaw_deg);
    apply(illum_pitch_deg, c.illum_pitch_deg);
    apply(illum_roll_deg, c.illum_roll_deg);
    apply(heading_deg, c.object.heading_deg);
    apply(center_x_m, c.object.center_x_m);
    apply(center_y_m, c.object.center_y_m);
    return c;
}

noise::NoiseConfig GenerationConfig::noise_for(std::uint64_t seed) const {
    noise::NoiseConfig n = noise;
    n.seed = derive_seed(seed, 0x401E);
    return n;
}

json to_json(const SceneConfig& c) {
    json object = {{"length_m", c.object.length_m},
                   {"beam_m", c.object.beam_m},
                   {"peak_height_m", c.object.peak_height_m},
                   {"wingspan_m", c.object.wingspan_m},
                   {"wing_chord_m", c.object.wing_chord_m},
                   {"wing_height_ratio", c.object.wing_height_ratio},
                   {"center_x_m", c.object.center_x_m},
                   {"center_y_m", c.object.center_y_m},
                   {"heading_deg", c.object.heading_deg}};
    if (!c.object.heightfield_path.empty()) object["heightfield_path"] = c.object.heightfield_path;
    return {{"seed", c.seed},
            {"altitude_m", c.altitude_m},
            {"fov_deg", c.fov_deg},
            {"illum_yaw_deg", c.illum_yaw_deg},
            {"illum_pitch_deg", c.illum_pitch_deg},
            {"illum_roll_deg", c.illum_roll_deg},
            {"object_class", to_string(c.object_class)},
            {"object", object},
            {"texture_octaves", c.texture_octaves},
            {"texture_persistence", c.texture_persistence},
            {"texture_base_freq", c.texture_base_freq},
            {"reflectance_range", {c.reflectance_min, c.reflectance_max}},
            {"highlight_boost", c.highlight_boost},
            {"ambient", c.ambient},
            {"shadow_level", c.shadow_level},
            {"image_size", c.image_size}};
}

json to_json(const noise::NoiseConfig& n) {
    return {{"gaussian_sigma", n.gaussian_sigma},
            {"speckle_sigma", n.speckle_sigma},
            {"speckle_model", noise::to_string(n.speckle_model)},
            {"seed", n.seed}};
}

json to_json(const BoundingBox& b) { return json::array({b.x_min, b.y_min, b.x_max, b.y_max}); }

GeneratedSample generate_sample(const GenerationConfig& cfg, std::uint64_t seed) {
    GeneratedSample s;
    s.seed = seed;
    s.scene = cfg.draw(seed);
    s.warnings = s.scene.validate();
    s.noise = cfg.noise_for(seed);
    s.noise_enabled = cfg.noise_enabled;
    s.render = render(s.scene);
    if (cfg.noise_enabled) s.render.image = noise::apply_noise(s.render.image, s.noise);
    return s;
}

json sidecar_json(const GeneratedSample& s, const std::string& file_name) {
    json noise = to_json(s.noise);
    noise["enabled"] = s.noise_enabled;
    return {{"file", file_name},
            {"seed", s.seed},
            {"scene", to_json(s.scene)},
            {"noise", noise},
            {"object_bbox", to_json(s.render.object_bbox)},
            {"meters_per_pixel", s.render.meters_per_pixel},
            {"shadow_pixel_count", s.render.shadow_mask.count()},
            {"warnings", s.warnings}};
}

}  // namespace acousim::scenesim
