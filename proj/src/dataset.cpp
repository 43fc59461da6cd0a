#include "acousim/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "acousim/image_io.hpp"

namespace acousim::eval {

namespace fs = std::filesystem;

namespace {

bool is_png(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png";
}

std::map<std::string, BoundingBox> read_boxes(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(file.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument(file.string() + ": expected a JSON object");
    std::map<std::string, BoundingBox> boxes;
    for (const auto& [name, v] : doc.items()) {
        if (!v.is_array() || v.size() != 4 ||
            !std::all_of(v.begin(), v.end(), [](const auto& e) { return e.is_number_integer(); })) {
            throw std::invalid_argument(file.string() + ": box for '" + name +
                                        "' must be [x_min, y_min, x_max, y_max] integers");
        }
        boxes[name] = BoundingBox{v[0].get<int>(), v[1].get<int>(), v[2].get<int>(), v[3].get<int>()};
    }
    return boxes;
}

}  // namespace

std::string to_string(Role r) { return r == Role::synthetic ? "synthetic" : "real"; }

void DatasetManifest::validate() const {
    if (classes.empty()) throw std::invalid_argument("dataset '" + name + "' has no classes");
    std::set<fs::path> seen;
    for (const auto& [label, entries] : classes) {
        if (entries.empty()) {
            throw std::invalid_argument("dataset '" + name + "': class '" + label + "' is empty");
        }
        for (const auto& e : entries) {
            if (!seen.insert(e.path.lexically_normal()).second) {
                throw std::invalid_argument("dataset '" + name + "': duplicate image path " +
                                            e.path.string());
            }
        }
    }
}

std::vector<std::string> DatasetManifest::class_labels() const {
    std::vector<std::string> out;
    for (const auto& [label, _] : classes) out.push_back(label);
    return out;
}

DatasetManifest ingest(const fs::path& root, Role role) {
    if (!fs::is_directory(root)) {
        throw std::runtime_error("dataset root " + root.string() + " is not a directory");
    }
    DatasetManifest m;
    m.name = root.lexically_normal().filename().string();
    if (m.name.empty()) m.name = root.lexically_normal().parent_path().filename().string();
    m.role = role;

    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    }
    std::sort(class_dirs.begin(), class_dirs.end());
    if (class_dirs.empty()) {
        throw std::invalid_argument("dataset root " + root.string() + " contains no class directories");
    }

    for (const auto& dir : class_dirs) {
        const std::string label = dir.filename().string();
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && is_png(entry.path())) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw std::invalid_argument("class directory " + dir.string() + " contains no PNG images");
        }

        std::map<std::string, BoundingBox> boxes;
        if (fs::exists(dir / "boxes.json")) boxes = read_boxes(dir / "boxes.json");

        auto& entries = m.classes[label];
        for (const auto& file : files) {
            const RawImage raw = io::read_png(file);
            ImageEntry e{file, std::nullopt};
            const std::string fname = file.filename().string();
            if (auto it = boxes.find(fname); it != boxes.end()) {
                if (!it->second.valid_for(raw.width, raw.height)) {
                    throw std::invalid_argument("box for " + file.string() + " lies outside the " +
                                                std::to_string(raw.width) + "x" +
                                                std::to_string(raw.height) + " image");
                }
                e.bbox = it->second;
                boxes.erase(it);
            }
            entries.push_back(std::move(e));
        }
        if (!boxes.empty()) {
            throw std::invalid_argument((dir / "boxes.json").string() + " names missing image '" +
                                        boxes.begin()->first + "'");
        }
    }
    m.validate();
    return m;
}

}  // namespace acousim::eval
