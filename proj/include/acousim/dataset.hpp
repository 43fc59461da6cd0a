#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acousim/image.hpp"

namespace acousim::eval {

enum class Role { real, synthetic };

std::string to_string(Role r);

struct ImageEntry {
    std::filesystem::path path;
    std::optional<BoundingBox> bbox;
};

/// Image files per class label for one dataset.
struct DatasetManifest {
    std::string name;
    Role role = Role::real;
    std::map<std::string, std::vector<ImageEntry>> classes;

    /// Throws std::invalid_argument when a class is empty or a path appears
    /// twice.
    void validate() const;

    bool has_class(const std::string& label) const { return classes.contains(label); }
    std::vector<std::string> class_labels() const;
};

/// Scans root/<class>/*.png, sorted lexicographically. An optional
/// root/<class>/boxes.json maps file names to [x_min, y_min, x_max, y_max].
/// Every image is decoded once to verify it and to check its box.
DatasetManifest ingest(const std::filesystem::path& root, Role role);

}  // namespace acousim::eval
