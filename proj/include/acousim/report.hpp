#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "acousim/alignment.hpp"

namespace acousim::eval {

/// Echo of every setting that changes the numbers in a report.
struct ReportConfig {
    double smoothing_epsilon = 1e-10;
    std::string log_base = "e";
    Pooling pooling = Pooling::mean;
    bool gradient = true;
    bool subset = true;
    double crop_margin = imaging::kDefaultCropMargin;
    std::optional<KFoldOptions> kfold;  ///< absent when no fold analysis ran

    bool operator==(const ReportConfig& o) const;
};

struct ReportEntry {
    std::string dataset;
    std::string class_label;
    features::Kind kind = features::Kind::intensity;
    metrics::AlignmentResult alignment;
    std::optional<FoldMetrics> folds;

    bool operator==(const ReportEntry&) const = default;
};

struct ValidationReport {
    std::string tool_version;
    std::string timestamp;
    std::string real_dataset;
    std::string synthetic_dataset;
    ReportConfig config;
    std::vector<ReportEntry> entries;

    /// Every (dataset, class) must appear exactly once per feature kind.
    void validate() const;

    bool operator==(const ValidationReport&) const = default;
};

/// Aggregated real and synthetic distributions behind one report entry.
struct ComparedHistograms {
    std::string class_label;
    features::Kind kind;
    features::Histogram real;
    features::Histogram synthetic;
};

/// Dataset-level alignment for every shared class and both feature kinds,
/// plus fold statistics when `kfold` is given. Classes must match on both
/// sides.
ValidationReport evaluate(const DatasetManifest& real, const DatasetManifest& synth,
                          const PipelineOptions& opts, const std::optional<KFoldOptions>& kfold,
                          std::vector<ComparedHistograms>* histograms = nullptr);

/// UTC ISO-8601 time; honours SOURCE_DATE_EPOCH for reproducible output.
std::string report_timestamp();

nlohmann::json to_json(const ValidationReport& r);
ValidationReport report_from_json(const nlohmann::json& doc);

/// Column names of the flat CSV, with or without the fold columns.
std::vector<std::string> csv_columns(bool with_folds);
void write_csv(std::ostream& out, const ValidationReport& r);

/// Writes dir/report.json and dir/report.csv, creating dir when needed.
void write_report(const ValidationReport& r, const std::filesystem::path& dir);
ValidationReport read_report(const std::filesystem::path& json_path);

}  // namespace acousim::eval
