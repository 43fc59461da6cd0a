#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acousim/dataset.hpp"
#include "acousim/features.hpp"
#include "acousim/imaging.hpp"
#include "acousim/metrics.hpp"

namespace acousim::eval {

enum class Pooling { mean, pooled };
enum class FoldMode { real_only, both };

std::string to_string(Pooling p);
Pooling pooling_from_string(const std::string& s);
std::string to_string(FoldMode m);

struct PipelineOptions {
    bool gradient = true;  ///< Sobel mapping on both real and synthetic images
    bool subset = true;    ///< object-centred crop when a box is known
    double margin = imaging::kDefaultCropMargin;
    Pooling pooling = Pooling::mean;
    metrics::SmoothingPolicy smoothing;
};

/// grayscale -> (subset_crop | resize to 256x256) -> optional gradient.
Image preprocess(const RawImage& raw, const std::optional<BoundingBox>& bbox,
                 const PipelineOptions& opts);

/// Per-image bin counts of one class, in path order.
struct ClassFeatures {
    std::vector<features::BinCounts> intensity;
    std::vector<features::BinCounts> lbp;

    const std::vector<features::BinCounts>& of(features::Kind k) const {
        return k == features::Kind::lbp ? lbp : intensity;
    }
    std::size_t size() const noexcept { return intensity.size(); }
};

/// Loads and preprocesses every image (in parallel), sorted by path so the
/// result does not depend on input order.
ClassFeatures extract_features(std::vector<ImageEntry> entries, const PipelineOptions& opts);

/// Dataset-level distribution over the selected images (all when `subset`
/// is empty).
features::Histogram distribution(const ClassFeatures& f, features::Kind kind, Pooling pooling,
                                 std::span<const std::size_t> subset = {});

metrics::AlignmentResult dataset_alignment(const DatasetManifest& real, const DatasetManifest& synth,
                                           const std::string& class_label, features::Kind kind,
                                           const PipelineOptions& opts = {});

/// Mean and population (ddof 0) standard deviation over folds.
struct FoldStats {
    double mean = 0.0;
    double std = 0.0;
    std::vector<double> per_fold;

    static FoldStats from(std::vector<double> values);
    bool operator==(const FoldStats&) const = default;
};

struct FoldMetrics {
    FoldStats kl;
    FoldStats js;
    FoldStats emd;
    bool operator==(const FoldMetrics&) const = default;
};

struct KFoldOptions {
    int k = 5;
    std::uint64_t seed = 0;
    FoldMode mode = FoldMode::real_only;
};

/// Seeded shuffle of [0, n) split into k contiguous folds whose sizes
/// differ by at most one.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int k, std::uint64_t seed);

/// Fold j of the real class against the full synthetic class (or against
/// synthetic fold j in FoldMode::both).
FoldMetrics kfold_class(const ClassFeatures& real, const ClassFeatures& synth,
                        const std::string& class_label, features::Kind kind,
                        const KFoldOptions& kf, const PipelineOptions& opts);

struct KFoldResult {
    std::string class_label;
    features::Kind kind;
    FoldMetrics metrics;
};

/// Every class shared by both manifests, both feature kinds.
std::vector<KFoldResult> stratified_kfold(const DatasetManifest& real, const DatasetManifest& synth,
                                          const KFoldOptions& kf, const PipelineOptions& opts = {});

/// Classes present in both manifests; throws listing the labels missing on
/// either side when there is no overlap or `require_all` is set and the sets
/// differ.
std::vector<std::string> shared_classes(const DatasetManifest& real, const DatasetManifest& synth,
                                        bool require_all);

}  // namespace acousim::eval
