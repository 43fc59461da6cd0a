#include "acousim/alignment.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "acousim/counter_rng.hpp"
#include "acousim/image_io.hpp"
#include "acousim/parallel.hpp"

namespace acousim::eval {

using features::Kind;

namespace {

std::uint64_t label_hash(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

}  // namespace

std::string to_string(Pooling p) { return p == Pooling::pooled ? "pooled" : "mean"; }

Pooling pooling_from_string(const std::string& s) {
    if (s == "mean") return Pooling::mean;
    if (s == "pooled") return Pooling::pooled;
    throw std::invalid_argument("unknown pooling mode '" + s + "' (expected mean or pooled)");
}

std::string to_string(FoldMode m) { return m == FoldMode::both ? "both" : "real_only"; }

Image preprocess(const RawImage& raw, const std::optional<BoundingBox>& bbox,
                 const PipelineOptions& opts) {
    const Image gray = imaging::to_grayscale(raw);
    Image norm = (opts.subset && bbox)
                     ? imaging::subset_crop(gray, *bbox, opts.margin)
                     : imaging::resize(gray, imaging::kCanonicalSize, imaging::kCanonicalSize);
    return opts.gradient ? imaging::gradient_magnitude(norm) : norm;
}

ClassFeatures extract_features(std::vector<ImageEntry> entries, const PipelineOptions& opts) {
    std::sort(entries.begin(), entries.end(),
              [](const ImageEntry& a, const ImageEntry& b) { return a.path < b.path; });
    ClassFeatures f;
    f.intensity.resize(entries.size());
    f.lbp.resize(entries.size());
    parallel_for(entries.size(), [&](std::size_t i) {
        const Image img = preprocess(io::read_png(entries[i].path), entries[i].bbox, opts);
        f.intensity[i] = features::intensity_counts(img);
        f.lbp[i] = features::lbp_counts(img);
    });
    return f;
}

features::Histogram distribution(const ClassFeatures& f, Kind kind, Pooling pooling,
                                 std::span<const std::size_t> subset) {
    const auto& counts = f.of(kind);
    std::vector<std::size_t> idx = subset.empty() ? all_indices(counts.size())
                                                  : std::vector<std::size_t>(subset.begin(), subset.end());
    std::sort(idx.begin(), idx.end());
    if (pooling == Pooling::pooled) {
        std::vector<features::BinCounts> picked;
        picked.reserve(idx.size());
        for (std::size_t i : idx) picked.push_back(counts.at(i));
        return features::aggregate_pooled(picked);
    }
    std::vector<features::Histogram> picked;
    picked.reserve(idx.size());
    for (std::size_t i : idx) picked.push_back(features::Histogram::from_counts(counts.at(i)));
    return features::aggregate(picked);
}

std::vector<std::string> shared_classes(const DatasetManifest& real, const DatasetManifest& synth,
                                        bool require_all) {
    std::vector<std::string> shared, only_real, only_synth;
    for (const auto& label : real.class_labels()) {
        (synth.has_class(label) ? shared : only_real).push_back(label);
    }
    for (const auto& label : synth.class_labels()) {
        if (!real.has_class(label)) only_synth.push_back(label);
    }
    if (shared.empty() || (require_all && (!only_real.empty() || !only_synth.empty()))) {
        std::string msg = "class sets differ between '" + real.name + "' and '" + synth.name + "'";
        auto list = [](const std::vector<std::string>& v) {
            std::string s;
            for (const auto& l : v) s += (s.empty() ? "" : ", ") + l;
            return s.empty() ? std::string("none") : s;
        };
        msg += "; missing from synthetic: " + list(only_real);
        msg += "; missing from real: " + list(only_synth);
        throw std::invalid_argument(msg);
    }
    return shared;
}

metrics::AlignmentResult dataset_alignment(const DatasetManifest& real, const DatasetManifest& synth,
                                           const std::string& class_label, Kind kind,
                                           const PipelineOptions& opts) {
    if (!real.has_class(class_label) || !synth.has_class(class_label)) {
        throw std::invalid_argument("class '" + class_label + "' is absent from " +
                                    (real.has_class(class_label) ? synth.name : real.name));
    }
    const ClassFeatures rf = extract_features(real.classes.at(class_label), opts);
    const ClassFeatures sf = extract_features(synth.classes.at(class_label), opts);
    return metrics::compare(distribution(rf, kind, opts.pooling), distribution(sf, kind, opts.pooling),
                            opts.smoothing);
}

FoldStats FoldStats::from(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("FoldStats: no fold values");
    // Shifted by the first value so identical folds give exactly zero spread.
    const double ref = values.front();
    const double n = static_cast<double>(values.size());
    double mean_shift = 0.0;
    for (double v : values) mean_shift += v - ref;
    mean_shift /= n;
    double ss = 0.0;
    for (double v : values) {
        const double d = (v - ref) - mean_shift;
        ss += d * d;
    }
    FoldStats s;
    s.mean = ref + mean_shift;
    s.std = std::sqrt(ss / n);
    s.per_fold = std::move(values);
    return s;
}

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
    if (n < static_cast<std::size_t>(k)) {
        throw std::invalid_argument("cannot split " + std::to_string(n) + " images into " +
                                    std::to_string(k) + " folds");
    }
    std::vector<std::size_t> perm = all_indices(n);
    const CounterRng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.bits(0, i) % (i + 1));
        std::swap(perm[i], perm[j]);
    }
    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    const std::size_t kk = static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < kk; ++j) {
        folds[j].assign(perm.begin() + static_cast<std::ptrdiff_t>(j * n / kk),
                        perm.begin() + static_cast<std::ptrdiff_t>((j + 1) * n / kk));
    }
    return folds;
}

FoldMetrics kfold_class(const ClassFeatures& real, const ClassFeatures& synth,
                        const std::string& class_label, Kind kind, const KFoldOptions& kf,
                        const PipelineOptions& opts) {
    auto check = [&](const ClassFeatures& f, const char* side) {
        if (f.size() < static_cast<std::size_t>(kf.k)) {
            throw std::invalid_argument(std::string(side) + " class '" + class_label + "' has " +
                                        std::to_string(f.size()) + " images, fewer than k = " +
                                        std::to_string(kf.k));
        }
    };
    check(real, "real");
    const std::uint64_t class_seed = derive_seed(kf.seed, label_hash(class_label));
    const auto real_folds = make_folds(real.size(), kf.k, class_seed);

    std::vector<std::vector<std::size_t>> synth_folds;
    std::optional<features::Histogram> synth_full;
    if (kf.mode == FoldMode::both) {
        check(synth, "synthetic");
        synth_folds = make_folds(synth.size(), kf.k, derive_seed(class_seed, 0x5E7));
    } else {
        synth_full = distribution(synth, kind, opts.pooling);
    }

    std::vector<double> kl, js, emd;
    for (int j = 0; j < kf.k; ++j) {
        const auto p = distribution(real, kind, opts.pooling, real_folds[static_cast<std::size_t>(j)]);
        const auto q = synth_full ? *synth_full
                                  : distribution(synth, kind, opts.pooling,
                                                 synth_folds[static_cast<std::size_t>(j)]);
        const auto r = metrics::compare(p, q, opts.smoothing);
        kl.push_back(r.kl);
        js.push_back(r.js);
        emd.push_back(r.emd);
    }
    return {FoldStats::from(std::move(kl)), FoldStats::from(std::move(js)),
            FoldStats::from(std::move(emd))};
}

std::vector<KFoldResult> stratified_kfold(const DatasetManifest& real, const DatasetManifest& synth,
                                          const KFoldOptions& kf, const PipelineOptions& opts) {
    std::vector<KFoldResult> out;
    for (const auto& label : shared_classes(real, synth, false)) {
        const auto& real_entries = real.classes.at(label);
        if (real_entries.size() < static_cast<std::size_t>(kf.k)) {
            throw std::invalid_argument("real class '" + label + "' has " +
                                        std::to_string(real_entries.size()) +
                                        " images, fewer than k = " + std::to_string(kf.k));
        }
        const ClassFeatures rf = extract_features(real_entries, opts);
        const ClassFeatures sf = extract_features(synth.classes.at(label), opts);
        for (Kind kind : {Kind::intensity, Kind::lbp}) {
            out.push_back({label, kind, kfold_class(rf, sf, label, kind, kf, opts)});
        }
    }
    return out;
}

}  // namespace acousim::eval
