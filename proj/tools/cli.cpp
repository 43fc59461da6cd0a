#include "cli.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "acousim/alignment.hpp"
#include "acousim/features.hpp"
#include "acousim/image_io.hpp"
#include "acousim/imaging.hpp"
#include "acousim/parallel.hpp"
#include "acousim/report.hpp"
#include "acousim/scene_config.hpp"

namespace acousim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct EvalFlags {
    std::string real_dir;
    std::string synth_dir;
    std::string out_dir = "report";
    std::string hist_dir;
    double epsilon = 1e-10;
    bool no_gradient = false;
    bool no_subset = false;
    std::string pooling = "mean";
    double margin = imaging::kDefaultCropMargin;

    eval::PipelineOptions options() const {
        eval::PipelineOptions o;
        o.gradient = !no_gradient;
        o.subset = !no_subset;
        o.margin = margin;
        o.pooling = eval::pooling_from_string(pooling);
        o.smoothing.epsilon = epsilon;
        return o;
    }
};

void add_eval_flags(CLI::App* cmd, EvalFlags& f) {
    cmd->add_option("real_dir", f.real_dir, "Real dataset root (<class>/<image>.png)")->required();
    cmd->add_option("synth_dir", f.synth_dir, "Synthetic dataset root")->required();
    cmd->add_option("--out", f.out_dir, "Report directory (report.json, report.csv)");
    cmd->add_option("--epsilon", f.epsilon, "KL/JS zero-bin smoothing mass")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-gradient", f.no_gradient, "Skip Sobel gradient-magnitude mapping");
    cmd->add_flag("--no-subset", f.no_subset, "Ignore boxes.json; resize whole frames");
    cmd->add_option("--pooling", f.pooling, "Dataset histogram pooling")
        ->check(CLI::IsMember({"mean", "pooled"}));
    cmd->add_option("--margin", f.margin, "Crop margin as a fraction of the box size")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--hist-dir", f.hist_dir, "Also write per-class real/synthetic histogram CSVs");
}

void write_histograms(const fs::path& dir, const std::vector<eval::ComparedHistograms>& hists) {
    fs::create_directories(dir);
    for (const auto& h : hists) {
        const std::string stem = h.class_label + "_" + features::to_string(h.kind);
        features::write_csv((dir / (stem + "_real.csv")).string(), h.real);
        features::write_csv((dir / (stem + "_synthetic.csv")).string(), h.synthetic);
    }
}

int run_eval(const EvalFlags& f, const std::optional<eval::KFoldOptions>& kfold, std::ostream& out) {
    const eval::PipelineOptions opts = f.options();
    const auto real = eval::ingest(f.real_dir, eval::Role::real);
    const auto synth = eval::ingest(f.synth_dir, eval::Role::synthetic);
    std::vector<eval::ComparedHistograms> hists;
    const auto report = eval::evaluate(real, synth, opts, kfold, f.hist_dir.empty() ? nullptr : &hists);
    eval::write_report(report, f.out_dir);
    if (!f.hist_dir.empty()) write_histograms(f.hist_dir, hists);

    for (const auto& e : report.entries) {
        out << e.dataset << '\t' << e.class_label << '\t' << features::to_string(e.kind)
            << "\tKL=" << e.alignment.kl << "\tJS=" << e.alignment.js << "\tEMD=" << e.alignment.emd
            << '\t' << metrics::to_string(e.alignment.category);
        if (e.folds) {
            out << "\tKL " << e.folds->kl.mean << " +/- " << e.folds->kl.std << "\tJS "
                << e.folds->js.mean << " +/- " << e.folds->js.std;
        }
        out << '\n';
    }
    out << "report written to " << (fs::path(f.out_dir) / "report.json").string() << '\n';
    return 0;
}

std::string image_stem(std::uint64_t seed) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sonar_%06llu", static_cast<unsigned long long>(seed));
    return buf;
}

int run_generate(const std::string& config_path, const std::string& out_dir, std::uint64_t count,
                 std::uint64_t base_seed, std::ostream& out, std::ostream& err) {
    const auto cfg = scenesim::load_generation_config(config_path);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    std::vector<BoundingBox> boxes(count);
    std::vector<std::vector<std::string>> warnings(count);
    parallel_for(count, [&](std::size_t i) {
        const std::uint64_t seed = base_seed + i;
        const auto sample = scenesim::generate_sample(cfg, seed);
        const std::string stem = image_stem(seed);
        io::write_png(dir / (stem + ".png"), sample.render.image);
        std::ofstream side(dir / (stem + ".json"));
        side << scenesim::sidecar_json(sample, stem + ".png").dump(2) << '\n';
        if (!side) throw std::runtime_error("failed writing sidecar for " + stem);
        boxes[i] = sample.render.object_bbox;
        warnings[i] = sample.warnings;
    });

    std::set<std::string> reported;
    for (const auto& w : warnings) {
        for (const auto& msg : w) {
            if (reported.insert(msg).second) err << "warning: " << msg << '\n';
        }
    }

    // Merge with any existing annotations so repeated runs into one class
    // directory stay ingestible.
    json box_doc = json::object();
    const fs::path box_path = dir / "boxes.json";
    if (fs::exists(box_path)) {
        std::ifstream in(box_path);
        box_doc = json::parse(in);
    }
    for (std::uint64_t i = 0; i < count; ++i) {
        box_doc[image_stem(base_seed + i) + ".png"] = scenesim::to_json(boxes[i]);
    }
    std::ofstream box_out(box_path);
    box_out << box_doc.dump(2) << '\n';
    if (!box_out) throw std::runtime_error("failed writing " + box_path.string());

    out << "generated " << count << " image(s) in " << out_dir << '\n';
    return 0;
}

int run_hist(const std::string& input, const std::string& kind_name, const std::string& out_csv,
             const std::string& pooling, bool preprocess, bool no_gradient, std::ostream& out) {
    const auto kind = features::kind_from_string(kind_name);
    std::vector<fs::path> files;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::recursive_directory_iterator(input)) {
            if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) throw std::invalid_argument("no PNG images under " + input);
    } else {
        files.emplace_back(input);
    }

    eval::PipelineOptions opts;
    opts.gradient = !no_gradient;
    std::vector<features::BinCounts> counts(files.size());
    parallel_for(files.size(), [&](std::size_t i) {
        const RawImage raw = io::read_png(files[i]);
        const Image img = preprocess ? eval::preprocess(raw, std::nullopt, opts) : imaging::to_grayscale(raw);
        counts[i] = kind == features::Kind::lbp ? features::lbp_counts(img) : features::intensity_counts(img);
    });

    features::Histogram h = [&] {
        if (eval::pooling_from_string(pooling) == eval::Pooling::pooled) {
            return features::aggregate_pooled(counts);
        }
        std::vector<features::Histogram> hs;
        for (const auto& c : counts) hs.push_back(features::Histogram::from_counts(c));
        return features::aggregate(hs);
    }();
    features::write_csv(out_csv, h);
    out << "histogram of " << files.size() << " image(s) written to " << out_csv << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"acousim: sonar image simulation and sim-to-real distribution validation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ACOUSIM_VERSION);

    std::string config_path, gen_out;
    std::uint64_t count = 1, gen_seed = 0;
    auto* gen = app.add_subcommand("generate", "Render synthetic sonar images from a scene config");
    gen->add_option("--config", config_path, "Scene config JSON")->required()->check(CLI::ExistingFile);
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--count", count, "Number of images");
    gen->add_option("--seed", gen_seed, "First image seed; images use seed..seed+count-1");

    EvalFlags validate_flags;
    auto* validate = app.add_subcommand("validate", "Dataset-level real vs synthetic alignment");
    add_eval_flags(validate, validate_flags);

    EvalFlags kfold_flags;
    int k = 5;
    std::uint64_t kfold_seed = 0;
    bool fold_synthetic = false;
    auto* kfold = app.add_subcommand("kfold", "Alignment plus stratified k-fold robustness");
    add_eval_flags(kfold, kfold_flags);
    kfold->add_option("--k", k, "Number of folds")->check(CLI::Range(2, 1000));
    kfold->add_option("--seed", kfold_seed, "Fold shuffle seed");
    kfold->add_flag("--fold-synthetic", fold_synthetic, "Fold the synthetic set as well");

    std::string hist_in, hist_kind = "intensity", hist_out, hist_pooling = "mean";
    bool hist_preprocess = false, hist_no_gradient = false;
    auto* hist = app.add_subcommand("hist", "Export an image or directory histogram as CSV");
    hist->add_option("input", hist_in, "PNG file or directory")->required()->check(CLI::ExistingPath);
    hist->add_option("--kind", hist_kind, "Histogram kind")->check(CLI::IsMember({"intensity", "lbp"}));
    hist->add_option("--out", hist_out, "Output CSV")->required();
    hist->add_option("--pooling", hist_pooling, "Directory pooling")->check(CLI::IsMember({"mean", "pooled"}));
    hist->add_flag("--preprocess", hist_preprocess, "Resize to 256x256 and apply gradient mapping first");
    hist->add_flag("--no-gradient", hist_no_gradient, "With --preprocess, skip gradient mapping");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*gen) return run_generate(config_path, gen_out, count, gen_seed, out, err);
        if (*validate) return run_eval(validate_flags, std::nullopt, out);
        if (*kfold) {
            eval::KFoldOptions kf{k, kfold_seed, fold_synthetic ? eval::FoldMode::both : eval::FoldMode::real_only};
            return run_eval(kfold_flags, kf, out);
        }
        if (*hist) return run_hist(hist_in, hist_kind, hist_out, hist_pooling, hist_preprocess, hist_no_gradient, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace acousim::cli
