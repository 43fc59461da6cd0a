#include "acousim/report.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace acousim::eval {

using features::Kind;
using nlohmann::json;

namespace fs = std::filesystem;

bool ReportConfig::operator==(const ReportConfig& o) const {
    auto same_kfold = [](const std::optional<KFoldOptions>& a, const std::optional<KFoldOptions>& b) {
        if (a.has_value() != b.has_value()) return false;
        return !a || (a->k == b->k && a->seed == b->seed && a->mode == b->mode);
    };
    return smoothing_epsilon == o.smoothing_epsilon && log_base == o.log_base &&
           pooling == o.pooling && gradient == o.gradient && subset == o.subset &&
           crop_margin == o.crop_margin && same_kfold(kfold, o.kfold);
}

void ValidationReport::validate() const {
    std::map<std::pair<std::string, std::string>, std::set<Kind>> seen;
    for (const auto& e : entries) {
        if (!seen[{e.dataset, e.class_label}].insert(e.kind).second) {
            throw std::invalid_argument("report lists " + e.dataset + "/" + e.class_label + "/" +
                                        features::to_string(e.kind) + " more than once");
        }
    }
    for (const auto& [key, kinds] : seen) {
        if (kinds.size() != 2) {
            throw std::invalid_argument("report is missing a feature kind for " + key.first + "/" +
                                        key.second);
        }
    }
}

std::string report_timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        try {
            t = static_cast<std::time_t>(std::stoll(epoch));
        } catch (const std::exception&) {
        }
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

ValidationReport evaluate(const DatasetManifest& real, const DatasetManifest& synth,
                          const PipelineOptions& opts, const std::optional<KFoldOptions>& kfold,
                          std::vector<ComparedHistograms>* histograms) {
    real.validate();
    synth.validate();

    ValidationReport r;
    r.tool_version = ACOUSIM_VERSION;
    r.timestamp = report_timestamp();
    r.real_dataset = real.name;
    r.synthetic_dataset = synth.name;
    r.config.smoothing_epsilon = opts.smoothing.epsilon;
    r.config.pooling = opts.pooling;
    r.config.gradient = opts.gradient;
    r.config.subset = opts.subset;
    r.config.crop_margin = opts.margin;
    r.config.kfold = kfold;

    for (const auto& label : shared_classes(real, synth, true)) {
        const ClassFeatures rf = extract_features(real.classes.at(label), opts);
        const ClassFeatures sf = extract_features(synth.classes.at(label), opts);
        for (Kind kind : {Kind::intensity, Kind::lbp}) {
            const auto p = distribution(rf, kind, opts.pooling);
            const auto q = distribution(sf, kind, opts.pooling);
            ReportEntry e;
            e.dataset = real.name;
            e.class_label = label;
            e.kind = kind;
            e.alignment = metrics::compare(p, q, opts.smoothing);
            if (kfold) e.folds = kfold_class(rf, sf, label, kind, *kfold, opts);
            r.entries.push_back(std::move(e));
            if (histograms) histograms->push_back({label, kind, p, q});
        }
    }
    r.validate();
    return r;
}

namespace {

json to_json(const FoldStats& s) {
    return {{"mean", s.mean}, {"std", s.std}, {"per_fold", s.per_fold}};
}

FoldStats fold_stats_from_json(const json& j) {
    FoldStats s;
    s.mean = j.at("mean").get<double>();
    s.std = j.at("std").get<double>();
    s.per_fold = j.at("per_fold").get<std::vector<double>>();
    return s;
}

FoldMode fold_mode_from_string(const std::string& s) {
    if (s == "real_only") return FoldMode::real_only;
    if (s == "both") return FoldMode::both;
    throw std::invalid_argument("unknown fold_mode '" + s + "'");
}

}  // namespace

json to_json(const ValidationReport& r) {
    json config = {{"smoothing_epsilon", r.config.smoothing_epsilon},
                   {"log_base", r.config.log_base},
                   {"pooling", to_string(r.config.pooling)},
                   {"gradient", r.config.gradient},
                   {"subset", r.config.subset},
                   {"crop_margin", r.config.crop_margin}};
    if (r.config.kfold) {
        config["kfold"] = {{"k", r.config.kfold->k},
                           {"seed", r.config.kfold->seed},
                           {"fold_mode", to_string(r.config.kfold->mode)},
                           {"std_ddof", 0}};
    }
    json results = json::array();
    for (const auto& e : r.entries) {
        json row = {{"dataset", e.dataset},
                    {"class", e.class_label},
                    {"kind", features::to_string(e.kind)},
                    {"kl", e.alignment.kl},
                    {"js", e.alignment.js},
                    {"emd", e.alignment.emd},
                    {"category", metrics::to_string(e.alignment.category)}};
        if (e.folds) {
            row["folds"] = {{"kl", to_json(e.folds->kl)},
                            {"js", to_json(e.folds->js)},
                            {"emd", to_json(e.folds->emd)}};
        }
        results.push_back(std::move(row));
    }
    return {{"tool", "acousim"},
            {"tool_version", r.tool_version},
            {"timestamp", r.timestamp},
            {"real_dataset", r.real_dataset},
            {"synthetic_dataset", r.synthetic_dataset},
            {"config", config},
            {"results", results}};
}

ValidationReport report_from_json(const json& doc) {
    try {
        ValidationReport r;
        r.tool_version = doc.at("tool_version").get<std::string>();
        r.timestamp = doc.at("timestamp").get<std::string>();
        r.real_dataset = doc.at("real_dataset").get<std::string>();
        r.synthetic_dataset = doc.at("synthetic_dataset").get<std::string>();
        const json& c = doc.at("config");
        r.config.smoothing_epsilon = c.at("smoothing_epsilon").get<double>();
        r.config.log_base = c.at("log_base").get<std::string>();
        r.config.pooling = pooling_from_string(c.at("pooling").get<std::string>());
        r.config.gradient = c.at("gradient").get<bool>();
        r.config.subset = c.at("subset").get<bool>();
        r.config.crop_margin = c.at("crop_margin").get<double>();
        if (c.contains("kfold")) {
            const json& k = c["kfold"];
            r.config.kfold = KFoldOptions{k.at("k").get<int>(), k.at("seed").get<std::uint64_t>(),
                                          fold_mode_from_string(k.at("fold_mode").get<std::string>())};
        }
        for (const json& row : doc.at("results")) {
            ReportEntry e;
            e.dataset = row.at("dataset").get<std::string>();
            e.class_label = row.at("class").get<std::string>();
            e.kind = features::kind_from_string(row.at("kind").get<std::string>());
            e.alignment.kl = row.at("kl").get<double>();
            e.alignment.js = row.at("js").get<double>();
            e.alignment.emd = row.at("emd").get<double>();
            e.alignment.category = metrics::category_from_string(row.at("category").get<std::string>());
            if (row.contains("folds")) {
                const json& f = row["folds"];
                e.folds = FoldMetrics{fold_stats_from_json(f.at("kl")), fold_stats_from_json(f.at("js")),
                                      fold_stats_from_json(f.at("emd"))};
            }
            r.entries.push_back(std::move(e));
        }
        r.validate();
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

std::vector<std::string> csv_columns(bool with_folds) {
    std::vector<std::string> cols = {"dataset", "class", "kind", "kl", "js", "emd", "category"};
    if (with_folds) {
        for (const char* c : {"kl_mean", "kl_std", "js_mean", "js_std", "emd_mean", "emd_std"}) {
            cols.emplace_back(c);
        }
    }
    return cols;
}

void write_csv(std::ostream& out, const ValidationReport& r) {
    const bool with_folds = r.config.kfold.has_value();
    const auto cols = csv_columns(with_folds);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& e : r.entries) {
        out << e.dataset << ',' << e.class_label << ',' << features::to_string(e.kind) << ','
            << e.alignment.kl << ',' << e.alignment.js << ',' << e.alignment.emd << ','
            << metrics::to_string(e.alignment.category);
        if (with_folds) {
            if (e.folds) {
                out << ',' << e.folds->kl.mean << ',' << e.folds->kl.std << ',' << e.folds->js.mean
                    << ',' << e.folds->js.std << ',' << e.folds->emd.mean << ',' << e.folds->emd.std;
            } else {
                out << ",,,,,,";
            }
        }
        out << '\n';
    }
}

void write_report(const ValidationReport& r, const fs::path& dir) {
    r.validate();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create report directory " + dir.string());
    }
    {
        std::ofstream out(dir / "report.json");
        if (!out) throw std::runtime_error("cannot write " + (dir / "report.json").string());
        out << to_json(r).dump(2) << '\n';
        if (!out) throw std::runtime_error("failed writing " + (dir / "report.json").string());
    }
    std::ofstream csv(dir / "report.csv");
    if (!csv) throw std::runtime_error("cannot write " + (dir / "report.csv").string());
    write_csv(csv, r);
    if (!csv) throw std::runtime_error("failed writing " + (dir / "report.csv").string());
}

ValidationReport read_report(const fs::path& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("cannot open " + json_path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(json_path.string() + ": " + e.what());
    }
    return report_from_json(doc);
}

}  // namespace acousim::eval
