// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include "json.hpp"
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "acousim/alignment.hpp"
#include "acousim/features.hpp"
#include "acousim/metrics.hpp"
#include "acousim/noise.hpp"
#include "acousim/report.hpp"
#include "acousim/scene.hpp"
#include "acousim/scene_config.hpp"
#include "oracles/lbp_oracle.hpp"
#include "oracles/transport_oracle.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace acousim;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream s;
    s.precision(prec);
    s << v;
    return s.str();
}

std::vector<double> random_histogram(std::mt19937_64& gen, std::size_t bins, double zero_prob) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> h(bins);
    double sum = 0.0;
    for (auto& v : h) {
        v = u(gen) < zero_prob ? 0.0 : u(gen);
        sum += v;
    }
    if (sum == 0.0) {
        h[0] = 1.0;
        sum = 1.0;
    }
    for (auto& v : h) v /= sum;
    return h;
}

// ---------------------------------------------------------------- metrics

Outcome metric_oracles() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 gen(2024);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_histogram(gen, 8, 0.2);
        const auto q = random_histogram(gen, 8, 0.2);
        worst = std::max(worst, std::abs(metrics::emd_1d(p, q) - oracle::brute_force_emd(p, q)));
    }
    o.require(worst <= 1e-9, "EMD vs transport oracle max error " + fmt(worst));

    std::vector<double> p(256, 0.0), q(256, 0.0);
    p[0] = p[1] = 0.5;
    q[0] = 0.25;
    q[1] = 0.75;
    const double kl = metrics::kl_divergence(p, q);
    o.require(std::abs(kl - 0.1438) <= 1e-4, "hand KL " + fmt(kl));

    std::vector<double> a(256, 0.0), b(256, 0.0);
    a[0] = 1.0;
    b[255] = 1.0;
    const double js = metrics::js_divergence(a, b);
    o.require(std::abs(js - std::numbers::ln2) <= 1e-6, "disjoint JS " + fmt(js, 12));

    const double secs = seconds_since(t0);
    o.require(secs < 10.0, "runtime " + fmt(secs) + " s");
    if (o.pass) {
        o.detail = "1000 pairs, max EMD err " + fmt(worst, 3) + ", KL " + fmt(kl, 6) + ", JS " +
                   fmt(js, 10) + ", " + fmt(secs, 3) + " s";
    }
    return o;
}

Outcome metric_identities() {
    Outcome o;
    std::mt19937_64 gen(77);
    double max_asym = 0.0, max_self = 0.0, max_tri = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_histogram(gen, 256, i % 3 == 0 ? 0.5 : 0.0);
        const auto q = random_histogram(gen, 256, i % 5 == 0 ? 0.5 : 0.0);
        const auto r = random_histogram(gen, 256, 0.1);
        const double kl = metrics::kl_divergence(p, q);
        const double js = metrics::js_divergence(p, q);
        const double emd = metrics::emd_1d(p, q);
        o.require(kl >= 0.0 && js >= 0.0 && emd >= 0.0, "negative metric at pair " + std::to_string(i));
        o.require(js <= std::numbers::ln2, "JS above ln 2 at pair " + std::to_string(i));
        max_asym = std::max(max_asym, std::abs(js - metrics::js_divergence(q, p)));
        max_self = std::max({max_self, metrics::kl_divergence(p, p), metrics::js_divergence(p, p),
                             metrics::emd_1d(p, p)});
        max_tri = std::max(max_tri, emd - (metrics::emd_1d(p, r) + metrics::emd_1d(r, q)));
    }
    o.require(max_asym <= 1e-12, "JS asymmetry " + fmt(max_asym));
    o.require(max_self < 1e-12, "self distance " + fmt(max_self));
    o.require(max_tri <= 1e-9, "EMD triangle violation " + fmt(max_tri));
    if (o.pass) {
        o.detail = "1000 pairs, JS asym " + fmt(max_asym, 3) + ", self max " + fmt(max_self, 3) +
                   ", triangle slack " + fmt(max_tri, 3);
    }
    return o;
}

Outcome categorization() {
    Outcome o;
    using metrics::Category;
    const std::vector<std::pair<double, Category>> cases = {
        {0.19999, Category::High}, {0.2, Category::Moderate}, {0.69999, Category::Moderate},
        {0.7, Category::Low},      {0.1804, Category::High},  {0.5442, Category::Moderate},
        {0.9173, Category::Low}};
    for (const auto& [kl, want] : cases) {
        const Category got = metrics::categorize(kl);
        o.require(got == want, fmt(kl) + " -> " + metrics::to_string(got));
    }
    if (o.pass) o.detail = "7 boundary/reference values";
    return o;
}

// ---------------------------------------------------------------- features

Outcome lbp_correctness() {
    Outcome o;
    std::mt19937 gen(5);
    std::uniform_int_distribution<int> size(5, 16), pix(0, 255), coarse(0, 3);
    int n = 0;
    for (; n < 200; ++n) {
        const int w = size(gen), h = size(gen);
        Image img(w, h);
        std::vector<int> raw(static_cast<std::size_t>(w) * h);
        // Alternate fine and coarse levels so ties (>=) are exercised.
        for (std::size_t i = 0; i < raw.size(); ++i) {
            raw[i] = n % 2 ? pix(gen) : coarse(gen) * 60;
            img.pixels()[i] = static_cast<std::uint8_t>(raw[i]);
        }
        const auto got = features::lbp_histogram(img);
        const auto want = oracle::lbp_histogram(raw, w, h);
        for (std::size_t b = 0; b < 256; ++b) {
            if (got[b] != want[b]) {
                o.require(false, "image " + std::to_string(n) + " bin " + std::to_string(b));
                return o;
            }
        }
    }
    const auto flat = features::lbp_histogram(Image(9, 7, 133));
    o.require(flat[255] == 1.0, "constant image bin 255 = " + fmt(flat[255]));
    if (o.pass) o.detail = std::to_string(n) + " random images exact, constant -> bin 255";
    return o;
}

// ---------------------------------------------------------------- scenesim

scenesim::GenerationConfig random_generation(scenesim::ObjectClass cls) {
    scenesim::GenerationConfig g;
    g.scene.object_class = cls;
    g.altitude_m = scenesim::Range{10.0, 20.0};
    g.illum_yaw_deg = scenesim::Range{0.0, 360.0};
    g.illum_pitch_deg = scenesim::Range{15.0, 75.0};
    g.illum_roll_deg = scenesim::Range{-20.0, 20.0};
    g.heading_deg = scenesim::Range{0.0, 180.0};
    g.center_x_m = scenesim::Range{-1.0, 1.0};
    g.center_y_m = scenesim::Range{-1.0, 1.0};
    g.noise_enabled = false;
    return g;
}

Outcome formation_law() {
    Outcome o;
    int configs = 0;
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        const auto cls = seed % 2 ? scenesim::ObjectClass::plane : scenesim::ObjectClass::ship;
        const auto gen = random_generation(cls);
        const scenesim::SceneConfig c = gen.draw(seed);
        const auto sample = scenesim::generate_sample(gen, seed);
        const auto field = scenesim::build_heightfield(c);
        const auto lr = scenesim::shadow_and_light(field, c);
        const auto refl = scenesim::reflectance_map(c, field);
        const Image& img = sample.render.image;
        for (int y = 0; y < img.height() && o.pass; ++y) {
            for (int x = 0; x < img.width(); ++x) {
                const double want = std::round(255.0 * lr.light.at(x, y) * refl.at(x, y));
                if (img.at(x, y) != want) {
                    o.require(false, "seed " + std::to_string(seed) + " pixel (" + std::to_string(x) + "," +
                                         std::to_string(y) + ")");
                    break;
                }
            }
        }
        ++configs;
    }
    if (o.pass) o.detail = std::to_string(configs) + " random configs, every pixel exact";
    return o;
}

Outcome shadow_geometry() {
    Outcome o;
    const int n = 81, mid = n / 2;
    const double cell = 0.1, h = 1.0;
    int worst = 0;
    for (double pitch : {20.0, 30.0, 45.0, 60.0}) {
        for (int yaw : {0, 90, 180, 270}) {
            scenesim::HeightField f(n, n, cell);
            f.at(mid, mid) = h;
            f.support.cells[static_cast<std::size_t>(mid) * n + mid] = 1;
            scenesim::SceneConfig c;
            c.illum_pitch_deg = pitch;
            c.illum_yaw_deg = yaw;
            const auto lr = scenesim::shadow_and_light(f, c);
            // Shadow runs opposite to the light azimuth.
            const int dx = -static_cast<int>(std::lround(std::cos(yaw * std::numbers::pi / 180.0)));
            const int dy = -static_cast<int>(std::lround(std::sin(yaw * std::numbers::pi / 180.0)));
            int run = 0;
            while (lr.shadow.at(mid + dx * (run + 1), mid + dy * (run + 1))) ++run;
            const double want = std::ceil(h / (cell * std::tan(pitch * std::numbers::pi / 180.0)));
            const int err = static_cast<int>(std::abs(run - want));
            worst = std::max(worst, err);
            const std::string tag = "pitch " + fmt(pitch) + " yaw " + std::to_string(yaw);
            o.require(err <= 1, tag + ": run " + std::to_string(run) + " vs " + fmt(want));
            o.require(static_cast<int>(lr.shadow.count()) == run, tag + ": shadow off the away side");
        }
    }

    // Rendered scenes: shadows lie beyond the object on the away side, and
    // raising the light never grows them.
    for (int yaw : {0, 90, 180, 270}) {
        scenesim::SceneConfig c;
        c.seed = 9;
        c.altitude_m = 10.0;
        c.object.heading_deg = 30.0;
        c.illum_yaw_deg = yaw;
        const auto field = scenesim::build_heightfield(c);
        const double dx = std::round(std::cos(yaw * std::numbers::pi / 180.0));
        const double dy = std::round(std::sin(yaw * std::numbers::pi / 180.0));
        double lit_edge = -1e9;
        for (int y = 0; y < field.height; ++y)
            for (int x = 0; x < field.width; ++x)
                if (field.support.at(x, y)) lit_edge = std::max(lit_edge, dx * x + dy * y);
        std::size_t prev = std::numeric_limits<std::size_t>::max();
        for (double pitch : {10.0, 20.0, 30.0, 45.0, 60.0, 80.0}) {
            c.illum_pitch_deg = pitch;
            const auto lr = scenesim::shadow_and_light(field, c);
            const std::size_t count = lr.shadow.count();
            o.require(count <= prev, "yaw " + std::to_string(yaw) + ": shadow grows at pitch " + fmt(pitch));
            prev = count;
            for (int y = 0; y < field.height; ++y)
                for (int x = 0; x < field.width; ++x)
                    if (lr.shadow.at(x, y) && dx * x + dy * y >= lit_edge)
                        o.require(false, "yaw " + std::to_string(yaw) + ": shadow on the lit side");
        }
        c.illum_pitch_deg = 10.0;
        o.require(scenesim::shadow_and_light(field, c).shadow.count() > 0, "no shadow at low pitch");
    }
    if (o.pass) o.detail = "16 pillar cases, max run error " + std::to_string(worst) + " cell(s); side and pitch order hold";
    return o;
}

Outcome altitude_law() {
    Outcome o;
    int cases = 0;
    for (auto cls : {scenesim::ObjectClass::ship, scenesim::ObjectClass::plane}) {
        for (double heading : {0.0, 35.0, 90.0}) {
            scenesim::SceneConfig c;
            c.seed = 3;
            c.object_class = cls;
            c.object.heading_deg = heading;
            c.altitude_m = 10.0;
            const auto low = scenesim::render(c);
            c.altitude_m = 20.0;
            const auto high = scenesim::render(c);
            const std::string tag = scenesim::to_string(cls) + " heading " + fmt(heading);
            o.require(high.meters_per_pixel == 2.0 * low.meters_per_pixel, tag + ": meters_per_pixel not doubled");
            const double ew = std::abs(high.object_bbox.width() - low.object_bbox.width() / 2.0);
            const double eh = std::abs(high.object_bbox.height() - low.object_bbox.height() / 2.0);
            o.require(ew <= 1.0 && eh <= 1.0, tag + ": bbox " + std::to_string(low.object_bbox.width()) + "x" +
                                                 std::to_string(low.object_bbox.height()) + " -> " +
                                                 std::to_string(high.object_bbox.width()) + "x" +
                                                 std::to_string(high.object_bbox.height()));
            ++cases;
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " scenes, half size within 1 px, exact 2x meters_per_pixel";
    return o;
}

// ---------------------------------------------------------------- noise

Outcome noise_moments() {
    Outcome o;
    const Image flat(256, 256, 128);
    const double n = static_cast<double>(flat.size());
    std::uint64_t seed = 100;
    std::string summary;
    for (double sg : {5.0, 10.0}) {
        for (double ss : {0.1, 0.2}) {
            const Image out = noise::apply_noise(flat, {sg, ss, seed++});
            double sum = 0.0;
            for (auto p : out.pixels()) sum += p;
            const double mean = sum / n;
            double m2 = 0.0, m4 = 0.0;
            for (auto p : out.pixels()) {
                const double d = p - mean;
                m2 += d * d;
                m4 += d * d * d * d;
            }
            m2 /= n;
            m4 /= n;
            // (128 + g) * s with independent g ~ N(0, sg^2), s ~ N(1, ss^2),
            // plus uniform rounding error.
            const double var = 128.0 * 128.0 * ss * ss + sg * sg * (1.0 + ss * ss) + 1.0 / 12.0;
            const double mean_bound = 3.0 * std::sqrt(var / n);
            const double var_bound = 3.0 * std::sqrt((m4 - m2 * m2) / n);
            const std::string tag = "sg " + fmt(sg) + " ss " + fmt(ss);
            o.require(std::abs(mean - 128.0) <= mean_bound,
                      tag + ": mean " + fmt(mean) + " outside +/-" + fmt(mean_bound));
            o.require(std::abs(m2 - var) <= var_bound,
                      tag + ": var " + fmt(m2) + " vs " + fmt(var) + " +/-" + fmt(var_bound));
            summary += tag + ": std " + fmt(std::sqrt(m2), 4) + "/" + fmt(std::sqrt(var), 4) + "; ";
        }
    }
    std::mt19937 gen(1);
    Image rnd(97, 61);
    for (auto& p : rnd.pixels()) p = static_cast<std::uint8_t>(gen() & 0xFF);
    o.require(noise::apply_noise(rnd, {0.0, 0.0, 5}) == rnd, "zero sigma is not the identity");
    if (o.pass) o.detail = summary + "zero sigma identity";
    return o;
}

// ---------------------------------------------------------------- closed loop

std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

int run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + shell_quote(ACOUSIM_CLI_PATH) + " " + args +
                            " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

json loop_config(const std::string& cls, double gaussian_sigma, double speckle_sigma) {
    return json{{"altitude_m", {10, 20}},
                {"illum_yaw_deg", {0, 360}},
                {"illum_pitch_deg", {20, 45}},
                {"illum_roll_deg", {-10, 10}},
                {"object_class", cls},
                {"object", {{"heading_deg", {0, 180}}, {"center_x_m", {-1, 1}}, {"center_y_m", {-1, 1}}}},
                {"noise", {{"gaussian_sigma", gaussian_sigma}, {"speckle_sigma", speckle_sigma}}}};
}

void generate_set(const fs::path& cfg_dir, const fs::path& root, const std::string& cls, std::uint64_t seed,
                  int count, double gs, double ss) {
    const fs::path cfg = cfg_dir / (cls + "_" + fmt(gs) + "_" + fmt(ss) + ".json");
    std::ofstream(cfg) << loop_config(cls, gs, ss).dump();
    const std::string args = "generate --config " + shell_quote(cfg.string()) + " --out " +
                             shell_quote((root / cls).string()) + " --count " + std::to_string(count) +
                             " --seed " + std::to_string(seed);
    if (run_cli(args) != 0) throw std::runtime_error("acousim generate failed for " + root.string());
}

struct ClosedLoop {
    testing::TempDir dir{"acousim_accept"};
    fs::path set_a = dir / "set_a";
    fs::path set_b = dir / "set_b";
};

Outcome closed_loop(ClosedLoop& loop) {
    Outcome o;
    const auto t0 = Clock::now();
    // Two classes of 50 images per set; seeds never overlap between sets.
    generate_set(loop.dir.path(), loop.set_a, "ship", 0, 50, 8.0, 0.15);
    generate_set(loop.dir.path(), loop.set_a, "plane", 100, 50, 8.0, 0.15);
    generate_set(loop.dir.path(), loop.set_b, "ship", 1000, 50, 8.0, 0.15);
    generate_set(loop.dir.path(), loop.set_b, "plane", 1100, 50, 8.0, 0.15);
    const auto a = eval::ingest(loop.set_a, eval::Role::real);
    const auto b = eval::ingest(loop.set_b, eval::Role::synthetic);
    const auto report = eval::evaluate(a, b, {}, std::nullopt);
    double max_int = 0.0, max_lbp = 0.0;
    for (const auto& e : report.entries) {
        if (e.kind == features::Kind::intensity) {
            max_int = std::max(max_int, e.alignment.kl);
        } else {
            max_lbp = std::max(max_lbp, e.alignment.kl);
        }
    }
    o.require(max_int < 0.2, "intensity KL " + fmt(max_int));
    o.require(max_lbp < 0.07, "texture KL " + fmt(max_lbp));

    // Noise gap: one reference at sigma 0, one scene set rendered at rising
    // additive noise.
    const fs::path ref = loop.dir / "gap_ref";
    generate_set(loop.dir.path(), ref, "ship", 2000, 100, 0.0, 0.0);
    const auto ref_m = eval::ingest(ref, eval::Role::real);
    std::vector<double> gap;
    for (double sigma : {0.0, 8.0, 16.0}) {
        const fs::path root = loop.dir / ("gap_" + fmt(sigma));
        generate_set(loop.dir.path(), root, "ship", 3000, 100, sigma, 0.0);
        gap.push_back(eval::dataset_alignment(ref_m, eval::ingest(root, eval::Role::synthetic), "ship",
                                              features::Kind::intensity)
                          .kl);
    }
    o.require(gap[0] <= gap[1] && gap[1] <= gap[2],
              "noise-gap KL not monotone: " + fmt(gap[0]) + ", " + fmt(gap[1]) + ", " + fmt(gap[2]));
    const double secs = seconds_since(t0);
    o.require(secs < 120.0, "runtime " + fmt(secs) + " s");
    if (o.pass) {
        o.detail = "2x100 images: max KL intensity " + fmt(max_int, 4) + ", texture " + fmt(max_lbp, 4) +
                   "; gap KL " + fmt(gap[0], 4) + " <= " + fmt(gap[1], 4) + " <= " + fmt(gap[2], 4) + "; " +
                   fmt(secs, 3) + " s";
    }
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome kfold_protocol(ClosedLoop& loop) {
    Outcome o;
    const auto a = eval::ingest(loop.set_a, eval::Role::real);
    const auto b = eval::ingest(loop.set_b, eval::Role::synthetic);
    const auto results = eval::stratified_kfold(a, b, {5, 17});
    double worst_mean = 0.0, worst_std = 0.0;
    for (const auto& r : results) {
        for (const auto* s : {&r.metrics.kl, &r.metrics.js, &r.metrics.emd}) {
            o.require(s->per_fold.size() == 5, "fold count");
            long double sum = 0.0L;
            for (double v : s->per_fold) sum += v;
            const long double mean = sum / 5.0L;
            long double sq = 0.0L;
            for (double v : s->per_fold) sq += (v - mean) * (v - mean);
            worst_mean = std::max(worst_mean, static_cast<double>(std::abs(s->mean - mean)));
            worst_std = std::max(worst_std, static_cast<double>(std::abs(s->std - std::sqrt(sq / 5.0L))));
        }
    }
    o.require(worst_mean <= 1e-12 && worst_std <= 1e-12,
              "fold stats differ: mean " + fmt(worst_mean) + " std " + fmt(worst_std));

    const fs::path r1 = loop.dir / "kfold_r1", r2 = loop.dir / "kfold_r2";
    const std::string base = "kfold " + shell_quote(loop.set_a.string()) + " " + shell_quote(loop.set_b.string()) +
                             " --k 5 --seed 17 --out ";
    o.require(run_cli(base + shell_quote(r1.string()), "SOURCE_DATE_EPOCH=0 ACOUSIM_THREADS=1") == 0 &&
                  run_cli(base + shell_quote(r2.string()), "SOURCE_DATE_EPOCH=0 ACOUSIM_THREADS=3") == 0,
              "acousim kfold failed");
    o.require(slurp(r1 / "report.json") == slurp(r2 / "report.json") &&
                  slurp(r1 / "report.csv") == slurp(r2 / "report.csv"),
              "kfold reports differ between runs");

    return o;
}

Outcome kfold_degenerate(ClosedLoop& loop, Outcome o) {
    // Five copies of one image: every fold is the same distribution.
    const fs::path same = loop.dir / "identical";
    fs::create_directories(same / "ship");
    for (int i = 0; i < 5; ++i) {
        fs::copy_file(loop.set_a / "ship/sonar_000000.png", same / "ship" / ("c" + std::to_string(i) + ".png"));
    }
    const auto real = eval::ingest(same, eval::Role::real);
    const auto synth = eval::ingest(loop.set_b, eval::Role::synthetic);
    eval::DatasetManifest synth_ship = synth;
    synth_ship.classes.erase("plane");
    for (const auto& r : eval::stratified_kfold(real, synth_ship, {5, 1})) {
        o.require(r.metrics.kl.std == 0.0 && r.metrics.js.std == 0.0 && r.metrics.emd.std == 0.0,
                  "identical folds give nonzero std");
    }
    if (o.pass) o.detail = "mean/std exact to 1e-12, reports byte-identical, identical folds std 0";
    return o;
}

Outcome determinism(ClosedLoop& loop) {
    Outcome o;
    const fs::path cfg = loop.dir / "det.json";
    std::ofstream(cfg) << loop_config("plane", 8.0, 0.15).dump();
    const fs::path d1 = loop.dir / "det1", d2 = loop.dir / "det2";
    const std::string args = "generate --config " + shell_quote(cfg.string()) + " --count 6 --seed 31 --out ";
    o.require(run_cli(args + shell_quote(d1.string()), "ACOUSIM_THREADS=1") == 0 &&
                  run_cli(args + shell_quote(d2.string()), "ACOUSIM_THREADS=4") == 0,
              "acousim generate failed");
    int files = 0;
    for (const auto& e : fs::directory_iterator(d1)) {
        const fs::path other = d2 / e.path().filename();
        o.require(fs::exists(other) && slurp(e.path()) == slurp(other), e.path().filename().string() + " differs");
        ++files;
    }
    o.require(files == 13, "expected 6 PNG + 6 sidecars + boxes.json, got " + std::to_string(files));
    if (o.pass) o.detail = std::to_string(files) + " files byte-identical with 1 vs 4 threads";
    return o;
}

Outcome report_schema(ClosedLoop& loop) {
    Outcome o;
    const fs::path v = loop.dir / "schema_validate", k = loop.dir / "schema_kfold";
    const std::string sets = shell_quote(loop.set_a.string()) + " " + shell_quote(loop.set_b.string());
    o.require(run_cli("validate " + sets + " --out " + shell_quote(v.string())) == 0, "acousim validate failed");
    o.require(run_cli("kfold " + sets + " --k 5 --out " + shell_quote(k.string())) == 0, "acousim kfold failed");
    if (!o.pass) return o;

    auto check_csv = [&](const fs::path& dir, bool folds) {
        std::ifstream in(dir / "report.csv");
        std::string header;
        std::getline(in, header);
        std::string want = "dataset,class,kind,kl,js,emd,category";
        if (folds) want += ",kl_mean,kl_std,js_mean,js_std,emd_mean,emd_std";
        o.require(header == want, dir.filename().string() + " header: " + header);
        const auto columns = std::count(want.begin(), want.end(), ',');
        int rows = 0;
        for (std::string line; std::getline(in, line); ++rows) {
            o.require(std::count(line.begin(), line.end(), ',') == columns, "ragged CSV row: " + line);
        }
        o.require(rows == 4, dir.filename().string() + ": " + std::to_string(rows) + " rows, expected 4");
    };
    check_csv(v, false);
    check_csv(k, true);

    for (const auto& [dir, folds] : {std::pair{v, false}, std::pair{k, true}}) {
        const json doc = json::parse(slurp(dir / "report.json"));
        o.require(doc["results"].size() == 4, "JSON row count");
        for (const auto& row : doc["results"]) {
            for (const char* key : {"dataset", "class", "kind", "kl", "js", "emd", "category"})
                o.require(row.contains(key), std::string("JSON row lacks ") + key);
            o.require(row.contains("folds") == folds, "fold section presence");
            if (folds) {
                for (const char* m : {"kl", "js", "emd"})
                    for (const char* s : {"mean", "std", "per_fold"})
                        o.require(row["folds"][m].contains(s), std::string("folds.") + m + " lacks " + s);
            }
        }
        o.require(eval::read_report(dir / "report.json") == eval::report_from_json(doc), "round trip");
    }
    if (o.pass) o.detail = "validate and kfold reports carry dataset/class/KL/JS/EMD and mean/std columns";
    return o;
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const std::string& name, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << " " << name << ": " << o.detail
                  << std::endl;
    };

    report(1, "metric oracle equivalence", metric_oracles);
    report(2, "metric identities", metric_identities);
    report(3, "categorization thresholds", categorization);
    report(4, "LBP oracle equivalence", lbp_correctness);
    report(5, "formation law", formation_law);
    report(6, "shadow geometry", shadow_geometry);
    report(7, "altitude law", altitude_law);
    report(8, "noise moments", noise_moments);

    ClosedLoop loop;
    report(9, "closed-loop self-validation", [&] { return closed_loop(loop); });
    report(10, "k-fold protocol", [&] { return kfold_degenerate(loop, kfold_protocol(loop)); });
    report(11, "generation determinism", [&] { return determinism(loop); });
    report(12, "report schema", [&] { return report_schema(loop); });

    std::cout << (failures == 0 ? "all 12 criteria passed" : std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
