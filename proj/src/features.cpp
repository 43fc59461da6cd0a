#include "acousim/features.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace acousim::features {

std::string to_string(Kind k) { return k == Kind::lbp ? "lbp" : "intensity"; }

Kind kind_from_string(const std::string& s) {
    if (s == "intensity") return Kind::intensity;
    if (s == "lbp") return Kind::lbp;
    throw std::invalid_argument("unknown histogram kind '" + s + "' (expected intensity or lbp)");
}

std::uint64_t BinCounts::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram::Histogram(Kind kind, const std::array<double, kBins>& bins) : kind_(kind), bins_(bins) {
    double sum = 0.0;
    for (double b : bins_) {
        if (!std::isfinite(b) || b < 0.0) {
            throw std::invalid_argument("histogram bins must be finite and non-negative");
        }
        sum += b;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("histogram mass " + std::to_string(sum) + " is not 1");
    }
}

Histogram Histogram::from_counts(const BinCounts& c) {
    const std::uint64_t total = c.total();
    if (total == 0) throw std::invalid_argument("cannot normalize an empty histogram");
    std::array<double, kBins> bins{};
    const double denom = static_cast<double>(total);
    for (std::size_t i = 0; i < kBins; ++i) bins[i] = static_cast<double>(c.counts[i]) / denom;
    return Histogram(c.kind, bins);
}

BinCounts intensity_counts(const Image& img) {
    BinCounts c;
    c.kind = Kind::intensity;
    for (std::uint8_t p : img.pixels()) ++c.counts[p];
    return c;
}

std::uint8_t lbp_code(const Image& img, int x, int y) {
    const std::uint8_t c = img.at(x, y);
    std::uint8_t code = 0;
    code |= static_cast<std::uint8_t>((img.at(x - 1, y - 1) >= c) << 7);
    code |= static_cast<std::uint8_t>((img.at(x, y - 1) >= c) << 6);
    code |= static_cast<std::uint8_t>((img.at(x + 1, y - 1) >= c) << 5);
    code |= static_cast<std::uint8_t>((img.at(x + 1, y) >= c) << 4);
    code |= static_cast<std::uint8_t>((img.at(x + 1, y + 1) >= c) << 3);
    code |= static_cast<std::uint8_t>((img.at(x, y + 1) >= c) << 2);
    code |= static_cast<std::uint8_t>((img.at(x - 1, y + 1) >= c) << 1);
    code |= static_cast<std::uint8_t>((img.at(x - 1, y) >= c) << 0);
    return code;
}

BinCounts lbp_counts(const Image& img) {
    if (img.width() < 3 || img.height() < 3) {
        throw std::invalid_argument("LBP needs at least a 3x3 image, got " +
                                    std::to_string(img.width()) + "x" +
                                    std::to_string(img.height()));
    }
    BinCounts c;
    c.kind = Kind::lbp;
    for (int y = 1; y < img.height() - 1; ++y) {
        for (int x = 1; x < img.width() - 1; ++x) ++c.counts[lbp_code(img, x, y)];
    }
    return c;
}

Histogram intensity_histogram(const Image& img) { return Histogram::from_counts(intensity_counts(img)); }

Histogram lbp_histogram(const Image& img) { return Histogram::from_counts(lbp_counts(img)); }

Histogram histogram(const Image& img, Kind kind) {
    return kind == Kind::lbp ? lbp_histogram(img) : intensity_histogram(img);
}

Histogram aggregate(std::span<const Histogram> histograms) {
    if (histograms.empty()) throw std::invalid_argument("aggregate: empty histogram list");
    const Kind kind = histograms.front().kind();
    std::array<double, kBins> sum{};
    for (const Histogram& h : histograms) {
        if (h.kind() != kind) throw std::invalid_argument("aggregate: mixed histogram kinds");
        for (std::size_t i = 0; i < kBins; ++i) sum[i] += h[i];
    }
    double total = 0.0;
    for (double& s : sum) {
        s /= static_cast<double>(histograms.size());
        total += s;
    }
    if (total != 1.0) {
        for (double& s : sum) s /= total;
    }
    return Histogram(kind, sum);
}

Histogram aggregate_pooled(std::span<const BinCounts> counts) {
    if (counts.empty()) throw std::invalid_argument("aggregate_pooled: empty count list");
    BinCounts pooled;
    pooled.kind = counts.front().kind;
    for (const BinCounts& c : counts) {
        if (c.kind != pooled.kind) throw std::invalid_argument("aggregate_pooled: mixed histogram kinds");
        for (std::size_t i = 0; i < kBins; ++i) pooled.counts[i] += c.counts[i];
    }
    return Histogram::from_counts(pooled);
}

void write_csv(std::ostream& out, const Histogram& h) {
    out << "bin_index,mass\n" << std::setprecision(17);
    for (std::size_t i = 0; i < kBins; ++i) out << i << ',' << h[i] << '\n';
}

void write_csv(const std::string& path, const Histogram& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(out, h);
    if (!out) throw std::runtime_error("failed writing " + path);
}

nlohmann::json to_json(const Histogram& h) {
    return {{"kind", to_string(h.kind())},
            {"bins", std::vector<double>(h.bins().begin(), h.bins().end())}};
}

}  // namespace acousim::features
