#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "acousim/image.hpp"

namespace acousim::features {

inline constexpr std::size_t kBins = 256;

enum class Kind { intensity, lbp };

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

/// Raw per-bin counts, kept around for the pooled aggregation mode.
struct BinCounts {
    Kind kind = Kind::intensity;
    std::array<std::uint64_t, kBins> counts{};
    std::uint64_t total() const noexcept;
};

/// Normalized 256-bin distribution.
class Histogram {
public:
    /// Validates: no negative or non-finite bin, mass sums to 1 within 1e-9.
    Histogram(Kind kind, const std::array<double, kBins>& bins);

    static Histogram from_counts(const BinCounts& counts);

    Kind kind() const noexcept { return kind_; }
    std::span<const double> bins() const noexcept { return bins_; }
    double operator[](std::size_t i) const { return bins_[i]; }

    bool operator==(const Histogram&) const = default;

private:
    Kind kind_;
    std::array<double, kBins> bins_;
};

BinCounts intensity_counts(const Image& img);

/// 8-neighbour radius-1 LBP over interior pixels. Bit 7 is the top-left
/// neighbour, then clockwise down to bit 0 at the left neighbour; a bit is
/// set when neighbour >= centre. Throws for images smaller than 3x3.
BinCounts lbp_counts(const Image& img);
std::uint8_t lbp_code(const Image& img, int x, int y);

Histogram intensity_histogram(const Image& img);
Histogram lbp_histogram(const Image& img);
Histogram histogram(const Image& img, Kind kind);

/// Unweighted mean of normalized histograms; every image counts equally.
Histogram aggregate(std::span<const Histogram> histograms);

/// Pools raw counts across images before normalizing, so larger images
/// weigh more.
Histogram aggregate_pooled(std::span<const BinCounts> counts);

void write_csv(std::ostream& out, const Histogram& h);
void write_csv(const std::string& path, const Histogram& h);
nlohmann::json to_json(const Histogram& h);

}  // namespace acousim::features
