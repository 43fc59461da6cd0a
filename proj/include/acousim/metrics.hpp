#pragma once

#include <span>
#include <string>

#include "acousim/features.hpp"

namespace acousim::metrics {

enum class Category { High, Moderate, Low };

std::string to_string(Category c);
Category category_from_string(const std::string& s);

/// Zero-bin regularization for KL/JS: epsilon is added to every bin of
/// both distributions, which are then renormalized.
struct SmoothingPolicy {
    double epsilon = 1e-10;
};

struct AlignmentResult {
    double kl = 0.0;   ///< nats
    double js = 0.0;   ///< nats, <= ln 2
    double emd = 0.0;  ///< bin positions normalized to [0, 1]
    Category category = Category::High;

    bool operator==(const AlignmentResult&) const = default;
};

/// KL(p || q) in nats. The span overloads accept any common bin count.
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     SmoothingPolicy s = {});
double js_divergence(std::span<const double> p, std::span<const double> q,
                     SmoothingPolicy s = {});

/// 1-D Wasserstein-1 with bin i at i / (B - 1): the sum of absolute CDF
/// differences times the bin spacing. No smoothing.
double emd_1d(std::span<const double> p, std::span<const double> q);

double kl_divergence(const features::Histogram& p, const features::Histogram& q,
                     SmoothingPolicy s = {});
double js_divergence(const features::Histogram& p, const features::Histogram& q,
                     SmoothingPolicy s = {});
double emd_1d(const features::Histogram& p, const features::Histogram& q);

/// High below 0.2, Moderate on [0.2, 0.7), Low from 0.7. Throws on negative
/// or non-finite input.
Category categorize(double kl);

AlignmentResult compare(const features::Histogram& p, const features::Histogram& q,
                        SmoothingPolicy s = {});

}  // namespace acousim::metrics
