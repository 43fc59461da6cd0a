#include "acousim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace acousim::metrics {

namespace {

void check_pair(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("histogram bin counts differ: " + std::to_string(p.size()) +
                                    " vs " + std::to_string(q.size()));
    }
    if (p.empty()) throw std::invalid_argument("histograms must have at least one bin");
}

void check_kinds(const features::Histogram& p, const features::Histogram& q) {
    if (p.kind() != q.kind()) {
        throw std::invalid_argument("cannot compare " + features::to_string(p.kind()) +
                                    " histogram with " + features::to_string(q.kind()));
    }
}

std::vector<double> smoothed(std::span<const double> p, SmoothingPolicy s) {
    if (!(s.epsilon > 0.0) || !std::isfinite(s.epsilon)) {
        throw std::invalid_argument("smoothing epsilon must be positive and finite");
    }
    std::vector<double> out(p.begin(), p.end());
    double total = 0.0;
    for (double& v : out) {
        v += s.epsilon;
        total += v;
    }
    for (double& v : out) v /= total;
    return out;
}

/// KL on strictly positive, already-normalized inputs.
double raw_kl(std::span<const double> p, std::span<const double> q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != q[i]) sum += p[i] * std::log(p[i] / q[i]);
    }
    return std::max(0.0, sum);
}

}  // namespace

std::string to_string(Category c) {
    switch (c) {
        case Category::High: return "High";
        case Category::Moderate: return "Moderate";
        case Category::Low: return "Low";
    }
    return "Unknown";
}

Category category_from_string(const std::string& s) {
    if (s == "High") return Category::High;
    if (s == "Moderate") return Category::Moderate;
    if (s == "Low") return Category::Low;
    throw std::invalid_argument("unknown alignment category '" + s + "'");
}

double kl_divergence(std::span<const double> p, std::span<const double> q, SmoothingPolicy s) {
    check_pair(p, q);
    const auto ps = smoothed(p, s);
    const auto qs = smoothed(q, s);
    return raw_kl(ps, qs);
}

double js_divergence(std::span<const double> p, std::span<const double> q, SmoothingPolicy s) {
    check_pair(p, q);
    const auto ps = smoothed(p, s);
    const auto qs = smoothed(q, s);
    std::vector<double> m(ps.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (ps[i] + qs[i]);
    const double js = 0.5 * raw_kl(ps, m) + 0.5 * raw_kl(qs, m);
    return std::min(js, std::numbers::ln2);
}

double emd_1d(std::span<const double> p, std::span<const double> q) {
    check_pair(p, q);
    if (p.size() == 1) return 0.0;
    double cdf_p = 0.0;
    double cdf_q = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        cdf_p += p[i];
        cdf_q += q[i];
        sum += std::abs(cdf_p - cdf_q);
    }
    return std::clamp(sum / static_cast<double>(p.size() - 1), 0.0, 1.0);
}

double kl_divergence(const features::Histogram& p, const features::Histogram& q, SmoothingPolicy s) {
    check_kinds(p, q);
    return kl_divergence(p.bins(), q.bins(), s);
}

double js_divergence(const features::Histogram& p, const features::Histogram& q, SmoothingPolicy s) {
    check_kinds(p, q);
    return js_divergence(p.bins(), q.bins(), s);
}

double emd_1d(const features::Histogram& p, const features::Histogram& q) {
    check_kinds(p, q);
    return emd_1d(p.bins(), q.bins());
}

Category categorize(double kl) {
    if (!std::isfinite(kl) || kl < 0.0) {
        throw std::invalid_argument("categorize: KL must be finite and non-negative");
    }
    if (kl < 0.2) return Category::High;
    if (kl < 0.7) return Category::Moderate;
    return Category::Low;
}

AlignmentResult compare(const features::Histogram& p, const features::Histogram& q, SmoothingPolicy s) {
    AlignmentResult r;
    r.kl = kl_divergence(p, q, s);
    r.js = js_divergence(p, q, s);
    r.emd = emd_1d(p, q);
    r.category = categorize(r.kl);
    return r;
}

}  // namespace acousim::metrics
