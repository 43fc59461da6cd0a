#include "acousim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acousim/counter_rng.hpp"

namespace acousim::noise {

namespace {
constexpr std::uint64_t kGaussianStream = 1;
constexpr std::uint64_t kSpeckleStream = 2;
}  // namespace

std::string to_string(SpeckleModel m) {
    return m == SpeckleModel::exponential ? "exponential" : "gaussian";
}

SpeckleModel speckle_model_from_string(const std::string& s) {
    if (s == "gaussian") return SpeckleModel::gaussian;
    if (s == "exponential") return SpeckleModel::exponential;
    throw std::invalid_argument("noise: unknown speckle_model '" + s +
                                "' (expected gaussian or exponential)");
}

void NoiseConfig::validate() const {
    if (!std::isfinite(gaussian_sigma) || gaussian_sigma < 0.0) {
        throw std::invalid_argument("noise: gaussian_sigma must be finite and >= 0");
    }
    if (!std::isfinite(speckle_sigma) || speckle_sigma < 0.0) {
        throw std::invalid_argument("noise: speckle_sigma must be finite and >= 0");
    }
}

Image apply_noise(const Image& img, const NoiseConfig& cfg) {
    cfg.validate();
    const CounterRng rng(cfg.seed);
    Image out = img;
    auto px = out.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        double v = px[i];
        if (cfg.gaussian_sigma > 0.0) v += cfg.gaussian_sigma * rng.normal(kGaussianStream, i);
        if (cfg.speckle_sigma > 0.0) {
            double s = 1.0;
            if (cfg.speckle_model == SpeckleModel::gaussian) {
                s = 1.0 + cfg.speckle_sigma * rng.normal(kSpeckleStream, i);
            } else {
                const double e = -std::log(rng.uniform(kSpeckleStream, i));
                s = 1.0 + cfg.speckle_sigma * (e - 1.0);
            }
            v *= std::max(0.0, s);
        }
        px[i] = static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
    }
    return out;
}

}  // namespace acousim::noise
