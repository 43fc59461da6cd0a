#pragma once

#include <cstdint>
#include <string>

#include "acousim/image.hpp"

namespace acousim::noise {

enum class SpeckleModel {
    gaussian,     ///< s ~ Normal(1, sigma^2), clipped at 0
    exponential,  ///< s = 1 + sigma * (E - 1), E ~ Exp(1), clipped at 0; sigma = 1 is fully developed speckle
};

std::string to_string(SpeckleModel m);
SpeckleModel speckle_model_from_string(const std::string& s);

struct NoiseConfig {
    double gaussian_sigma = 8.0;   ///< additive, in 8-bit intensity units
    double speckle_sigma = 0.15;   ///< multiplicative, dimensionless
    std::uint64_t seed = 0;
    SpeckleModel speckle_model = SpeckleModel::gaussian;

    void validate() const;
};

/// out = clamp(round((in + g) * s)), with g ~ Normal(0, gaussian_sigma^2)
/// and unit-mean speckle s. Draws are keyed on (seed, pixel index), so the
/// result does not depend on evaluation order.
Image apply_noise(const Image& img, const NoiseConfig& cfg);

}  // namespace acousim::noise
