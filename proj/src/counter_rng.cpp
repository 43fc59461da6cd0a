#include "acousim/counter_rng.hpp"

#include <cmath>
#include <numbers>

namespace acousim {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
    return mix64(mix64(seed) ^ mix64(tag + 0x632BE59BD9B4E019ULL));
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return mix64(mix64(seed_ ^ mix64(stream)) + mix64(counter ^ 0xD1B54A32D192ED03ULL));
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
    // 53 random bits centred in their bucket: never 0, never 1.
    return (static_cast<double>(bits(stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t stream, std::uint64_t counter) const noexcept {
    const double u1 = uniform(stream, 2 * counter);
    const double u2 = uniform(stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace acousim
