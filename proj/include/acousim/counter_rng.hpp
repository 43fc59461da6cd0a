#pragma once

#include <cstdint>

namespace acousim {

/// Stateless random source: every draw is a pure function of
/// (seed, stream, counter), so parallel evaluation order cannot change the
/// values. std::normal_distribution is avoided because its output is
/// library-specific.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept;

    double uniform(std::uint64_t stream, std::uint64_t counter, double lo, double hi) const noexcept {
        return lo + (hi - lo) * uniform(stream, counter);
    }

    /// Standard normal via Box-Muller on two uniforms drawn at 2*counter and
    /// 2*counter+1.
    double normal(std::uint64_t stream, std::uint64_t counter) const noexcept;

private:
    std::uint64_t seed_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent child seed, e.g. the noise seed of a scene.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

}  // namespace acousim
