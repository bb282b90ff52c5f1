#pragma once

#include <cstdint>
#include <random>

namespace bpdn {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of an independent stream derived from a master seed.
///
/// stream_seed = mix64(mix64(master) ^ mix64(stream + 0x9e3779b97f4a7c15)).
/// Replicate i of any experiment uses derive_seed(master, i); auxiliary draws
/// (design points, pilot runs) use the reserved stream ids below.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

namespace streams {
inline constexpr std::uint64_t design = 0xD1E5'1600'0000'0001ULL;
inline constexpr std::uint64_t pilot = 0xD1E5'1600'0000'0002ULL;
inline constexpr std::uint64_t annealing = 0xD1E5'1600'0000'0003ULL;
}  // namespace streams

/// Random source handed to samplers. Wraps std::mt19937_64, whose output
/// sequence is fixed by the standard, so uniform draws are reproducible on
/// every platform. Gaussian draws go through std::normal_distribution and are
/// reproducible for a given standard library.
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    /// Uniform on the open interval (0, 1), 53 random bits.
    double uniform() noexcept {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_(engine_); }

    /// Exponential with the given rate, by inversion.
    double exponential(double rate);

    std::uint64_t seed() const noexcept { return seed_; }
    engine_type& engine() noexcept { return engine_; }

private:
    engine_type engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uint64_t seed_;
};

}  // namespace bpdn
