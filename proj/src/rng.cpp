#include "bpdn/rng.hpp"

#include <cmath>

#include "bpdn/error.hpp"

namespace bpdn {

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix64(mix64(master) ^ mix64(stream + 0x9e3779b97f4a7c15ULL));
}

double Rng::exponential(double rate) {
    detail::require(rate > 0.0, "exponential rate must be positive");
    return -std::log(uniform()) / rate;
}

}  // namespace bpdn
