#ifndef NQC_RNG_HPP
#define NQC_RNG_HPP

#include <cstdint>

namespace nqc {

// Counter-based stream: the state is derived from (seed, stream index)
// by splitmix64 mixing, so shot i's sequence is independent of how many
// draws earlier shots made. Deterministic across platforms.
class ShotRng {
  public:
    ShotRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xbf58476d1ce4e5b9ull));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace nqc

#endif
