#pragma once

#include <cstdint>
#include <initializer_list>

namespace dyntda {

// SplitMix64. All randomness in the project flows through this generator so
// that every artifact is reproducible from a single 64-bit seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in [0, n). Modulo bias is irrelevant at the sizes used here.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  private:
    std::uint64_t state_;
};

// Derives a child seed from a master seed and an index path. Used to split
// one experiment seed into independent streams (per flock, per degree, per
// trial, ...) in a way that is stable across runs and thread counts.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = master;
    for (std::uint64_t v : path) {
        SplitMix64 s(h ^ (v + 0x9E3779B97F4A7C15ull));
        h = s.next();
    }
    return h;
}

} // namespace dyntda
