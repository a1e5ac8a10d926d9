#pragma once

#include <cstdint>

namespace sparsestab {

// Counter-based generator: output i is a hash of (key, i), where the key is
// derived from (seed, stream). Substreams can be split off at any point and
// produce the same values regardless of how work is partitioned.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t next_u64() {
        return mix(key_ ^ (0x9E3779B97F4A7C15ULL * ++counter_));
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    bool bit() { return (next_u64() & 1u) != 0; }

    // Unbiased uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    CounterRng substream(std::uint64_t index) const {
        CounterRng r(0);
        r.key_ = mix(key_ ^ mix(index + 0xA0761D6478BD642FULL));
        r.counter_ = 0;
        return r;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xFF51AFD7ED558CCDULL;
        z ^= z >> 33;
        z *= 0xC4CEB9FE1A85EC53ULL;
        z ^= z >> 33;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace sparsestab
