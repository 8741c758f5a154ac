#pragma once

#include <cstdint>
#include <random>

namespace tuc {

// splitmix64 finalizer; also the documented mixing function for per-trial
// seed derivation: trial_seed = mix(mix(mix(master ^ algo_id) ^ r_index) ^ trial_index).
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t derive_trial_seed(uint64_t master_seed, uint64_t algo_id,
                                  uint64_t r_index, uint64_t trial_index) {
    return mix64(mix64(mix64(master_seed ^ algo_id) ^ r_index) ^ trial_index);
}

// Deterministic RNG. std::mt19937_64 output is fully specified by the
// standard; the double/int conversions below are ours, so streams are
// reproducible across platforms (std distributions are not used on purpose).
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform in {0,1,2,3}: top two bits
    int uniform4() { return static_cast<int>(next_u64() >> 62); }

    // uniform in {0,1}: top bit
    int coin() { return static_cast<int>(next_u64() >> 63); }

private:
    std::mt19937_64 engine_;
};

}  // namespace tuc
