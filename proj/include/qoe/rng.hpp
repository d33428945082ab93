#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace qoe::rng {

// splitmix64 step, used both as a stream generator and as a hash combiner.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix(uint64_t seed, uint64_t value) {
    uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL + (value << 6) + (value >> 2));
    return splitmix64(state);
}

// Derives an independent child seed from (seed, tag). Work units derive
// their streams by counter so results do not depend on scheduling.
inline uint64_t derive(uint64_t seed, std::string_view tag) {
    uint64_t h = seed;
    for (char c : tag) h = mix(h, static_cast<uint64_t>(static_cast<unsigned char>(c)));
    return mix(h, tag.size());
}

inline uint64_t derive(uint64_t seed, std::string_view tag, uint64_t i0) {
    return mix(derive(seed, tag), i0);
}

inline uint64_t derive(uint64_t seed, std::string_view tag, uint64_t i0, uint64_t i1) {
    return mix(mix(derive(seed, tag), i0), i1);
}

inline uint64_t derive(uint64_t seed, std::string_view tag, uint64_t i0, uint64_t i1, uint64_t i2) {
    return mix(mix(mix(derive(seed, tag), i0), i1), i2);
}

// mt19937_64 with explicit value mappings. The std distributions are
// implementation-defined; these mappings keep streams identical across
// standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // [0, n); n must be > 0
    size_t uniform_index(size_t n) {
        return static_cast<size_t>(next_u64() % static_cast<uint64_t>(n));
    }

    // Box-Muller, one variate per call (the spare is discarded so the
    // stream position never depends on call history).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), in draw order.
    std::vector<size_t> sample_without_replacement(size_t n, size_t k) {
        std::vector<size_t> pool(n);
        for (size_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<size_t> out;
        out.reserve(k);
        for (size_t i = 0; i < k && i < n; ++i) {
            size_t j = i + uniform_index(n - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace qoe::rng
