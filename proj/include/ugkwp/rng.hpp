// Counter-based random streams: identical (seed, stream, counter) always
// reproduce the same draw, so runs replay bitwise and per-cell streams stay
// independent of iteration order across the rest of the code.
#pragma once

#include <cmath>
#include <cstdint>

namespace ugkwp {

namespace detail {
inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

struct RngStream {
    uint64_t key = 0;
    uint64_t counter = 0;

    RngStream() = default;
    RngStream(uint64_t seed, uint64_t stream)
        : key(detail::mix64(seed ^ detail::mix64(stream + 0x632be59bd9b4e019ull))) {}

    uint64_t next_u64() {
        return detail::mix64(key + 0x9e3779b97f4a7c15ull * (++counter));
    }

    // uniform in [0,1)
    double u01() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0,1]; safe under log()
    double u01_open0() { return 1.0 - u01(); }

    // standard normal, Box-Muller pair (second value cached)
    double normal() {
        if (have_cache_) {
            have_cache_ = false;
            return cache_;
        }
        const double r = std::sqrt(-2.0 * std::log(u01_open0()));
        const double phi = 6.28318530717958647692 * u01();
        cache_ = r * std::sin(phi);
        have_cache_ = true;
        return r * std::cos(phi);
    }

  private:
    bool have_cache_ = false;
    double cache_ = 0.0;
};

}  // namespace ugkwp
