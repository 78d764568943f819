#pragma once

#include <cstdint>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace ldg {

// Counter-based generator: every draw is a pure function of (key, counter),
// so edge-level and sample-level streams are reproducible across platforms
// and independent of evaluation order.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t keyed_hash(std::uint64_t key, std::uint64_t counter) {
    return mix64(key ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

class KeyedRng {
public:
    explicit KeyedRng(std::uint64_t key) : key_(key) {}

    std::uint64_t bits(std::uint64_t counter) const { return keyed_hash(key_, counter); }

    // Uniform in [0,1) with 53 random bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes counters 2c and 2c+1.
    double normal(std::uint64_t counter) const {
        double u1 = uniform(2 * counter);
        double u2 = uniform(2 * counter + 1);
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    // Derive an independent stream, e.g. one per sample or per solver start.
    KeyedRng substream(std::uint64_t index) const { return KeyedRng(keyed_hash(key_, index)); }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

// FNV-1a, used for stable config hashes in run manifests.
std::uint64_t fnv1a(const void* data, std::size_t len);
std::uint64_t fnv1a(const std::string& s);

// Runs fn(chunk_index, begin, end) over [0,n) split into fixed chunks across
// the configured thread count; results are combined by the caller in chunk
// order, keeping floating-point totals reproducible.
int thread_count();
void set_thread_count(int n);
void parallel_chunks(std::int64_t n, std::int64_t chunk,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

}  // namespace ldg
