#pragma once
#include <cstdint>
#include <limits>

namespace rbb {

// Counter-based generator: output(i) = splitmix64_mix(key + i * golden).
// Jump-ahead is O(1) via discard(); distinct streams come from distinct keys.
// The generator and the stream-derivation scheme below are fixed: two builds
// of this artifact produce bit-identical random sequences for the same
// (master seed, trial, purpose) triple.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng() = default;
    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
        : key_(key), counter_(counter) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

    void discard(unsigned long long n) { counter_ += n; }
    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

// Purpose tags keep the streams of one trial disjoint: destination draws,
// queue selection, tetris arrivals, the coupling's free arrivals, faults and
// initial-configuration sampling never share a stream.
enum class StreamPurpose : std::uint64_t {
    Destinations = 1,
    Selection = 2,
    TetrisArrivals = 3,
    FreeArrivals = 4,
    Fault = 5,
    InitialConfig = 6,
    Scratch = 7,
};

struct SeedCtx {
    std::uint64_t master = 0;
    std::uint64_t trial = 0;
};

inline CounterRng make_stream(SeedCtx ctx, StreamPurpose purpose) {
    std::uint64_t key = CounterRng::mix(ctx.master ^ 0x243f6a8885a308d3ULL);
    key = CounterRng::mix(key ^ (ctx.trial * 0x13198a2e03707344ULL));
    key = CounterRng::mix(key ^ (static_cast<std::uint64_t>(purpose) * 0xa4093822299f31d0ULL));
    return CounterRng(key);
}

// Unbiased bounded draw (Lemire's multiply-then-reject).
template <class Rng>
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    std::uint64_t x = rng();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (lo < threshold) {
            x = rng();
            m = static_cast<unsigned __int128>(x) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

} // namespace rbb
