#pragma once

#include <cstdint>

namespace hestia {

// splitmix64-based generator. std::mt19937 is portable but the standard
// distributions are not; this keeps seeded runs bit-identical across
// platforms, which the trace goldens depend on.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        ++position_;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], inclusive. Rejection-free modulo is fine here;
    // statistical quality is not load-bearing, determinism is.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        if (hi <= lo) return lo;
        return lo + next_u64() % (hi - lo + 1);
    }

    int uniform_int(int lo, int hi) {
        return static_cast<int>(uniform(0, static_cast<std::uint64_t>(hi - lo))) + lo;
    }

    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    bool chance(double p) { return uniform_real() < p; }

    std::uint64_t position() const { return position_; }

private:
    std::uint64_t state_ = 0;
    std::uint64_t position_ = 0;
};

} // namespace hestia
