#pragma once

#include <cstdint>
#include <cmath>
#include <array>

namespace walklab {

/// Philox4x32-10 counter-based generator. A (seed, stream) pair selects an
/// independent stream; draws are a pure function of (key, counter), so any
/// shard of work can be given its own stream and replayed exactly.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0, 0,
               static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    std::uint32_t next_u32() {
        if (have_ == 0) {
            block_ = round10(ctr_, key_);
            bump();
            have_ = 4;
        }
        return block_[4 - have_--];
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32(), lo = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform in [0,1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in {0,...,n-1}; n must be small relative to 2^64.
    std::uint64_t next_index(std::uint64_t n) {
        return next_u64() % n;
    }

    /// Standard normal via Box-Muller.
    double next_normal() {
        if (have_normal_) {
            have_normal_ = false;
            return spare_normal_;
        }
        double u1 = next_double(), u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 6.283185307179586476925286766559 * u2;
        spare_normal_ = r * std::sin(th);
        have_normal_ = true;
        return r * std::cos(th);
    }

    /// One keyed block, exposed for the known-answer test.
    static std::array<std::uint32_t, 4> round10(std::array<std::uint32_t, 4> x,
                                                std::array<std::uint32_t, 2> k) {
        for (int r = 0; r < 10; ++r) {
            x = single_round(x, k);
            k[0] += 0x9E3779B9u;
            k[1] += 0xBB67AE85u;
        }
        return x;
    }

private:
    static std::array<std::uint32_t, 4> single_round(const std::array<std::uint32_t, 4>& x,
                                                     const std::array<std::uint32_t, 2>& k) {
        auto mulhilo = [](std::uint32_t a, std::uint32_t b, std::uint32_t& hi) {
            std::uint64_t p = static_cast<std::uint64_t>(a) * b;
            hi = static_cast<std::uint32_t>(p >> 32);
            return static_cast<std::uint32_t>(p);
        };
        std::uint32_t hi0, hi1;
        std::uint32_t lo0 = mulhilo(0xD2511F53u, x[0], hi0);
        std::uint32_t lo1 = mulhilo(0xCD9E8D57u, x[2], hi1);
        return {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
    }

    void bump() {
        if (++ctr_[0] == 0) ++ctr_[1];
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> block_{};
    int have_ = 0;
    bool have_normal_ = false;
    double spare_normal_ = 0.0;
};

} // namespace walklab
