#pragma once

#include <cstdint>
#include <vector>

#include "tame/integers.hpp"

namespace tame {

// SplitMix64 stream. Deterministic across platforms (the standard library's
// distributions are implementation-defined, which would break the
// same-seed-same-artifact guarantee), seedable, and splittable: a child
// stream is seeded from the parent's next output.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    Rng split() { return Rng(next()); }

    // uniform on [0, bound) for bound >= 1, unbiased via rejection
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t v = next();
            if (v >= threshold) return v % bound;
        }
    }

    // uniform on [lo, hi], machine integers
    int64_t int_in(int64_t lo, int64_t hi) {
        require(lo <= hi, ErrorKind::internal, "rng range empty");
        uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
        uint64_t v = span == 0 ? next() : below(span);  // span 0 = whole 2^64 range
        return static_cast<int64_t>(static_cast<uint64_t>(lo) + v);
    }

    // uniform on [0, bound) for arbitrary-precision bound >= 1
    Int big_below(const Int& bound) {
        require(bound >= 1, ErrorKind::internal, "rng big range empty");
        if (bound == 1) return 0;
        uint64_t bits = boost::multiprecision::msb(bound - 1) + 1;
        uint64_t words = (bits + 63) / 64;
        for (;;) {
            Int v = 0;
            for (uint64_t w = 0; w < words; ++w) v = (v << 64) | next();
            v >>= (words * 64 - bits);
            if (v < bound) return v;
        }
    }

    Int big_in(const Int& lo, const Int& hi) {
        require(lo <= hi, ErrorKind::internal, "rng big range empty");
        return lo + big_below(hi - lo + 1);
    }

    // uniform over [-bound, bound] without zero
    Int nonzero_in(const Int& bound) {
        require(bound >= 1, ErrorKind::internal, "nonzero draw needs bound >= 1");
        Int v = big_in(1, bound);
        return (next() & 1) ? v : Int(-v);
    }

    int sign() { return (next() & 1) ? 1 : -1; }

    // exact Bernoulli with rational probability p in [0, 1]
    bool bernoulli(const Rat& p) {
        Int num = boost::multiprecision::numerator(p);
        Int den = boost::multiprecision::denominator(p);
        if (num <= 0) return false;
        if (num >= den) return true;
        return big_below(den) < num;
    }

    // Fisher-Yates permutation of {0, .., n-1}
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(below(static_cast<uint64_t>(i) + 1));
            std::swap(p[i], p[j]);
        }
        return p;
    }

private:
    uint64_t state_;
};

} // namespace tame
