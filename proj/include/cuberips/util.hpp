#pragma once

// Shared small utilities: bitmask helpers over vertex sets, deterministic
// PRNG, canonical ordering of simplices, and the error types used across
// the library.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuberips {

// A simplex over a universe of at most 64 vertices, one bit per vertex id.
using Vmask = std::uint64_t;

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

inline int popcount(Vmask m) { return std::popcount(m); }

inline int lowest_bit(Vmask m) { return std::countr_zero(m); }

// Iterate set bits ascending; f(int bit).
template <typename F>
inline void for_each_bit(Vmask m, F&& f) {
    while (m) {
        int b = std::countr_zero(m);
        f(b);
        m &= m - 1;
    }
}

inline std::vector<int> bits_of(Vmask m) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(popcount(m)));
    for_each_bit(m, [&](int b) { out.push_back(b); });
    return out;
}

inline bool is_subset(Vmask a, Vmask b) { return (a & ~b) == 0; }

// Lexicographic order on simplices viewed as ascending vertex lists.
// The first differing vertex decides; it lies in whichever mask owns the
// lowest bit of a^b, and that mask comes first.
inline bool lex_less(Vmask a, Vmask b) {
    if (a == b) return false;
    Vmask d = a ^ b;
    return (d & -d & a) != 0;
}

struct LexLess {
    bool operator()(Vmask a, Vmask b) const { return lex_less(a, b); }
};

// splitmix64: tiny, portable, deterministic across platforms.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("below(0)");
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }
    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 add overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 sub overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 mul overflow");
    return r;
}

}  // namespace cuberips
