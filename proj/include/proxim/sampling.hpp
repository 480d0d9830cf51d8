#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "proxim/sets.hpp"

namespace proxim {

/// Van der Corput radical inverse of index in the given base.
inline double radical_inverse(std::uint64_t index, std::uint32_t base) {
    double inv_base = 1.0 / base;
    double fraction = 0.0;
    double scale = inv_base;
    while (index > 0) {
        fraction += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inv_base;
    }
    return fraction;
}

namespace detail {
inline std::uint32_t nth_prime(std::size_t n) {
    // Enough primes for any parameter dimension used here; extend on demand.
    static const std::uint32_t primes[] = {
        2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
        59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131,
        137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
        227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};
    const std::size_t count = sizeof(primes) / sizeof(primes[0]);
    if (n < count) return primes[n];
    // Past the table, run a trial-division sieve from the last known prime.
    std::uint32_t candidate = primes[count - 1];
    std::size_t found = count - 1;
    while (found < n) {
        candidate += 2;
        bool is_prime = true;
        for (std::uint32_t d = 3; d * d <= candidate; d += 2)
            if (candidate % d == 0) {
                is_prime = false;
                break;
            }
        if (is_prime) ++found;
    }
    return candidate;
}
}  // namespace detail

/// Low-discrepancy Halton sequence over [0,1)^dim, indexed from 1.
/// Deterministic by construction; independent of any seed.
class HaltonSampler {
public:
    explicit HaltonSampler(std::size_t dim, std::uint64_t start_index = 1)
        : index_(start_index) {
        bases_.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i) bases_.push_back(detail::nth_prime(i));
    }

    std::vector<double> next() {
        std::vector<double> t(bases_.size());
        for (std::size_t i = 0; i < bases_.size(); ++i) t[i] = radical_inverse(index_, bases_[i]);
        ++index_;
        return t;
    }

private:
    std::vector<std::uint32_t> bases_;
    std::uint64_t index_;
};

/// SplitMix64 generator: tiny, seedable, reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// n points of S: low-discrepancy over the natural parameterization by default,
/// seeded uniform-random when uniform = true.
inline std::vector<Point> sample_set(const SetDescriptor& S, std::size_t n, std::uint64_t seed,
                                     bool uniform = false) {
    std::vector<Point> out;
    out.reserve(n);
    const std::size_t pd = param_dim(S);
    if (uniform) {
        SplitMix64 rng(seed);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> t(pd);
            for (auto& v : t) v = rng.next_double();
            out.push_back(param_to_point(S, t));
        }
    } else {
        HaltonSampler halton(pd);
        for (std::size_t i = 0; i < n; ++i) out.push_back(param_to_point(S, halton.next()));
    }
    return out;
}

}  // namespace proxim
