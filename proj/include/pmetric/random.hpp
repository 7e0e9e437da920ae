#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dist.hpp"
#include "errors.hpp"

namespace pmetric {

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; all derived draws below use only
/// raw engine output and integer arithmetic, so results are identical on
/// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound == 0)
            throw InputError("Rng::below requires a positive bound");
        std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return x % bound;
    }

    /// True with exactly the rational probability p (0 <= p <= 1).
    bool chance(const Rational& p)
    {
        if (p <= 0)
            return false;
        if (p >= 1)
            return true;
        BigInt const den = boost::multiprecision::denominator(p);
        BigInt const num = boost::multiprecision::numerator(p);
        if (den > BigInt(UINT64_MAX))
            throw InputError("probability denominator too large");
        return BigInt(below(den.convert_to<std::uint64_t>())) < num;
    }

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent per-case seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace pmetric
