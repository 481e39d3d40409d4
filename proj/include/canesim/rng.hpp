#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace canesim {

// Seeded stream used throughout the simulator. Distributions come from
// <random>, so results are reproducible for a given standard library build.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept
{
    return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

// Independent child stream for one purpose within a trial.
inline Rng substream(std::uint64_t seed, std::string_view purpose)
{
    return Rng(mix_seed(seed, fnv1a(purpose)));
}

} // namespace canesim
