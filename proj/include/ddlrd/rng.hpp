// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_RNG_HPP
#define DDLRD_RNG_HPP

#include <cstdint>
#include <random>

namespace ddlrd {

using Rng = std::mt19937_64;

/// Role tags mixed into substream seeds so different uses of the same
/// replication index never share a stream.
enum class StreamRole : std::uint64_t {
    path = 1,
    bootstrap = 2,
    user = 3,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of substream (master, replication, role, attempt). Pure function of
/// its arguments, so scheduling order can never change a replication's draws.
constexpr std::uint64_t substream_seed(std::uint64_t master,
                                       std::uint64_t replication,
                                       StreamRole role = StreamRole::path,
                                       std::uint64_t attempt = 0)
{
    std::uint64_t h = mix64(master);
    h = mix64(h ^ replication);
    h = mix64(h ^ static_cast<std::uint64_t>(role));
    return mix64(h ^ attempt);
}

inline Rng make_rng(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32)};
    return Rng(seq);
}

/// Uniform draw on the open interval (0, 1); zero is redrawn.
inline double uniform_open(Rng& rng)
{
    for (;;) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u > 0.0) {
            return u;
        }
    }
}

}  // namespace ddlrd

#endif
