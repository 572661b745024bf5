#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mig {

/// splitmix64 finalizer; decorrelates nearby integer inputs.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Engine for an independent stream identified by (seed, path).
///
/// Every Monte Carlo trial derives its engine from the experiment seed and
/// a stable path such as {phase, grid_index, trial_index}, so results do not
/// depend on scheduling or worker count.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(seed);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p));
    return std::mt19937_64(s);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t trial_index) {
    return make_stream(seed, {trial_index});
}

/// Sub-seed for a tagged phase: make_stream(derive_seed(s, tag), t) equals
/// make_stream(s, {tag, t}), so phases can hand plain seeds to helpers that
/// only append a trial index.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed) ^ mix64(tag);
}

} // namespace mig
