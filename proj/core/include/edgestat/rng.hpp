#ifndef EDGESTAT_RNG_HPP
#define EDGESTAT_RNG_HPP

#include <cstdint>
#include <random>

namespace edgestat {

/// One step of splitmix64; advances state.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Independent generator for (seed, stream). Same arguments give the same sequence
/// on every platform.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

}  // namespace edgestat

#endif  // EDGESTAT_RNG_HPP
