#pragma once

#include <cstdint>

namespace nhp::detail {

  // Stateless splitmix64 finalizer; sample streams are indexed by counter so
  // any worker can draw sample i without sharing generator state.
  constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  constexpr std::uint64_t counter_draw(std::uint64_t seed,
                                       std::uint64_t stream,
                                       std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed ^ (stream * 0xd1342543de82ef95ULL))
                      + index);
  }

}  // namespace nhp::detail
