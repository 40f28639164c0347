#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace pndiag {

struct PlaceId {
  std::uint32_t index = 0;
  auto operator<=>(const PlaceId&) const = default;
};

struct TransitionId {
  std::uint32_t index = 0;
  auto operator<=>(const TransitionId&) const = default;
};

/// A run s, or a candidate explanation s'.
using FiringSequence = std::vector<TransitionId>;

}  // namespace pndiag
