#pragma once

// Test-only reference semantics. Reads nothing from the library except the
// net's arc lists and labeling, and simulates on dense vectors.

#include <cstdint>
#include <vector>

#include "pndiag/net.hpp"

namespace pndiag::testing {

using DenseMarking = std::vector<int>;

inline DenseMarking dense(const NetSystem& net, const Marking& m) {
  DenseMarking out(net.place_count(), 0);
  for (std::uint32_t p = 0; p < net.place_count(); ++p) out[p] = static_cast<int>(m[PlaceId{p}]);
  return out;
}

inline bool dense_enabled(const NetSystem& net, const DenseMarking& m, std::uint32_t t) {
  for (const PlaceId p : net.transitions()[t].pre) {
    if (m[p.index] < 1) return false;
  }
  return true;
}

inline DenseMarking dense_fire(const NetSystem& net, DenseMarking m, std::uint32_t t) {
  for (const PlaceId p : net.transitions()[t].pre) m[p.index] -= 1;
  for (const PlaceId p : net.transitions()[t].post) m[p.index] += 1;
  return m;
}

/// Replays s from the initial marking; false if any step is disabled.
inline bool dense_fireable(const NetSystem& net, const FiringSequence& s) {
  DenseMarking m = dense(net, net.initial());
  for (const TransitionId t : s) {
    if (!dense_enabled(net, m, t.index)) return false;
    m = dense_fire(net, m, t.index);
  }
  return true;
}

/// Every fireable sequence of length <= max_len (breadth-first, unsorted).
inline std::vector<FiringSequence> dense_runs(const NetSystem& net, std::size_t max_len) {
  std::vector<std::pair<FiringSequence, DenseMarking>> frontier{{{}, dense(net, net.initial())}};
  std::vector<FiringSequence> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::pair<FiringSequence, DenseMarking>> next;
    for (auto& [seq, m] : frontier) {
      out.push_back(seq);
      if (len == max_len) continue;
      for (std::uint32_t t = 0; t < net.transition_count(); ++t) {
        if (!dense_enabled(net, m, t)) continue;
        FiringSequence longer = seq;
        longer.push_back(TransitionId{t});
        next.emplace_back(std::move(longer), dense_fire(net, m, t));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace pndiag::testing
