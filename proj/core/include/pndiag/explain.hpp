#pragma once

#include <cstddef>
#include <vector>

#include "pndiag/ids.hpp"
#include "pndiag/net.hpp"
#include "pndiag/observation.hpp"

namespace pndiag {

/// A firing sequence from the initial marking that reproduces an observation.
/// It ends on its last observable firing (or is empty).
struct Explanation {
  FiringSequence sequence;
  bool contains_fault = false;

  auto operator<=>(const Explanation&) const = default;
};

struct SearchBudget {
  /// Cap on consecutive unobservable firings.
  std::size_t max_unobs_segment = 1;
  /// Cap on explanations returned by one search (and on runs visited by
  /// precision_check).
  std::size_t max_explanations = 100000;

  /// 10 x |places| and 100000.
  static SearchBudget defaults(const NetSystem& net);
};

/// Sequences s' with project(s') == o, sorted by transition index.
std::vector<Explanation> explain_ordered(const NetSystem& net, const Observation& o,
                                         const SearchBudget& budget);

/// Sequences s' whose projection is any ordering of ms, sorted by transition
/// index.
std::vector<Explanation> explain_multiset(const NetSystem& net, const ObservationMultiset& ms,
                                          const SearchBudget& budget);

/// Every fireable sequence of length <= max_len, including the empty one, in
/// lexicographic order. Exhaustive; meant for small nets and test oracles.
std::vector<FiringSequence> enumerate_runs(const NetSystem& net, std::size_t max_len);

}  // namespace pndiag
