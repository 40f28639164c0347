#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "pndiag/ids.hpp"

namespace pndiag {

/// Partition of transitions into observable / unobservable, with fault
/// transitions a subset of the unobservable ones.
class Labeling {
 public:
  Labeling() = default;
  Labeling(std::set<TransitionId> observable, std::set<TransitionId> fault);

  bool is_observable(TransitionId t) const { return observable_.contains(t); }
  bool is_fault(TransitionId t) const { return fault_.contains(t); }

  const std::set<TransitionId>& observable() const { return observable_; }
  const std::set<TransitionId>& fault() const { return fault_; }

  bool contains_fault(const FiringSequence& s) const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::set<TransitionId> observable_;
  std::set<TransitionId> fault_;
};

struct Observation {
  std::vector<TransitionId> events;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }

  auto operator<=>(const Observation&) const = default;
};

/// Order-forgetting view of an observation: event -> occurrence count.
struct ObservationMultiset {
  std::map<TransitionId, std::uint32_t> counts;

  std::size_t total() const;

  friend bool operator==(const ObservationMultiset&, const ObservationMultiset&) = default;
};

Observation project(const Labeling& labeling, const FiringSequence& s);

/// [o_0, o_1, ..., o_n] where o_i holds the first i events.
std::vector<Observation> prefixes(const Observation& o);

ObservationMultiset to_multiset(const Observation& o);

}  // namespace pndiag
