#include "pndiag/observation.hpp"

#include <algorithm>

#include "pndiag/error.hpp"

namespace pndiag {

Labeling::Labeling(std::set<TransitionId> observable, std::set<TransitionId> fault)
    : observable_(std::move(observable)), fault_(std::move(fault)) {
  for (const TransitionId t : fault_) {
    if (observable_.contains(t)) {
      throw Error(ErrorCode::kObservableFault, "fault transition must be unobservable");
    }
  }
}

bool Labeling::contains_fault(const FiringSequence& s) const {
  return std::any_of(s.begin(), s.end(), [this](TransitionId t) { return is_fault(t); });
}

std::size_t ObservationMultiset::total() const {
  std::size_t n = 0;
  for (const auto& [t, count] : counts) n += count;
  return n;
}

Observation project(const Labeling& labeling, const FiringSequence& s) {
  Observation o;
  std::copy_if(s.begin(), s.end(), std::back_inserter(o.events),
               [&](TransitionId t) { return labeling.is_observable(t); });
  return o;
}

std::vector<Observation> prefixes(const Observation& o) {
  std::vector<Observation> out;
  out.reserve(o.size() + 1);
  for (std::size_t i = 0; i <= o.size(); ++i) {
    out.push_back(Observation{{o.events.begin(), o.events.begin() + static_cast<std::ptrdiff_t>(i)}});
  }
  return out;
}

ObservationMultiset to_multiset(const Observation& o) {
  ObservationMultiset ms;
  for (const TransitionId t : o.events) ++ms.counts[t];
  return ms;
}

}  // namespace pndiag
