#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pndiag/error.hpp"
#include "pndiag/ids.hpp"
#include "pndiag/observation.hpp"

namespace pndiag {

/// Sparse token assignment. Places with zero tokens are never stored, so two
/// markings compare equal iff they agree on every place.
class Marking {
 public:
  Marking() = default;
  Marking(std::initializer_list<std::pair<const PlaceId, std::uint32_t>> counts);

  std::uint32_t operator[](PlaceId p) const;
  void set(PlaceId p, std::uint32_t count);
  void add(PlaceId p, std::uint32_t count = 1);
  /// Removes one token; precondition: the place is marked.
  void take(PlaceId p);

  std::uint64_t total() const;
  bool empty() const { return counts_.empty(); }
  /// Pointwise >=.
  bool covers(const Marking& other) const;

  const std::map<PlaceId, std::uint32_t>& counts() const { return counts_; }

  auto operator<=>(const Marking&) const = default;

 private:
  std::map<PlaceId, std::uint32_t> counts_;
};

struct Transition {
  TransitionId id;
  std::string name;
  std::vector<PlaceId> pre;   // sorted, unique, nonempty
  std::vector<PlaceId> post;  // sorted, unique
};

/// Immutable net structure plus initial marking and labeling. Construction
/// validates ids and names; unobservable acyclicity is reported separately by
/// check_structure() so malformed nets can still be inspected.
class NetSystem {
 public:
  NetSystem(std::vector<std::string> place_names, std::vector<Transition> transitions,
            Marking initial, Labeling labeling);

  std::size_t place_count() const { return place_names_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }

  const std::vector<std::string>& place_names() const { return place_names_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Transition& transition(TransitionId t) const;
  const Marking& initial() const { return initial_; }
  const Labeling& labeling() const { return labeling_; }

  const std::string& name(PlaceId p) const;
  const std::string& name(TransitionId t) const;
  std::optional<PlaceId> find_place(std::string_view name) const;
  std::optional<TransitionId> find_transition(std::string_view name) const;

  friend bool operator==(const NetSystem&, const NetSystem&);

 private:
  std::vector<std::string> place_names_;
  std::vector<Transition> transitions_;
  Marking initial_;
  Labeling labeling_;
  std::unordered_map<std::string, PlaceId> place_index_;
  std::unordered_map<std::string, TransitionId> transition_index_;
};

enum class TransitionKind { kObservable, kUnobservable, kFault };

/// Name-based incremental construction, mostly for tests and the file reader.
class NetBuilder {
 public:
  PlaceId add_place(std::string name);
  TransitionId add_transition(std::string name, const std::vector<std::string>& pre,
                              const std::vector<std::string>& post, TransitionKind kind);
  NetBuilder& mark(const std::string& place, std::uint32_t count = 1);
  NetSystem build() const;

 private:
  PlaceId require_place(const std::string& name) const;

  std::vector<std::string> places_;
  std::vector<Transition> transitions_;
  std::set<TransitionId> observable_;
  std::set<TransitionId> fault_;
  Marking initial_;
};

/// Thrown by fire_sequence(); carries the failing step and the marking there.
class FiringError : public Error {
 public:
  FiringError(std::size_t step, Marking marking, const std::string& message)
      : Error(ErrorCode::kDisabledTransition, message), step_(step), marking_(std::move(marking)) {}

  std::size_t step() const noexcept { return step_; }
  const Marking& marking() const noexcept { return marking_; }

 private:
  std::size_t step_;
  Marking marking_;
};

bool is_enabled(const NetSystem& net, const Marking& m, TransitionId t);
Marking fire(const NetSystem& net, const Marking& m, TransitionId t);
Marking fire_sequence(const NetSystem& net, const Marking& m, const FiringSequence& s);
std::vector<TransitionId> enabled_set(const NetSystem& net, const Marking& m);

struct StructureReport {
  bool unobservable_acyclic = true;
  /// Alternating place/transition names, first == last, when a cycle exists.
  std::vector<std::string> cycle_witness;
  std::size_t fault_count = 0;
  std::vector<std::string> findings;

  bool ok() const { return unobservable_acyclic && fault_count > 0; }
};

StructureReport check_structure(const NetSystem& net);

/// Throws ErrorCode::kConfiguration unless the net can be diagnosed.
void require_diagnosable_structure(const NetSystem& net);

std::string format_marking(const NetSystem& net, const Marking& m);
std::string format_sequence(const NetSystem& net, const FiringSequence& s);

}  // namespace pndiag
