#include "pndiag/explain.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "pndiag/error.hpp"

namespace pndiag {

SearchBudget SearchBudget::defaults(const NetSystem& net) {
  return SearchBudget{std::max<std::size_t>(1, 10 * net.place_count()), 100000};
}

namespace {

void validate(const SearchBudget& budget) {
  if (budget.max_unobs_segment == 0 || budget.max_explanations == 0) {
    throw Error(ErrorCode::kConfiguration, "search budget dimensions must be positive");
  }
}

void require_observable(const NetSystem& net, TransitionId t) {
  net.transition(t);
  if (!net.labeling().is_observable(t)) {
    throw Error(ErrorCode::kNotObservable,
                "observation contains unobservable transition '" + net.name(t) + "'");
  }
}

// Remaining-observation bookkeeping. For the ordered semantics the state is
// the number of events consumed; for the multiset semantics it is the
// remaining count of every observable transition.
class OrderedGoal {
 public:
  explicit OrderedGoal(const Observation& o) : events_(o.events) {}

  bool done() const { return consumed_[0] == events_.size(); }
  bool accepts(TransitionId t) const { return !done() && events_[consumed_[0]] == t; }
  void consume(TransitionId) { ++consumed_[0]; }
  void restore(TransitionId) { --consumed_[0]; }
  const std::vector<std::uint32_t>& key() const { return consumed_; }

 private:
  std::vector<TransitionId> events_;
  std::vector<std::uint32_t> consumed_{0};
};

class MultisetGoal {
 public:
  MultisetGoal(const NetSystem& net, const ObservationMultiset& ms)
      : remaining_(net.transition_count(), 0) {
    for (const auto& [t, n] : ms.counts) {
      remaining_[t.index] = n;
      left_ += n;
    }
  }

  bool done() const { return left_ == 0; }
  bool accepts(TransitionId t) const { return remaining_[t.index] > 0; }
  void consume(TransitionId t) {
    --remaining_[t.index];
    --left_;
  }
  void restore(TransitionId t) {
    ++remaining_[t.index];
    ++left_;
  }
  const std::vector<std::uint32_t>& key() const { return remaining_; }

 private:
  std::vector<std::uint32_t> remaining_;
  std::size_t left_ = 0;
};

// Depth-first search over (marking, remaining observation). States proven to
// have no completion are memoized; transitions are tried in index order so
// results come out lexicographically sorted.
template <typename Goal>
class ExplanationSearch {
 public:
  ExplanationSearch(const NetSystem& net, Goal goal, const SearchBudget& budget)
      : net_(net), goal_(std::move(goal)), budget_(budget) {}

  std::vector<Explanation> run() {
    visit(net_.initial(), 0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  bool visit(const Marking& m, std::size_t segment) {
    if (goal_.done()) {
      record();
      return true;
    }
    auto key = std::make_pair(m, goal_.key());
    if (dead_.contains(key)) return false;

    bool any = false;
    for (const TransitionId t : enabled_set(net_, m)) {
      if (net_.labeling().is_observable(t)) {
        if (!goal_.accepts(t)) continue;
        goal_.consume(t);
        path_.push_back(t);
        any |= visit(fire(net_, m, t), 0);
        path_.pop_back();
        goal_.restore(t);
      } else {
        if (segment + 1 > budget_.max_unobs_segment) {
          throw BudgetExhausted("max_unobs_segment", budget_.max_unobs_segment);
        }
        path_.push_back(t);
        any |= visit(fire(net_, m, t), segment + 1);
        path_.pop_back();
      }
    }
    if (!any) dead_.insert(std::move(key));
    return any;
  }

  void record() {
    if (found_.size() >= budget_.max_explanations) {
      throw BudgetExhausted("max_explanations", budget_.max_explanations);
    }
    found_.push_back(Explanation{path_, net_.labeling().contains_fault(path_)});
  }

  const NetSystem& net_;
  Goal goal_;
  SearchBudget budget_;
  FiringSequence path_;
  std::vector<Explanation> found_;
  std::set<std::pair<Marking, std::vector<std::uint32_t>>> dead_;
};

}  // namespace

std::vector<Explanation> explain_ordered(const NetSystem& net, const Observation& o,
                                         const SearchBudget& budget) {
  validate(budget);
  for (const TransitionId t : o.events) require_observable(net, t);
  return ExplanationSearch<OrderedGoal>(net, OrderedGoal(o), budget).run();
}

std::vector<Explanation> explain_multiset(const NetSystem& net, const ObservationMultiset& ms,
                                          const SearchBudget& budget) {
  validate(budget);
  for (const auto& [t, n] : ms.counts) require_observable(net, t);
  return ExplanationSearch<MultisetGoal>(net, MultisetGoal(net, ms), budget).run();
}

std::vector<FiringSequence> enumerate_runs(const NetSystem& net, std::size_t max_len) {
  std::vector<FiringSequence> runs;
  FiringSequence path;
  const auto visit = [&](const auto& self, const Marking& m) -> void {
    runs.push_back(path);
    if (path.size() == max_len) return;
    for (const TransitionId t : enabled_set(net, m)) {
      path.push_back(t);
      self(self, fire(net, m, t));
      path.pop_back();
    }
  };
  visit(visit, net.initial());
  return runs;
}

}  // namespace pndiag
