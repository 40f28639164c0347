#include "pndiag/diagnose.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "pndiag/error.hpp"

namespace pndiag {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kNoFault:
      return "NO_FAULT";
    case Verdict::kFaultPossible:
      return "FAULT_POSSIBLE";
    case Verdict::kFaultCertain:
      return "FAULT_CERTAIN";
    case Verdict::kNoExplanation:
      return "NO_EXPLANATION";
  }
  return "?";
}

std::string_view to_string(DiagnosisMode mode) {
  return mode == DiagnosisMode::kExact ? "exact" : "efficient";
}

Verdict verdict_of(std::span<const Explanation> explanations) {
  if (explanations.empty()) return Verdict::kNoExplanation;
  const auto faulty = std::count_if(explanations.begin(), explanations.end(),
                                    [](const Explanation& e) { return e.contains_fault; });
  if (faulty == 0) return Verdict::kNoFault;
  if (static_cast<std::size_t>(faulty) == explanations.size()) return Verdict::kFaultCertain;
  return Verdict::kFaultPossible;
}

namespace {

PrefixVerdict summarize(std::size_t prefix, const std::vector<Explanation>& explanations) {
  PrefixVerdict pv;
  pv.prefix = prefix;
  pv.explanations = explanations.size();
  pv.faulty = static_cast<std::size_t>(
      std::count_if(explanations.begin(), explanations.end(),
                    [](const Explanation& e) { return e.contains_fault; }));
  pv.verdict = verdict_of(explanations);
  return pv;
}

std::optional<std::size_t> first_certain(const std::vector<PrefixVerdict>& per_prefix) {
  for (const PrefixVerdict& pv : per_prefix) {
    if (pv.verdict == Verdict::kFaultCertain) return pv.prefix;
  }
  return std::nullopt;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. If any call throws, the
// exception of the smallest failing index is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

DiagnosisTrace diagnose_exact(const NetSystem& net, const Observation& o,
                              const SearchBudget& budget) {
  require_diagnosable_structure(net);
  DiagnosisTrace trace;
  trace.mode = DiagnosisMode::kExact;
  const auto all = prefixes(o);
  for (std::size_t i = 0; i < all.size(); ++i) {
    trace.per_prefix.push_back(summarize(i, explain_ordered(net, all[i], budget)));
  }
  trace.first_certain = first_certain(trace.per_prefix);
  if (trace.first_certain) {
    for (std::size_t i = *trace.first_certain; i < trace.per_prefix.size(); ++i) {
      const Verdict v = trace.per_prefix[i].verdict;
      if (v != Verdict::kFaultCertain && v != Verdict::kNoExplanation) {
        throw std::logic_error("exact diagnosis lost certainty at prefix " + std::to_string(i));
      }
    }
  }
  trace.final = trace.per_prefix.back().verdict;
  return trace;
}

DiagnosisTrace diagnose_efficient(const NetSystem& net, const Observation& o,
                                  const SearchBudget& budget) {
  require_diagnosable_structure(net);
  DiagnosisTrace trace;
  trace.mode = DiagnosisMode::kEfficient;
  const auto all = prefixes(o);
  for (std::size_t i = 0; i < all.size(); ++i) {
    trace.per_prefix.push_back(summarize(i, explain_multiset(net, to_multiset(all[i]), budget)));
  }
  trace.first_certain = first_certain(trace.per_prefix);
  if (trace.first_certain) {
    trace.final = Verdict::kFaultCertain;
    trace.anomalous = std::any_of(
        trace.per_prefix.begin() + static_cast<std::ptrdiff_t>(*trace.first_certain),
        trace.per_prefix.end(),
        [](const PrefixVerdict& pv) { return pv.verdict != Verdict::kFaultCertain; });
  } else {
    trace.final = trace.per_prefix.back().verdict;
  }
  return trace;
}

std::pair<DiagnosisTrace, DiagnosisTrace> compare(const NetSystem& net, const Observation& o,
                                                  const SearchBudget& budget) {
  return {diagnose_exact(net, o, budget), diagnose_efficient(net, o, budget)};
}

namespace {

struct FaultyRunKey {
  Observation observation;
  // Observable events fired before the first fault.
  std::size_t fault_position = 0;

  auto operator<=>(const FaultyRunKey&) const = default;
};

// Enumerates runs whose observation has at most `bound` events. Distinct
// observations are collected; faulty runs that cannot be extended within the
// bound are kept with their first (lexicographically smallest) representative.
class RunExplorer {
 public:
  RunExplorer(const NetSystem& net, std::size_t bound, const SearchBudget& budget)
      : net_(net), bound_(bound), budget_(budget) {}

  void run() {
    observations_.insert(Observation{});
    visit(net_.initial(), 0);
  }

  const std::set<Observation>& observations() const { return observations_; }
  const std::map<FaultyRunKey, FiringSequence>& faulty_maximal() const { return faulty_; }

 private:
  void visit(const Marking& m, std::size_t segment) {
    const auto enabled = enabled_set(net_, m);
    if (enabled.empty()) {
      leaf();
      return;
    }
    for (const TransitionId t : enabled) {
      path_.push_back(t);
      if (net_.labeling().is_observable(t)) {
        observation_.events.push_back(t);
        observations_.insert(observation_);
        if (observation_.size() == bound_) {
          leaf();
        } else {
          visit(fire(net_, m, t), 0);
        }
        observation_.events.pop_back();
      } else {
        if (segment + 1 > budget_.max_unobs_segment) {
          throw BudgetExhausted("max_unobs_segment", budget_.max_unobs_segment);
        }
        const bool first_fault = !fault_position_ && net_.labeling().is_fault(t);
        if (first_fault) fault_position_ = observation_.size();
        visit(fire(net_, m, t), segment + 1);
        if (first_fault) fault_position_.reset();
      }
      path_.pop_back();
    }
  }

  void leaf() {
    if (++leaves_ > budget_.max_explanations) {
      throw BudgetExhausted("max_explanations", budget_.max_explanations);
    }
    if (fault_position_) faulty_.emplace(FaultyRunKey{observation_, *fault_position_}, path_);
  }

  const NetSystem& net_;
  std::size_t bound_;
  SearchBudget budget_;
  FiringSequence path_;
  Observation observation_;
  std::optional<std::size_t> fault_position_;
  std::size_t leaves_ = 0;
  std::set<Observation> observations_;
  std::map<FaultyRunKey, FiringSequence> faulty_;
};

bool shorter_first(const Observation& a, const Observation& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

PrecisionReport precision_check(const NetSystem& net, std::size_t bound,
                                const SearchBudget& budget, unsigned jobs) {
  // A net without faults is accepted here: it is vacuously diagnosable.
  if (const StructureReport structure = check_structure(net); !structure.unobservable_acyclic) {
    throw Error(ErrorCode::kConfiguration, "net cannot be diagnosed: " + structure.findings.front());
  }
  if (bound == 0) throw Error(ErrorCode::kConfiguration, "precision bound must be positive");

  RunExplorer explorer(net, bound, budget);
  explorer.run();

  std::vector<Observation> observations(explorer.observations().begin(),
                                        explorer.observations().end());
  std::sort(observations.begin(), observations.end(), shorter_first);
  std::map<Observation, std::size_t> observation_index;
  for (std::size_t i = 0; i < observations.size(); ++i) observation_index[observations[i]] = i;

  std::vector<std::vector<std::uint32_t>> multiset_keys;
  std::map<std::vector<std::uint32_t>, std::size_t> multiset_index;
  std::vector<std::size_t> multiset_of(observations.size());
  for (std::size_t i = 0; i < observations.size(); ++i) {
    std::vector<std::uint32_t> key(net.transition_count(), 0);
    for (const TransitionId t : observations[i].events) ++key[t.index];
    const auto [it, inserted] = multiset_index.emplace(key, multiset_keys.size());
    if (inserted) multiset_keys.push_back(key);
    multiset_of[i] = it->second;
  }

  // Tasks [0, |obs|) are ordered searches, the rest one per distinct multiset.
  std::vector<Verdict> exact(observations.size());
  std::vector<FiringSequence> representative(observations.size());
  std::vector<Verdict> multiset_verdict(multiset_keys.size());
  parallel_for(observations.size() + multiset_keys.size(), jobs, [&](std::size_t task) {
    if (task < observations.size()) {
      const auto explanations = explain_ordered(net, observations[task], budget);
      exact[task] = verdict_of(explanations);
      if (!explanations.empty()) representative[task] = explanations.front().sequence;
      return;
    }
    const std::size_t k = task - observations.size();
    ObservationMultiset ms;
    for (std::uint32_t t = 0; t < multiset_keys[k].size(); ++t) {
      if (multiset_keys[k][t] > 0) ms.counts[TransitionId{t}] = multiset_keys[k][t];
    }
    multiset_verdict[k] = verdict_of(explain_multiset(net, ms, budget));
  });

  const auto prefix_index = [&](const Observation& o, std::size_t len) {
    return observation_index.at(
        Observation{{o.events.begin(), o.events.begin() + static_cast<std::ptrdiff_t>(len)}});
  };

  PrecisionReport report;
  report.bound = bound;
  report.observations_checked = observations.size();

  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (exact[i] != Verdict::kFaultCertain) continue;
    const Observation& o = observations[i];
    bool efficient_certain = false;
    for (std::size_t len = 0; len <= o.size() && !efficient_certain; ++len) {
      efficient_certain =
          multiset_verdict[multiset_of[prefix_index(o, len)]] == Verdict::kFaultCertain;
    }
    if (!efficient_certain) {
      report.imprecise_witnesses.push_back(
          ImprecisionWitness{representative[i], o, exact[i], multiset_verdict[multiset_of[i]]});
    }
  }

  for (const auto& [key, run] : explorer.faulty_maximal()) {
    ++report.faulty_runs_checked;
    std::optional<std::size_t> detected_at;
    for (std::size_t len = key.fault_position + 1; len <= key.observation.size(); ++len) {
      if (exact[prefix_index(key.observation, len)] == Verdict::kFaultCertain) {
        detected_at = len;
        break;
      }
    }
    if (!detected_at) {
      report.diagnosable_within_bound = false;
      report.undetected_runs.push_back(run);
      continue;
    }
    const std::size_t delay = *detected_at - key.fault_position;
    report.detection_delay = std::max(report.detection_delay.value_or(0), delay);
  }
  std::sort(report.undetected_runs.begin(), report.undetected_runs.end());
  return report;
}

}  // namespace pndiag
