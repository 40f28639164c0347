#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pndiag/explain.hpp"
#include "pndiag/net.hpp"
#include "pndiag/observation.hpp"

namespace pndiag {

enum class Verdict {
  kNoFault,
  kFaultPossible,
  kFaultCertain,
  /// The observation cannot be produced by the net.
  kNoExplanation,
};

/// "NO_FAULT", "FAULT_POSSIBLE", "FAULT_CERTAIN" or "NO_EXPLANATION".
std::string_view to_string(Verdict v);

Verdict verdict_of(std::span<const Explanation> explanations);

enum class DiagnosisMode { kExact, kEfficient };

std::string_view to_string(DiagnosisMode mode);

struct PrefixVerdict {
  std::size_t prefix = 0;
  std::size_t explanations = 0;
  std::size_t faulty = 0;
  Verdict verdict = Verdict::kNoExplanation;
};

struct DiagnosisTrace {
  DiagnosisMode mode = DiagnosisMode::kExact;
  /// One entry per prefix o_0 .. o_n.
  std::vector<PrefixVerdict> per_prefix;
  Verdict final = Verdict::kNoExplanation;
  std::optional<std::size_t> first_certain;
  /// Efficient mode only: a prefix after the first certain one was not
  /// itself certain.
  bool anomalous = false;
};

/// Verdict of every prefix from the ordered explanations. Throws
/// std::logic_error if certainty ever reverts.
DiagnosisTrace diagnose_exact(const NetSystem& net, const Observation& o,
                              const SearchBudget& budget);

/// Verdict of every prefix from the order-dropped explanations of its
/// multiset. FAULT_CERTAIN at any prefix latches into the final verdict.
DiagnosisTrace diagnose_efficient(const NetSystem& net, const Observation& o,
                                  const SearchBudget& budget);

/// (exact, efficient) for the same observation.
std::pair<DiagnosisTrace, DiagnosisTrace> compare(const NetSystem& net, const Observation& o,
                                                  const SearchBudget& budget);

struct ImprecisionWitness {
  FiringSequence run;
  Observation observation;
  Verdict exact = Verdict::kFaultCertain;
  Verdict efficient = Verdict::kFaultPossible;
};

struct PrecisionReport {
  std::size_t bound = 0;
  /// Sorted by observation length, then by transition index.
  std::vector<ImprecisionWitness> imprecise_witnesses;
  bool diagnosable_within_bound = true;
  /// Largest number of observable events between the first fault firing and
  /// exact certainty, over faulty runs. Empty when no faulty run was detected.
  std::optional<std::size_t> detection_delay;
  std::size_t observations_checked = 0;
  std::size_t faulty_runs_checked = 0;
  /// Faulty runs, maximal within the bound, whose observation never becomes
  /// exactly FAULT_CERTAIN.
  std::vector<FiringSequence> undetected_runs;
};

/// Runs both diagnosers on every observation of length <= bound that the net
/// can produce. A faulty run is maximal when its observation reached the
/// bound or when nothing is enabled any more. `jobs` > 1 spreads diagnoser
/// calls over threads without changing the result.
PrecisionReport precision_check(const NetSystem& net, std::size_t bound,
                                const SearchBudget& budget, unsigned jobs = 1);

}  // namespace pndiag
