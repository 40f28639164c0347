#include <gtest/gtest.h>

#include "pndiag/diagnose.hpp"
#include "pndiag/fixtures.hpp"
#include "support/equivalence.hpp"
#include "support/random_net.hpp"
#include "support/token_game.hpp"

namespace pndiag {
namespace {

class Figure1Diagnose : public ::testing::Test {
 protected:
  Observation obs(std::initializer_list<const char*> names, std::size_t trailing_e = 0) const {
    Observation o;
    for (const char* n : names) o.events.push_back(*net.find_transition(n));
    o.events.insert(o.events.end(), trailing_e, *net.find_transition("E"));
    return o;
  }
  std::vector<Verdict> verdicts(const DiagnosisTrace& trace) const {
    std::vector<Verdict> out;
    for (const auto& pv : trace.per_prefix) out.push_back(pv.verdict);
    return out;
  }

  NetSystem net = fixtures::figure1();
  SearchBudget budget = SearchBudget::defaults(net);
};

using enum Verdict;

TEST_F(Figure1Diagnose, ExactCertainAfterABD) {
  const auto trace = diagnose_exact(net, obs({"A", "B", "D"}), budget);
  EXPECT_EQ(trace.mode, DiagnosisMode::kExact);
  EXPECT_EQ(verdicts(trace), (std::vector{kNoFault, kFaultPossible, kFaultPossible, kFaultCertain}));
  EXPECT_EQ(trace.final, kFaultCertain);
  EXPECT_EQ(trace.first_certain, 3u);
}

TEST_F(Figure1Diagnose, ExactEmptyAndReversedOrder) {
  EXPECT_EQ(diagnose_exact(net, obs({}), budget).final, kNoFault);
  EXPECT_EQ(diagnose_exact(net, obs({}), budget).per_prefix.size(), 1u);
  EXPECT_EQ(diagnose_exact(net, obs({"B", "A", "D"}), budget).final, kNoFault);
}

TEST_F(Figure1Diagnose, EfficientNeverDiagnoses) {
  const auto trace = diagnose_efficient(net, obs({"A", "B", "D", "E"}), budget);
  EXPECT_EQ(trace.mode, DiagnosisMode::kEfficient);
  EXPECT_EQ(verdicts(trace),
            (std::vector{kNoFault, kFaultPossible, kFaultPossible, kFaultPossible, kFaultPossible}));
  EXPECT_EQ(trace.final, kFaultPossible);
  EXPECT_FALSE(trace.first_certain);
  EXPECT_EQ(diagnose_efficient(net, obs({"A"}), budget).final, kFaultPossible);
  EXPECT_EQ(diagnose_efficient(net, obs({}), budget).final, kNoFault);
}

TEST_F(Figure1Diagnose, Compare) {
  auto [exact, efficient] = compare(net, obs({"A", "B", "D"}), budget);
  EXPECT_EQ(exact.final, kFaultCertain);
  EXPECT_EQ(efficient.final, kFaultPossible);
  std::tie(exact, efficient) = compare(net, obs({}), budget);
  EXPECT_EQ(exact.final, kNoFault);
  EXPECT_EQ(efficient.final, kNoFault);
  std::tie(exact, efficient) = compare(net, obs({"A", "B", "C"}), budget);
  EXPECT_EQ(exact.final, kNoFault);
  EXPECT_EQ(efficient.final, kNoFault);
}

TEST_F(Figure1Diagnose, InconsistentObservation) {
  const auto trace = diagnose_exact(net, obs({"A", "D"}), budget);
  EXPECT_EQ(trace.final, kNoExplanation);
  EXPECT_EQ(diagnose_efficient(net, obs({"C"}), budget).final, kNoExplanation);
}

TEST(Diagnose, RequiresAFaultTransition) {
  NetBuilder b;
  b.add_place("p");
  b.add_transition("X", {"p"}, {"p"}, TransitionKind::kObservable);
  b.mark("p");
  const NetSystem net = b.build();
  try {
    diagnose_exact(net, Observation{}, SearchBudget::defaults(net));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
  }
  EXPECT_THROW(diagnose_efficient(net, Observation{}, SearchBudget::defaults(net)), Error);
}

TEST(Diagnose, VerdictOf) {
  EXPECT_EQ(verdict_of({}), kNoExplanation);
  const std::vector<Explanation> mixed{{{}, true}, {{}, false}};
  EXPECT_EQ(verdict_of(mixed), kFaultPossible);
  const std::vector<Explanation> faulty{{{}, true}};
  EXPECT_EQ(verdict_of(faulty), kFaultCertain);
  const std::vector<Explanation> clean{{{}, false}};
  EXPECT_EQ(verdict_of(clean), kNoFault);
}

// {X} is only explained by the fault; {X,Y} also by the fault-free [u,Y,X].
// The ordered observation [X,Y] is inconsistent, so only the multiset view
// can drop certainty: the latch holds and the trace is flagged.
TEST(Diagnose, EfficientLatchAndAnomalyFlag) {
  NetBuilder b;
  for (const char* p : {"s", "a", "b", "c"}) b.add_place(p);
  b.add_transition("f", {"s"}, {"a"}, TransitionKind::kFault);
  b.add_transition("u", {"s"}, {"c"}, TransitionKind::kUnobservable);
  b.add_transition("X", {"a"}, {"b"}, TransitionKind::kObservable);
  b.add_transition("Y", {"c"}, {"a"}, TransitionKind::kObservable);
  b.mark("s");
  const NetSystem net = b.build();
  const auto x = *net.find_transition("X");
  const auto y = *net.find_transition("Y");
  const SearchBudget budget = SearchBudget::defaults(net);

  const auto efficient = diagnose_efficient(net, Observation{{x, y}}, budget);
  EXPECT_EQ(efficient.per_prefix[1].verdict, kFaultCertain);
  EXPECT_EQ(efficient.per_prefix[2].verdict, kNoFault);
  EXPECT_EQ(efficient.final, kFaultCertain);
  EXPECT_TRUE(efficient.anomalous);
  EXPECT_EQ(diagnose_exact(net, Observation{{x, y}}, budget).final, kNoExplanation);

  const auto consistent = diagnose_efficient(net, Observation{{y, x}}, budget);
  EXPECT_EQ(consistent.final, kNoFault);
  EXPECT_FALSE(consistent.anomalous);
}

NetSystem unique_observable_after_fault() {
  NetBuilder b;
  for (const char* p : {"p1", "p2", "p3", "p4", "p5"}) b.add_place(p);
  b.add_transition("f", {"p1"}, {"p2"}, TransitionKind::kFault);
  b.add_transition("X", {"p2"}, {"p3"}, TransitionKind::kObservable);
  b.add_transition("u", {"p1"}, {"p4"}, TransitionKind::kUnobservable);
  b.add_transition("Y", {"p4"}, {"p5"}, TransitionKind::kObservable);
  b.mark("p1");
  return b.build();
}

TEST(Precision, Figure1) {
  const NetSystem net = fixtures::figure1();
  const PrecisionReport report = precision_check(net, 6, SearchBudget::defaults(net));
  EXPECT_EQ(report.bound, 6u);
  EXPECT_TRUE(report.diagnosable_within_bound);
  EXPECT_EQ(report.detection_delay, 3u);
  EXPECT_TRUE(report.undetected_runs.empty());
  ASSERT_EQ(report.imprecise_witnesses.size(), 4u);
  const auto t = [&](const char* n) { return *net.find_transition(n); };
  const auto& first = report.imprecise_witnesses.front();
  EXPECT_EQ(first.observation.events, (std::vector{t("A"), t("B"), t("D")}));
  EXPECT_EQ(first.run, (FiringSequence{t("f"), t("A"), t("B"), t("D")}));
  for (const auto& w : report.imprecise_witnesses) {
    EXPECT_EQ(w.exact, kFaultCertain);
    EXPECT_NE(w.efficient, kFaultCertain);
  }
  EXPECT_EQ(report.imprecise_witnesses.back().observation.size(), 6u);
}

TEST(Precision, JobsDoNotChangeTheReport) {
  const NetSystem net = fixtures::figure1();
  const auto one = precision_check(net, 6, SearchBudget::defaults(net), 1);
  const auto four = precision_check(net, 6, SearchBudget::defaults(net), 4);
  EXPECT_EQ(one.observations_checked, four.observations_checked);
  EXPECT_EQ(one.detection_delay, four.detection_delay);
  ASSERT_EQ(one.imprecise_witnesses.size(), four.imprecise_witnesses.size());
  for (std::size_t i = 0; i < one.imprecise_witnesses.size(); ++i) {
    EXPECT_EQ(one.imprecise_witnesses[i].run, four.imprecise_witnesses[i].run);
    EXPECT_EQ(one.imprecise_witnesses[i].observation, four.imprecise_witnesses[i].observation);
  }
}

TEST(Precision, FaultFreeNetIsVacuouslyDiagnosable) {
  NetBuilder b;
  b.add_place("p");
  b.add_transition("X", {"p"}, {"p"}, TransitionKind::kObservable);
  b.mark("p");
  const NetSystem net = b.build();
  const auto report = precision_check(net, 4, SearchBudget::defaults(net));
  EXPECT_TRUE(report.diagnosable_within_bound);
  EXPECT_TRUE(report.imprecise_witnesses.empty());
  EXPECT_FALSE(report.detection_delay);
  EXPECT_EQ(report.faulty_runs_checked, 0u);
}

TEST(Precision, UniqueObservableAfterFaultIsPrecise) {
  const NetSystem net = unique_observable_after_fault();
  const auto x = *net.find_transition("X");
  EXPECT_EQ(verdict_of(explain_multiset(net, to_multiset(Observation{{x}}), SearchBudget::defaults(net))),
            kFaultCertain);
  const auto report = precision_check(net, 3, SearchBudget::defaults(net));
  EXPECT_TRUE(report.imprecise_witnesses.empty());
  EXPECT_TRUE(report.diagnosable_within_bound);
  EXPECT_EQ(report.detection_delay, 1u);
}

TEST(Precision, IndistinguishableFaultIsNotDiagnosable) {
  NetBuilder b;
  b.add_place("p1");
  b.add_place("p2");
  b.add_transition("f", {"p1"}, {"p2"}, TransitionKind::kFault);
  b.add_transition("u", {"p1"}, {"p2"}, TransitionKind::kUnobservable);
  b.add_transition("X", {"p2"}, {"p2"}, TransitionKind::kObservable);
  b.mark("p1");
  const NetSystem net = b.build();
  const auto report = precision_check(net, 3, SearchBudget::defaults(net));
  EXPECT_FALSE(report.diagnosable_within_bound);
  EXPECT_TRUE(report.imprecise_witnesses.empty());
  ASSERT_EQ(report.undetected_runs.size(), 1u);
  EXPECT_EQ(report.undetected_runs.front().size(), 4u);
}

TEST(Precision, TrailingFaultIntoDeadlockIsUndetected) {
  NetBuilder b;
  for (const char* p : {"p1", "p2", "p3"}) b.add_place(p);
  b.add_transition("X", {"p1"}, {"p2"}, TransitionKind::kObservable);
  b.add_transition("f", {"p2"}, {"p3"}, TransitionKind::kFault);
  b.mark("p1");
  const NetSystem net = b.build();
  const auto report = precision_check(net, 5, SearchBudget::defaults(net));
  EXPECT_FALSE(report.diagnosable_within_bound);
  ASSERT_EQ(report.undetected_runs.size(), 1u);
  EXPECT_EQ(report.undetected_runs.front().size(), 2u);
}

TEST(Precision, RejectsCyclicUnobservableSubnetAndZeroBound) {
  NetBuilder b;
  b.add_place("p");
  b.add_transition("f", {"p"}, {"p"}, TransitionKind::kFault);
  const NetSystem cyclic = b.build();
  EXPECT_THROW(precision_check(cyclic, 3, SearchBudget::defaults(cyclic)), Error);
  const NetSystem fig = fixtures::figure1();
  EXPECT_THROW(precision_check(fig, 0, SearchBudget::defaults(fig)), Error);
}

TEST(Precision, WitnessesAgreeWithDiagnosers) {
  for (unsigned seed = 1; seed <= 25; ++seed) {
    const NetSystem net = testing::random_net(seed + 500);
    const SearchBudget budget = SearchBudget::defaults(net);
    const auto report = precision_check(net, 3, budget, 2);
    for (const auto& w : report.imprecise_witnesses) {
      const auto [exact, efficient] = compare(net, w.observation, budget);
      EXPECT_EQ(exact.final, kFaultCertain);
      EXPECT_NE(efficient.final, kFaultCertain);
      EXPECT_TRUE(testing::dense_fireable(net, w.run));
      EXPECT_EQ(project(net.labeling(), w.run), w.observation);
    }
  }
}

class VerdictProperties : public ::testing::TestWithParam<unsigned> {};

TEST_P(VerdictProperties, SoundnessMonotonicityTotality) {
  const NetSystem net = testing::random_net(GetParam() + 2000);
  const auto v = testing::check_verdicts(net, testing::dense_runs(net, 7), 4);
  EXPECT_GT(v.checked, 0u);
  EXPECT_EQ(v.soundness, 0u);
  EXPECT_EQ(v.monotonicity, 0u);
  EXPECT_EQ(v.no_explanation, 0u);
}

INSTANTIATE_TEST_SUITE_P(Seeds, VerdictProperties, ::testing::Range(0u, 40u));

}  // namespace
}  // namespace pndiag
