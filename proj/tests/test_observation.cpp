#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pndiag/fixtures.hpp"
#include "pndiag/net.hpp"
#include "pndiag/observation.hpp"

namespace pndiag {
namespace {

class ObservationTest : public ::testing::Test {
 protected:
  FiringSequence seq(std::initializer_list<const char*> names) const {
    FiringSequence out;
    for (const char* n : names) out.push_back(*net.find_transition(n));
    return out;
  }
  Observation obs(std::initializer_list<const char*> names) const { return Observation{seq(names)}; }

  NetSystem net = fixtures::figure1();
};

TEST_F(ObservationTest, ProjectDropsUnobservables) {
  EXPECT_EQ(project(net.labeling(), seq({"f", "A", "B", "D", "E", "E"})), obs({"A", "B", "D", "E", "E"}));
  EXPECT_EQ(project(net.labeling(), {}), Observation{});
  EXPECT_EQ(project(net.labeling(), seq({"u_1", "B", "A", "D"})), obs({"B", "A", "D"}));
}

TEST_F(ObservationTest, Prefixes) {
  EXPECT_EQ(prefixes(obs({"A", "B", "D"})),
            (std::vector{obs({}), obs({"A"}), obs({"A", "B"}), obs({"A", "B", "D"})}));
  EXPECT_EQ(prefixes(Observation{}), std::vector{Observation{}});
  EXPECT_EQ(prefixes(obs({"A", "A"})), (std::vector{obs({}), obs({"A"}), obs({"A", "A"})}));
}

TEST_F(ObservationTest, Multiset) {
  const TransitionId a = *net.find_transition("A");
  const TransitionId b = *net.find_transition("B");
  const TransitionId e = *net.find_transition("E");
  EXPECT_EQ(to_multiset(obs({"A", "B"})).counts, (std::map<TransitionId, std::uint32_t>{{a, 1}, {b, 1}}));
  EXPECT_TRUE(to_multiset(Observation{}).counts.empty());
  EXPECT_EQ(to_multiset(obs({"E", "E", "A"})).counts,
            (std::map<TransitionId, std::uint32_t>{{e, 2}, {a, 1}}));
  EXPECT_EQ(to_multiset(obs({"E", "E", "A"})).total(), 3u);
}

TEST_F(ObservationTest, Properties) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(net.transition_count() - 1));
  for (int trial = 0; trial < 500; ++trial) {
    FiringSequence s(rng() % 9);
    for (auto& t : s) t = TransitionId{pick(rng)};
    const Observation o = project(net.labeling(), s);

    EXPECT_EQ(project(net.labeling(), o.events), o);
    const auto unobservable = std::count_if(s.begin(), s.end(), [&](TransitionId t) {
      return !net.labeling().is_observable(t);
    });
    EXPECT_EQ(o.size() + static_cast<std::size_t>(unobservable), s.size());

    Observation shuffled = o;
    std::shuffle(shuffled.events.begin(), shuffled.events.end(), rng);
    EXPECT_EQ(to_multiset(shuffled), to_multiset(o));
    EXPECT_EQ(to_multiset(o).total(), o.size());

    const auto all = prefixes(o);
    ASSERT_EQ(all.size(), o.size() + 1);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size(); ++j) {
        EXPECT_TRUE(std::equal(all[i].events.begin(), all[i].events.end(), all[j].events.begin()));
      }
    }
  }
}

TEST(Labeling, FaultMustBeUnobservable) {
  EXPECT_THROW(Labeling({TransitionId{0}}, {TransitionId{0}}), Error);
  const Labeling ok({TransitionId{1}}, {TransitionId{0}});
  EXPECT_TRUE(ok.contains_fault({TransitionId{1}, TransitionId{0}}));
  EXPECT_FALSE(ok.contains_fault({TransitionId{1}}));
}

}  // namespace
}  // namespace pndiag
