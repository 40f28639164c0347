#include "pndiag/fixtures.hpp"

namespace pndiag::fixtures {

NetSystem figure1() {
  NetBuilder b;
  for (const char* p : {"p0", "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9"}) b.add_place(p);
  b.add_transition("f", {"p1"}, {"p4", "p6"}, TransitionKind::kFault);
  b.add_transition("u_1", {"p1"}, {"p5", "p6"}, TransitionKind::kUnobservable);
  b.add_transition("u_2", {"p1"}, {"p4", "p9"}, TransitionKind::kUnobservable);
  b.add_transition("A", {"p2", "p4"}, {"p5", "p8"}, TransitionKind::kObservable);
  b.add_transition("B", {"p3", "p5"}, {"p4", "p7"}, TransitionKind::kObservable);
  b.add_transition("C", {"p7", "p8", "p9"}, {"p0"}, TransitionKind::kObservable);
  b.add_transition("D", {"p6", "p7", "p8"}, {"p0"}, TransitionKind::kObservable);
  b.add_transition("E", {"p0"}, {"p0"}, TransitionKind::kObservable);
  b.mark("p1").mark("p2").mark("p3");
  return b.build();
}

}  // namespace pndiag::fixtures
