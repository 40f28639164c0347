#pragma once

#include "pndiag/net.hpp"

namespace pndiag::fixtures {

/// The ten-place, eight-transition net used throughout the tests: a single
/// token in p1 picks one of f (fault), u_1, u_2; A/B order and D vs C then
/// reveal which one fired, and E loops forever on p0.
NetSystem figure1();

}  // namespace pndiag::fixtures
