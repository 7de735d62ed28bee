#pragma once

#include "ckepler/oracle.hpp"

namespace ckepler {

/// A normalized bound level together with its sampled radial pair.
struct BoundState {
  SpectrumEntry entry;
  RadialSolution solution;
  ChannelSpec channel;
  SpaceModel space;
};

/// Assemble the n-th bound state of a channel: energy seeded from the closed
/// form where one exists, cross-checked and refined by shooting (falling
/// back to the finite-difference estimate when the closed form is not
/// confirmed), profile by two-sided integration, normalized to
/// integral (f^2 + g^2) dx = 1 with f > 0 on the first interior stretch.
BoundState bound_state(const SpaceModel& space, const ChannelSpec& ch, double e,
                       double m, int n, const GridSpec* grid = nullptr);

/// Strict sign changes of f, ignoring samples below 1e-10 * max|f|.
int node_count(const RadialSolution& sol);

}  // namespace ckepler
