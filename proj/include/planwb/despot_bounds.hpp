#pragma once

#include "planwb/pocman.hpp"
#include "planwb/rocksample.hpp"

namespace planwb {

// Uninformed bound on any discounted return: the maximum reward forever.
double upper_bound_trivial(double r_max, double gamma);

// Hindsight bound for one fully known rocksample state: greedily tour the
// valuable unsampled rocks in nearest-neighbor order, collecting +10 at each
// arrival time, then exit east for the final +10. Travel costs one step per
// cell and each sample action costs one step.
double rocksample_hindsight_bound(const RocksampleModel& model, const RockState& s);

// Hindsight bound for one fully known pocman state: every pellet is scored at
// its straight-line (wall-free) Manhattan arrival time, and the level-clear
// bonus lands after the farthest pellet. No food at all leaves just the
// one-step-discounted clear bonus.
double pocman_hindsight_bound(const PocmanModel& model, const PocState& s);

}  // namespace planwb
