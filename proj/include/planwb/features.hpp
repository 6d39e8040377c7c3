#pragma once

#include <span>
#include <vector>

#include "planwb/atoms.hpp"
#include "planwb/belief.hpp"
#include "planwb/pocman.hpp"
#include "planwb/rocksample.hpp"

namespace planwb {

// Nearest-multiple rounding of a probability to an integer percentage,
// half-up, clamped to [0, 100]. bucket is 1 (rocksample) or 10 (pocman).
int discretize_prob(double p, int bucket);

// --- rocksample ---------------------------------------------------------
// Atoms emitted, in order: guess(R,V) for R = 1..M with V the percentage of
// particles holding rock R valuable; dist(R,D) Manhattan agent->rock;
// delta_x(R,D) and delta_y(R,D) signed rock-minus-agent offsets; sampled(R)
// for every sampled rock; num_sampled(V) with V the percentage of rocks
// sampled.

// Per-rock fraction of particles in which the rock is valuable.
std::vector<double> rs_value_fractions(const RocksampleModel& model,
                                       const ParticleBelief<RockState>& belief);

// Feature set for an arbitrary observable state with frozen value estimates;
// planners use this to refresh position-dependent atoms during simulation
// while keeping the belief-derived guesses fixed.
asp::FactBank rs_features_at(const RocksampleModel& model, const RockState& s,
                             std::span<const double> value_frac);

asp::FactBank rs_features(const RocksampleModel& model, const ParticleBelief<RockState>& belief);

// --- pocman --------------------------------------------------------------
// Atoms emitted, in order: ghost(C,D,V) then food(C,D,V) for each direction
// C in {north,south,east,west} and D = 1..kPocMaxDist, V the percentage
// (bucket 10) of particles with at least one ghost (food pellet) within
// Manhattan distance D inside the axis-aligned cone of C; then wall(C) for
// each direction whose adjacent cell is a wall. Cones share diagonal ties:
// a cell with |dx| == |dy| lies in both adjacent cones.
inline constexpr int kPocMaxDist = 8;

asp::FactBank poc_features_at(const PocmanModel& model, const ParticleBelief<PocState>& belief,
                              int agent_x, int agent_y);

asp::FactBank poc_features(const PocmanModel& model, const ParticleBelief<PocState>& belief);

}  // namespace planwb
