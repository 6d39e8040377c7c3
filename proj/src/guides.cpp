#include "planwb/guides.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace planwb {

using asp::ActionSpace;
using asp::make_atom;
using asp::Term;

namespace {

const asp::RuleSet& empty_rules() {
  static const asp::RuleSet empty;
  return empty;
}

std::vector<double> uniform_weights(int n) {
  return std::vector<double>(static_cast<size_t>(n), 1.0 / n);
}

std::vector<double> spread_over(std::span<const int> actions, int n) {
  if (actions.empty()) return uniform_weights(n);
  std::vector<double> w(static_cast<size_t>(n), 0.0);
  for (int a : actions) w[static_cast<size_t>(a)] = 1.0 / static_cast<double>(actions.size());
  return w;
}

}  // namespace

ActionSpace rocksample_action_space(int rocks) {
  ActionSpace s;
  for (const char* m : {"north", "south", "east", "west"}) s.actions.push_back(make_atom(m));
  s.actions.push_back(make_atom("sample"));
  for (int r = 1; r <= rocks; ++r) s.actions.push_back(make_atom("check", Term::integer(r)));
  s.atom_aliases.emplace_back(make_atom("exit"), RocksampleModel::kEast);
  s.pred_aliases.emplace_back(asp::Symbols::intern("sample"), RocksampleModel::kSample);
  return s;
}

ActionSpace pocman_action_space() {
  ActionSpace s;
  for (int d = 0; d < kDirCount; ++d) {
    const char* n = dir_name(static_cast<Dir>(d));
    s.actions.push_back(make_atom(n));
    s.atom_aliases.emplace_back(make_atom("move", Term::symbol(n)), d);
  }
  return s;
}

// --- RockGuide -------------------------------------------------------------

RockGuide::RockGuide(const RocksampleModel& model, const asp::RuleSet* rules)
    : model_(model),
      rules_(rules ? rules : &empty_rules()),
      space_(rocksample_action_space(model.config().m)),
      obs_good_(static_cast<size_t>(model.config().m), 0),
      obs_bad_(static_cast<size_t>(model.config().m), 0),
      uniform_(uniform_weights(model.action_count())) {}

void RockGuide::begin_plan(const ParticleBelief<RockState>& belief) {
  value_frac_ = rs_value_fractions(model_, belief);
  memo_.clear();
}

RockGuide::Entry& RockGuide::entry(const RockState& s) {
  uint64_t key = static_cast<uint64_t>(s.x) | (static_cast<uint64_t>(s.y) << 8) |
                 (static_cast<uint64_t>(s.sampled_bits) << 16);
  auto [it, fresh] = memo_.try_emplace(key);
  if (fresh) it->second.feats = rs_features_at(model_, s, value_frac_);
  return it->second;
}

const asp::FactBank& RockGuide::features(const RockState& s) { return entry(s).feats; }

std::span<const int> RockGuide::entailed(const RockState& s) {
  Entry& e = entry(s);
  if (!e.entailed) e.entailed = asp::entailed_actions(*rules_, e.feats, space_);
  return *e.entailed;
}

std::span<const double> RockGuide::weights(const RockState& s, WeightKind kind) {
  if (kind == WeightKind::Uniform) return uniform_;
  Entry& e = entry(s);
  auto& slot = e.w[static_cast<size_t>(kind)];
  if (!slot) {
    switch (kind) {
      case WeightKind::Soft:
        slot = asp::rollout_weights(*rules_, e.feats, space_, asp::GuideMode::Soft);
        break;
      case WeightKind::Strict:
        slot = asp::rollout_weights(*rules_, e.feats, space_, asp::GuideMode::Strict);
        break;
      default:
        slot = spread_over(preferred(s), model_.action_count());
        break;
    }
  }
  return *slot;
}

// Handcrafted baseline: pursue the nearest rock whose check history is not
// net-negative, sample when standing on it, sense it when the history is
// tied, and head for the east exit when nothing is left worth visiting.
std::span<const int> RockGuide::preferred(const RockState& s) {
  Entry& e = entry(s);
  if (e.preferred) return *e.preferred;
  std::vector<int> acts;
  int m = model_.config().m;
  int best = -1, best_dist = 1 << 30;
  for (int r = 0; r < m; ++r) {
    if ((s.sampled_bits >> r) & 1u) continue;
    if (obs_good_[static_cast<size_t>(r)] < obs_bad_[static_cast<size_t>(r)]) continue;
    int d = model_.manhattan(s, r);
    if (d < best_dist) {
      best_dist = d;
      best = r;
    }
  }
  if (best < 0) {
    acts.push_back(RocksampleModel::kEast);
  } else if (best_dist == 0) {
    acts.push_back(RocksampleModel::kSample);
  } else {
    auto [rx, ry] = model_.rock_position(best);
    if (ry > s.y) acts.push_back(RocksampleModel::kNorth);
    if (ry < s.y) acts.push_back(RocksampleModel::kSouth);
    if (rx > s.x) acts.push_back(RocksampleModel::kEast);
    if (rx < s.x) acts.push_back(RocksampleModel::kWest);
    if (obs_good_[static_cast<size_t>(best)] == obs_bad_[static_cast<size_t>(best)])
      acts.push_back(RocksampleModel::check_action(best + 1));
  }
  e.preferred = std::move(acts);
  return *e.preferred;
}

void RockGuide::on_executed(int action, Obs obs) {
  int rock = action - 5;
  if (rock < 0 || rock >= model_.config().m) return;
  if (obs == kRockObsGood) ++obs_good_[static_cast<size_t>(rock)];
  if (obs == kRockObsBad) ++obs_bad_[static_cast<size_t>(rock)];
}

// --- PocGuide ----------------------------------------------------------------

PocGuide::PocGuide(const PocmanModel& model, const asp::RuleSet* rules)
    : model_(model),
      rules_(rules ? rules : &empty_rules()),
      space_(pocman_action_space()),
      uniform_(uniform_weights(model.action_count())) {}

void PocGuide::begin_plan(const ParticleBelief<PocState>& belief) {
  root_ = &belief;
  memo_.clear();
}

PocGuide::Entry& PocGuide::entry(const PocState& s) {
  if (!root_) throw std::logic_error("PocGuide: begin_plan not called");
  uint64_t key = static_cast<uint64_t>(model_.maze().index(s.x, s.y));
  auto [it, fresh] = memo_.try_emplace(key);
  if (fresh) it->second.feats = poc_features_at(model_, *root_, s.x, s.y);
  return it->second;
}

const asp::FactBank& PocGuide::features(const PocState& s) { return entry(s).feats; }

std::span<const int> PocGuide::entailed(const PocState& s) {
  Entry& e = entry(s);
  if (!e.entailed) e.entailed = asp::entailed_actions(*rules_, e.feats, space_);
  return *e.entailed;
}

std::span<const double> PocGuide::weights(const PocState& s, WeightKind kind) {
  if (kind == WeightKind::Uniform) return uniform_;
  Entry& e = entry(s);
  auto& slot = e.w[static_cast<size_t>(kind)];
  if (!slot) {
    switch (kind) {
      case WeightKind::Soft:
        slot = asp::rollout_weights(*rules_, e.feats, space_, asp::GuideMode::Soft);
        break;
      case WeightKind::Strict:
        slot = asp::rollout_weights(*rules_, e.feats, space_, asp::GuideMode::Strict);
        break;
      default:
        slot = spread_over(preferred(s), model_.action_count());
        break;
    }
  }
  return *slot;
}

// Handcrafted baseline: walk any non-wall direction whose cone shows no
// likely ghost within 3 cells; fall back to all non-wall directions.
std::span<const int> PocGuide::preferred(const PocState& s) {
  Entry& e = entry(s);
  if (e.preferred) return *e.preferred;
  int32_t ghost_pred = asp::Symbols::intern("ghost");
  std::array<bool, kDirCount> danger{};
  for (const asp::GAtom& a : e.feats.with_pred(ghost_pred)) {
    int d = static_cast<int>(a.arg[1].value);
    int v = static_cast<int>(a.arg[2].value);
    if (d > 3 || v < 50) continue;
    for (int c = 0; c < kDirCount; ++c)
      if (a.arg[0].value == asp::Symbols::intern(dir_name(static_cast<Dir>(c)))) danger[c] = true;
  }
  std::vector<int> open, safe;
  for (int c = 0; c < kDirCount; ++c) {
    auto [dx, dy] = dir_delta(static_cast<Dir>(c));
    if (model_.maze().wall(s.x + dx, s.y + dy)) continue;
    open.push_back(c);
    if (!danger[c]) safe.push_back(c);
  }
  e.preferred = safe.empty() ? std::move(open) : std::move(safe);
  return *e.preferred;
}

void PocGuide::on_executed(int, Obs) {}

}  // namespace planwb
