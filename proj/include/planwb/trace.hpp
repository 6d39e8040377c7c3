#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planwb/atoms.hpp"

namespace planwb {

struct TraceStep {
  int t = 0;
  asp::FactBank features;  // emission order preserved
  asp::GAtom action;
  double reward = 0.0;
};

// One episode's record. Line format:
//   # domain=<name> seed=<u64> config=<16 hex digits>
//   t=<int> action=<ground atom> reward=<real> features={<atom>,<atom>,...}
//   return=<real>            (suffixed with " failed=1" when the episode aborted)
struct EpisodeTrace {
  std::string domain;
  uint64_t seed = 0;
  std::string config_digest;  // 16 hex chars
  std::vector<TraceStep> steps;
  double total_return = 0.0;
  bool failed = false;
};

std::string to_text(const EpisodeTrace& trace);
std::string to_text(const std::vector<EpisodeTrace>& traces);

std::vector<EpisodeTrace> parse_traces(const std::string& text);
std::vector<EpisodeTrace> load_traces(const std::string& path);
void save_traces(const std::string& path, const std::vector<EpisodeTrace>& traces);

}  // namespace planwb
