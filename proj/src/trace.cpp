#include "planwb/trace.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "planwb/text.hpp"

namespace planwb {

namespace {

std::string_view value_of(std::string_view token, std::string_view key, int line_no) {
  if (!starts_with(token, key) || token.size() <= key.size() || token[key.size()] != '=')
    throw std::runtime_error("trace: expected " + std::string(key) + "=... at line " +
                             std::to_string(line_no));
  return token.substr(key.size() + 1);
}

}  // namespace

std::string to_text(const EpisodeTrace& trace) {
  std::string out = "# domain=" + trace.domain + " seed=" + std::to_string(trace.seed) +
                    " config=" + trace.config_digest + "\n";
  for (const TraceStep& s : trace.steps) {
    out += "t=" + std::to_string(s.t) + " action=" + asp::to_string(s.action) +
           " reward=" + fmt_real(s.reward) + " features={";
    bool first = true;
    for (const asp::GAtom& a : s.features.atoms()) {
      if (!first) out += ',';
      out += asp::to_string(a);
      first = false;
    }
    out += "}\n";
  }
  out += "return=" + fmt_real(trace.total_return);
  if (trace.failed) out += " failed=1";
  out += "\n";
  return out;
}

std::string to_text(const std::vector<EpisodeTrace>& traces) {
  std::string out;
  for (const EpisodeTrace& t : traces) out += to_text(t);
  return out;
}

std::vector<EpisodeTrace> parse_traces(const std::string& text) {
  std::vector<EpisodeTrace> out;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool open = false;  // a trace is being read and lacks its footer
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (starts_with(line, "#")) {
      if (open) throw std::runtime_error("trace: header before footer at line " +
                                         std::to_string(line_no));
      auto tokens = split(std::string(trim(line.substr(1))), ' ');
      if (tokens.size() != 3)
        throw std::runtime_error("trace: malformed header at line " + std::to_string(line_no));
      EpisodeTrace t;
      t.domain = std::string(value_of(tokens[0], "domain", line_no));
      t.seed = std::stoull(std::string(value_of(tokens[1], "seed", line_no)));
      t.config_digest = std::string(value_of(tokens[2], "config", line_no));
      out.push_back(std::move(t));
      open = true;
      continue;
    }
    if (!open) throw std::runtime_error("trace: data before header at line " +
                                        std::to_string(line_no));
    if (starts_with(line, "return=")) {
      auto tokens = split(std::string(line), ' ');
      out.back().total_return = std::stod(std::string(value_of(tokens[0], "return", line_no)));
      if (tokens.size() > 1) {
        if (tokens.size() != 2 || tokens[1] != "failed=1")
          throw std::runtime_error("trace: malformed footer at line " + std::to_string(line_no));
        out.back().failed = true;
      }
      open = false;
      continue;
    }
    // Step line: t= action= reward= features={...}; the feature block may
    // contain spaces only inside atoms, so split on the first three fields.
    size_t feat = line.find("features={");
    if (!starts_with(line, "t=") || feat == std::string_view::npos || line.back() != '}')
      throw std::runtime_error("trace: malformed step at line " + std::to_string(line_no));
    auto head = split(std::string(trim(line.substr(0, feat))), ' ');
    if (head.size() != 3)
      throw std::runtime_error("trace: malformed step at line " + std::to_string(line_no));
    TraceStep step;
    step.t = std::stoi(std::string(value_of(head[0], "t", line_no)));
    step.action = asp::parse_gatom(value_of(head[1], "action", line_no));
    step.reward = std::stod(std::string(value_of(head[2], "reward", line_no)));
    std::string_view atoms = line.substr(feat + 10, line.size() - feat - 11);
    for (const auto& item : split_top_level(atoms, ',')) {
      auto a = trim(item);
      if (!a.empty()) step.features.add(asp::parse_gatom(a));
    }
    out.back().steps.push_back(std::move(step));
  }
  if (open) throw std::runtime_error("trace: missing footer at end of input");
  return out;
}

std::vector<EpisodeTrace> load_traces(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("trace: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_traces(buf.str());
}

void save_traces(const std::string& path, const std::vector<EpisodeTrace>& traces) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("trace: cannot write " + path);
  out << to_text(traces);
  if (!out) throw std::runtime_error("trace: write failed for " + path);
}

}  // namespace planwb
