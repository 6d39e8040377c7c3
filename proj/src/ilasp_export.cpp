#include "planwb/ilasp_export.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "planwb/atoms.hpp"
#include "planwb/text.hpp"

namespace planwb {

namespace {

const char* slot_domain(SlotKind k) {
  switch (k) {
    case SlotKind::Object: return "obj";
    case SlotKind::Value: return "value";
    case SlotKind::Distance: return "distance";
  }
  return "obj";
}

// var(obj), var(value), var(value2), ... — numbering per template.
std::string template_head(const BodyTemplate& t) {
  std::ostringstream out;
  out << t.pred;
  if (t.slots.empty()) return out.str();
  out << "(";
  std::map<SlotKind, int> seen;
  for (size_t i = 0; i < t.slots.size(); ++i) {
    if (i) out << ", ";
    const int nth = ++seen[t.slots[i]];
    out << "var(" << slot_domain(t.slots[i]);
    if (nth > 1) out << nth;
    out << ")";
  }
  out << ")";
  return out.str();
}

void write_mode_declarations(std::ostream& out, const ModeBias& bias, bool ranked) {
  if (bias.head_arity == 0) {
    out << "#modeh(" << bias.head_pred << ").\n";
  } else {
    out << "#modeh(" << bias.head_pred << "(var(obj))).\n";
  }
  bool uses_value = false;
  bool uses_distance = false;
  for (const auto& t : bias.body) {
    out << "#modeb(1, " << template_head(t) << (t.negated ? ").\n" : ", (positive)).\n");
    for (SlotKind k : t.slots) {
      uses_value |= k == SlotKind::Value;
      uses_distance |= k == SlotKind::Distance;
    }
  }
  if (uses_value) {
    out << "#modeb(1, var(value) <= const(value)).\n";
    out << "#modeb(1, var(value) >= const(value)).\n";
  }
  if (uses_distance) {
    out << "#modeb(1, var(distance) <= const(distance)).\n";
    out << "#modeb(1, var(distance) >= const(distance)).\n";
  }
  if (uses_value) {
    for (int v : bias.value_grid) out << "#constant(value, " << v << ").\n";
  }
  if (uses_distance) {
    for (int d : bias.distance_grid) out << "#constant(distance, " << d << ").\n";
  }
  out << "#maxbody(" << bias.max_len_normal << ").\n";
  if (!ranked) return;

  out << "\n";
  if (bias.head_arity == 0) {
    out << "#modeo(1, " << bias.head_pred << ").\n";
  } else {
    out << "#modeo(1, " << bias.head_pred << "(var(obj))).\n";
  }
  for (const auto& t : bias.body) {
    if (t.negated) continue;
    out << "#modeo(1, " << template_head(t) << ").\n";
  }
  if (uses_value) {
    out << "#weight(var(value)).\n";
    out << "#weight(-var(value)).\n";
  }
  if (uses_distance) {
    out << "#weight(var(distance)).\n";
    out << "#weight(-var(distance)).\n";
  }
  out << "#weight(1).\n";
  out << "#weight(-1).\n";
  out << "#maxp(2).\n";
}

void write_atom_list(std::ostream& out, const std::vector<asp::GAtom>& atoms) {
  out << "{";
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) out << ", ";
    out << asp::to_string(atoms[i]);
  }
  out << "}";
}

void write_example(std::ostream& out, const Cdpi& e, int ordinal) {
  out << "#pos(";
  const int group = e.group >= 0 ? e.group : ordinal;
  if (e.rank) {
    out << "o" << group << "_" << ordinal << "@" << *e.rank;
  } else {
    out << "e" << group;
  }
  out << ", ";
  write_atom_list(out, e.inc);
  out << ", ";
  write_atom_list(out, e.exc);
  out << ", ";
  if (e.context.empty()) {
    out << "{}).\n";
    return;
  }
  out << "{\n";
  for (const auto& g : e.context) out << "  " << asp::to_string(g) << ".\n";
  out << "}).\n";
}

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

// Returns the text inside the brace block starting at s[pos] == '{' and moves
// pos past the closing brace.
std::string brace_block(const std::string& s, size_t& pos, const std::string& path) {
  if (pos >= s.size() || s[pos] != '{') parse_error(path, "expected '{' in #pos block");
  int depth = 0;
  const size_t start = pos + 1;
  for (; pos < s.size(); ++pos) {
    if (s[pos] == '{') ++depth;
    if (s[pos] == '}' && --depth == 0) {
      std::string inner = s.substr(start, pos - start);
      ++pos;
      return inner;
    }
  }
  parse_error(path, "unterminated '{' in #pos block");
}

void skip_ws(const std::string& s, size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\n' || s[pos] == '\t' || s[pos] == '\r')) {
    ++pos;
  }
}

std::vector<asp::GAtom> atoms_from_list(const std::string& text, char sep) {
  std::vector<asp::GAtom> out;
  for (const auto& piece : split_top_level(text, sep)) {
    auto t = trim(piece);
    if (t.empty()) continue;
    out.push_back(asp::parse_gatom(std::string(t)));
  }
  return out;
}

}  // namespace

std::vector<IlaspTask> export_ilasp(std::span<const Cdpi> cdpis,
                                    std::span<const ModeBias> biases, const std::string& stem) {
  std::set<std::string> preds;
  for (const Cdpi& e : cdpis) {
    const int32_t p = subject_pred(e);
    if (p >= 0) preds.insert(asp::Symbols::name(p));
  }
  for (const ModeBias& b : biases) preds.insert(b.head_pred);

  const std::filesystem::path stem_path(stem);
  if (stem_path.has_parent_path()) {
    std::filesystem::create_directories(stem_path.parent_path());
  }

  std::vector<IlaspTask> tasks;
  for (const std::string& name : preds) {
    const int32_t pred = asp::Symbols::intern(name);
    std::vector<const Cdpi*> mine;
    for (const Cdpi& e : cdpis) {
      if (subject_pred(e) == pred) mine.push_back(&e);
    }
    std::stable_sort(mine.begin(), mine.end(),
                     [](const Cdpi* a, const Cdpi* b) { return a->group < b->group; });
    const bool ranked =
        std::any_of(mine.begin(), mine.end(), [](const Cdpi* e) { return e->rank.has_value(); });

    const ModeBias* bias = nullptr;
    for (const ModeBias& b : biases) {
      if (b.head_pred == name) bias = &b;
    }

    IlaspTask task;
    task.pred = name;
    task.path = stem + "_" + name + ".las";

    std::ostringstream out;
    out << "% learning task: " << name << "\n\n";
    if (bias) {
      write_mode_declarations(out, *bias, ranked);
    } else {
      out << "% no mode declarations for this predicate\n";
    }
    for (const Cdpi* e : mine) {
      out << "\n";
      write_example(out, *e, task.examples);
      ++task.examples;
    }

    std::ofstream f(task.path, std::ios::binary);
    if (!f) throw std::runtime_error(task.path + ": cannot open for writing");
    f << out.str();
    f.flush();
    if (!f) throw std::runtime_error(task.path + ": write failed");
    tasks.push_back(std::move(task));
  }
  return tasks;
}

std::vector<Cdpi> parse_ilasp_examples(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) parse_error(path, "cannot open");
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();

  std::vector<Cdpi> out;
  size_t pos = 0;
  while ((pos = text.find("#pos(", pos)) != std::string::npos) {
    pos += 5;
    const size_t id_end = text.find(',', pos);
    if (id_end == std::string::npos) parse_error(path, "missing id separator in #pos block");
    const std::string id(trim(text.substr(pos, id_end - pos)));
    pos = id_end + 1;

    Cdpi e;
    size_t digits = 0;
    while (digits < id.size() && !(id[digits] >= '0' && id[digits] <= '9')) ++digits;
    if (digits < id.size()) e.group = std::stoi(id.substr(digits));
    if (const size_t at = id.find('@'); at != std::string::npos) {
      e.rank = std::stoi(id.substr(at + 1));
    }

    skip_ws(text, pos);
    e.inc = atoms_from_list(brace_block(text, pos, path), ',');
    skip_ws(text, pos);
    if (pos >= text.size() || text[pos] != ',') parse_error(path, "expected ',' after inclusions");
    ++pos;
    skip_ws(text, pos);
    e.exc = atoms_from_list(brace_block(text, pos, path), ',');
    skip_ws(text, pos);
    if (pos >= text.size() || text[pos] != ',') parse_error(path, "expected ',' after exclusions");
    ++pos;
    skip_ws(text, pos);
    e.context = atoms_from_list(brace_block(text, pos, path), '.');
    skip_ws(text, pos);
    if (pos + 1 >= text.size() || text[pos] != ')' || text[pos + 1] != '.') {
      parse_error(path, "expected ').' closing #pos block");
    }
    pos += 2;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace planwb
