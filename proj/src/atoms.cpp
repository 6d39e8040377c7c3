#include "planwb/atoms.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>

#include "planwb/text.hpp"

namespace planwb::asp {

namespace {
struct Interner {
  std::mutex mu;
  std::unordered_map<std::string, int32_t> ids;
  std::vector<std::string> names;
};
Interner& interner() {
  static Interner* g = new Interner;
  return *g;
}
}  // namespace

int32_t Symbols::intern(std::string_view name) {
  auto& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  auto it = in.ids.find(std::string(name));
  if (it != in.ids.end()) return it->second;
  int32_t id = static_cast<int32_t>(in.names.size());
  in.names.emplace_back(name);
  in.ids.emplace(in.names.back(), id);
  return id;
}

const std::string& Symbols::name(int32_t id) {
  auto& in = interner();
  std::lock_guard<std::mutex> lock(in.mu);
  return in.names.at(static_cast<size_t>(id));
}

int compare(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind == Term::Int ? -1 : 1;
  if (a.kind == Term::Int) return a.value < b.value ? -1 : a.value > b.value ? 1 : 0;
  return Symbols::name(a.value).compare(Symbols::name(b.value));
}

int compare(const GAtom& a, const GAtom& b) {
  int c = Symbols::name(a.pred).compare(Symbols::name(b.pred));
  if (c != 0) return c < 0 ? -1 : 1;
  if (a.arity != b.arity) return a.arity < b.arity ? -1 : 1;
  for (int i = 0; i < a.arity; ++i) {
    c = compare(a.arg[i], b.arg[i]);
    if (c != 0) return c;
  }
  return 0;
}

GAtom make_atom(std::string_view pred) {
  GAtom a;
  a.pred = Symbols::intern(pred);
  return a;
}
GAtom make_atom(std::string_view pred, Term a0) {
  GAtom a = make_atom(pred);
  a.arity = 1;
  a.arg[0] = a0;
  return a;
}
GAtom make_atom(std::string_view pred, Term a0, Term a1) {
  GAtom a = make_atom(pred, a0);
  a.arity = 2;
  a.arg[1] = a1;
  return a;
}
GAtom make_atom(std::string_view pred, Term a0, Term a1, Term a2) {
  GAtom a = make_atom(pred, a0, a1);
  a.arity = 3;
  a.arg[2] = a2;
  return a;
}

std::string to_string(const GAtom& a) {
  std::string out = Symbols::name(a.pred);
  if (a.arity == 0) return out;
  out += '(';
  for (int i = 0; i < a.arity; ++i) {
    if (i) out += ',';
    if (a.arg[i].kind == Term::Int)
      out += std::to_string(a.arg[i].value);
    else
      out += Symbols::name(a.arg[i].value);
  }
  out += ')';
  return out;
}

GAtom parse_gatom(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw std::runtime_error("empty atom");
  size_t paren = s.find('(');
  if (paren == std::string_view::npos) {
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw std::runtime_error("malformed atom: " + std::string(s));
    return make_atom(s);
  }
  if (s.back() != ')') throw std::runtime_error("malformed atom: " + std::string(s));
  auto name = trim(s.substr(0, paren));
  if (name.empty()) throw std::runtime_error("malformed atom: " + std::string(s));
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      throw std::runtime_error("malformed atom: " + std::string(s));
  GAtom a = make_atom(name);
  auto args = split(s.substr(paren + 1, s.size() - paren - 2), ',');
  if (args.size() > 3) throw std::runtime_error("atom arity > 3: " + std::string(s));
  for (auto& raw : args) {
    auto t = trim(raw);
    if (t.empty()) throw std::runtime_error("malformed atom: " + std::string(s));
    if (t[0] == '-' || std::isdigit(static_cast<unsigned char>(t[0]))) {
      char* end = nullptr;
      long v = std::strtol(std::string(t).c_str(), &end, 10);
      a.arg[a.arity] = Term::integer(static_cast<int32_t>(v));
    } else {
      a.arg[a.arity] = Term::symbol(t);
    }
    ++a.arity;
  }
  return a;
}

void FactBank::add(const GAtom& a) {
  if (!set_.insert(a).second) return;
  atoms_.push_back(a);
  by_pred_[a.pred].push_back(a);
}

std::span<const GAtom> FactBank::with_pred(int32_t pred) const {
  auto it = by_pred_.find(pred);
  if (it == by_pred_.end()) return {};
  return {it->second.data(), it->second.size()};
}

void FactBank::clear() {
  atoms_.clear();
  set_.clear();
  by_pred_.clear();
}

}  // namespace planwb::asp
