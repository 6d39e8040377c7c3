#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace planwb::asp {

// Process-wide string interner for predicate names and symbolic constants.
// Ids are stable within a run; anything serialized is ordered by string, never
// by id, so interning order cannot leak into output bytes.
class Symbols {
 public:
  static int32_t intern(std::string_view name);
  static const std::string& name(int32_t id);
};

struct Term {
  enum Kind : uint8_t { Int, Sym } kind = Int;
  int32_t value = 0;

  static Term integer(int32_t v) { return {Int, v}; }
  static Term symbol(std::string_view s) { return {Sym, Symbols::intern(s)}; }
  static Term symbol_id(int32_t id) { return {Sym, id}; }

  bool operator==(const Term& o) const { return kind == o.kind && value == o.value; }
};

// Canonical order: integers before symbols, integers numerically, symbols by
// name. Used only for deterministic tie-breaking and set comparison.
int compare(const Term& a, const Term& b);

struct GAtom {
  int32_t pred = -1;
  uint8_t arity = 0;
  Term arg[3];

  bool operator==(const GAtom& o) const {
    if (pred != o.pred || arity != o.arity) return false;
    for (int i = 0; i < arity; ++i)
      if (!(arg[i] == o.arg[i])) return false;
    return true;
  }
};

int compare(const GAtom& a, const GAtom& b);

GAtom make_atom(std::string_view pred);
GAtom make_atom(std::string_view pred, Term a0);
GAtom make_atom(std::string_view pred, Term a0, Term a1);
GAtom make_atom(std::string_view pred, Term a0, Term a1, Term a2);

std::string to_string(const GAtom& a);
// Parses "pred", "pred(1,-2)", "pred(north,3)". Throws std::runtime_error on
// malformed input.
GAtom parse_gatom(std::string_view s);

struct GAtomHash {
  size_t operator()(const GAtom& a) const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(a.pred);
    for (int i = 0; i < a.arity; ++i) {
      h = h * 0x100000001b3ull + (static_cast<uint64_t>(a.arg[i].kind) << 32 |
                                  static_cast<uint32_t>(a.arg[i].value));
    }
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

// A set of ground atoms indexed by predicate, the evaluation-time view of a
// feature snapshot (plus derived atoms during evaluation).
class FactBank {
 public:
  void add(const GAtom& a);
  bool contains(const GAtom& a) const { return set_.count(a) != 0; }
  std::span<const GAtom> with_pred(int32_t pred) const;
  const std::vector<GAtom>& atoms() const { return atoms_; }
  size_t size() const { return atoms_.size(); }
  void clear();

 private:
  std::vector<GAtom> atoms_;
  std::unordered_set<GAtom, GAtomHash> set_;
  std::unordered_map<int32_t, std::vector<GAtom>> by_pred_;
};

}  // namespace planwb::asp
