#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "planwb/rules.hpp"
#include "planwb/text.hpp"

namespace planwb::asp {

ParseError::ParseError(int line_, int column_, std::string token_, const std::string& what_)
    : std::runtime_error("parse error at line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + " near '" + token_ + "': " + what_),
      line(line_),
      column(column_),
      token(std::move(token_)) {}

namespace {

struct Token {
  enum Kind { Ident, Var, Int, Punct, End } kind;
  std::string text;
  int col;
};

class Lexer {
 public:
  Lexer(const std::string& src, int line) : src_(src), line_(line) {
    size_t i = 0;
    auto push = [&](Token::Kind k, size_t start, size_t len) {
      toks_.push_back({k, src.substr(start, len), static_cast<int>(start) + 1});
    };
    while (i < src.size()) {
      char c = src[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      if (c == '%') break;  // comment to end of line
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = i;
        while (i < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
          ++i;
        bool upper = std::isupper(static_cast<unsigned char>(src[start]));
        push(upper ? Token::Var : Token::Ident, start, i - start);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && i + 1 < src.size() &&
           std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
        size_t start = i;
        ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        push(Token::Int, start, i - start);
        continue;
      }
      // multi-char punctuation first
      static const char* two[] = {":-", ":~", "<=", ">=", "=="};
      bool matched = false;
      for (const char* p : two) {
        if (src.compare(i, 2, p) == 0) {
          push(Token::Punct, i, 2);
          i += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("(){}[].,;:@=-").find(c) != std::string_view::npos) {
        push(Token::Punct, i, 1);
        ++i;
        continue;
      }
      throw ParseError(line_, static_cast<int>(i) + 1, std::string(1, c),
                       "unexpected character");
    }
    toks_.push_back({Token::End, "", static_cast<int>(src.size()) + 1});
  }

  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + static_cast<size_t>(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept_punct(const std::string& p) {
    if (peek().kind == Token::Punct && peek().text == p) {
      next();
      return true;
    }
    return false;
  }
  void expect_punct(const std::string& p, const char* what) {
    if (!accept_punct(p)) fail(what);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, peek().col, peek().text.empty() ? "<end>" : peek().text, what);
  }
  bool at_end() const { return peek().kind == Token::End; }
  int line() const { return line_; }

 private:
  std::string src_;
  int line_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

struct VarScope {
  std::vector<std::string>* names;
  std::unordered_map<std::string, uint8_t> ids;

  uint8_t get(Lexer& lx, const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    if (names->size() >= 16) lx.fail("too many variables in one statement");
    uint8_t id = static_cast<uint8_t>(names->size());
    names->push_back(name);
    ids.emplace(name, id);
    return id;
  }
};

AtomPat parse_atom(Lexer& lx, VarScope& vars) {
  if (lx.peek().kind != Token::Ident) lx.fail("expected predicate name");
  AtomPat at;
  at.pred = Symbols::intern(lx.next().text);
  if (!lx.accept_punct("(")) return at;
  while (true) {
    if (at.arity >= 3) lx.fail("atom arity > 3");
    const Token& t = lx.peek();
    if (t.kind == Token::Var) {
      at.arg[at.arity++] = Arg::variable(vars.get(lx, lx.next().text));
    } else if (t.kind == Token::Int) {
      at.arg[at.arity++] = Arg::constant(Term::integer(std::stoi(lx.next().text)));
    } else if (t.kind == Token::Ident) {
      at.arg[at.arity++] = Arg::constant(Term::symbol(lx.next().text));
    } else {
      lx.fail("expected atom argument");
    }
    if (lx.accept_punct(")")) break;
    lx.expect_punct(",", "expected ',' or ')' in atom arguments");
  }
  return at;
}

CmpOp to_op(const std::string& p) {
  if (p == "<=") return CmpOp::Le;
  if (p == ">=") return CmpOp::Ge;
  return CmpOp::Eq;
}

CmpOp flip(CmpOp op) {
  if (op == CmpOp::Le) return CmpOp::Ge;
  if (op == CmpOp::Ge) return CmpOp::Le;
  return CmpOp::Eq;
}

bool is_cmp_punct(const Token& t) {
  return t.kind == Token::Punct &&
         (t.text == "<=" || t.text == ">=" || t.text == "=" || t.text == "==");
}

// One body literal: atom | not atom | Var op int | int op Var.
BodyLit parse_literal(Lexer& lx, VarScope& vars) {
  BodyLit lit;
  const Token& t = lx.peek();
  if (t.kind == Token::Ident && t.text == "not") {
    lx.next();
    lit.kind = BodyLit::Neg;
    lit.atom = parse_atom(lx, vars);
    return lit;
  }
  if (t.kind == Token::Var) {
    std::string name = lx.next().text;
    if (!is_cmp_punct(lx.peek())) lx.fail("expected comparison operator after variable");
    CmpOp op = to_op(lx.next().text);
    if (lx.peek().kind != Token::Int) lx.fail("expected integer on comparison right side");
    lit.kind = BodyLit::Cmp;
    lit.cmp_var = vars.get(lx, name);
    lit.op = op;
    lit.rhs = std::stoi(lx.next().text);
    return lit;
  }
  if (t.kind == Token::Int) {  // "70 <= V" normalizes to "V >= 70"
    int32_t lhs = std::stoi(lx.next().text);
    if (!is_cmp_punct(lx.peek())) lx.fail("expected comparison operator after integer");
    CmpOp op = to_op(lx.next().text);
    if (lx.peek().kind != Token::Var) lx.fail("expected variable on comparison right side");
    lit.kind = BodyLit::Cmp;
    lit.cmp_var = vars.get(lx, lx.next().text);
    lit.op = flip(op);
    lit.rhs = lhs;
    return lit;
  }
  if (t.kind == Token::Ident) {
    lit.kind = BodyLit::Pos;
    lit.atom = parse_atom(lx, vars);
    return lit;
  }
  lx.fail("expected body literal");
}

std::vector<BodyLit> parse_body(Lexer& lx, VarScope& vars) {
  std::vector<BodyLit> body;
  body.push_back(parse_literal(lx, vars));
  while (lx.accept_punct(",")) body.push_back(parse_literal(lx, vars));
  return body;
}

void check_safety(Lexer& lx, const AtomPat* head, const std::vector<BodyLit>& body) {
  std::unordered_set<uint8_t> bound;
  for (const auto& lit : body) {
    if (lit.kind != BodyLit::Pos) continue;
    for (int i = 0; i < lit.atom.arity; ++i)
      if (lit.atom.arg[i].kind == Arg::Var) bound.insert(lit.atom.arg[i].var);
  }
  auto need = [&](uint8_t v, const char* where) {
    if (!bound.count(v))
      lx.fail(std::string("unsafe variable in ") + where +
              " (must occur in a positive body atom)");
  };
  if (head) {
    for (int i = 0; i < head->arity; ++i)
      if (head->arg[i].kind == Arg::Var) need(head->arg[i].var, "head");
  }
  for (const auto& lit : body) {
    if (lit.kind == BodyLit::Cmp) need(lit.cmp_var, "comparison");
    if (lit.kind == BodyLit::Neg) {
      for (int i = 0; i < lit.atom.arity; ++i)
        if (lit.atom.arg[i].kind == Arg::Var) need(lit.atom.arg[i].var, "negated literal");
    }
  }
}

void parse_cov_header(const std::string& line, int lineno, RuleSet& rs) {
  auto rest = trim(std::string_view(line).substr(5));
  for (auto& item : split(rest, ' ')) {
    auto entry = trim(item);
    if (entry.empty()) continue;
    auto eq = entry.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(lineno, 1, std::string(entry), "expected name=value in %cov header");
    double pct = std::strtod(std::string(entry.substr(eq + 1)).c_str(), nullptr);
    rs.coverage.emplace_back(Symbols::intern(trim(entry.substr(0, eq))), pct);
  }
}

void parse_weak(Lexer& lx, RuleSet& rs) {
  WeakConstraint w;
  VarScope vars{&w.var_names, {}};
  lx.expect_punct(":~", "expected ':~'");
  w.body = parse_body(lx, vars);
  lx.expect_punct(".", "expected '.' before weight annotation");
  lx.expect_punct("[", "expected '[' starting weight annotation");
  bool neg = lx.accept_punct("-");
  if (!neg && lx.peek().kind == Token::Int && lx.peek().text[0] == '-') {
    w.weight_is_var = false;
    w.weight_const = std::stoi(lx.next().text);
  } else if (lx.peek().kind == Token::Int) {
    w.weight_is_var = false;
    w.weight_const = std::stoi(lx.next().text);
    if (neg) w.weight_const = -w.weight_const;
  } else if (lx.peek().kind == Token::Var) {
    w.weight_is_var = true;
    w.weight_negated = neg;
    w.weight_var = vars.get(lx, lx.next().text);
  } else {
    lx.fail("expected weight (integer or variable)");
  }
  lx.expect_punct("@", "expected '@' between weight and priority");
  if (lx.peek().kind != Token::Int) lx.fail("expected integer priority level");
  w.level = std::stoi(lx.next().text);
  while (lx.accept_punct(",")) {
    const Token& t = lx.peek();
    if (t.kind == Token::Var)
      w.tuple.push_back(Arg::variable(vars.get(lx, lx.next().text)));
    else if (t.kind == Token::Int)
      w.tuple.push_back(Arg::constant(Term::integer(std::stoi(lx.next().text))));
    else if (t.kind == Token::Ident)
      w.tuple.push_back(Arg::constant(Term::symbol(lx.next().text)));
    else
      lx.fail("expected tuple term");
  }
  lx.expect_punct("]", "expected ']' closing weight annotation");
  check_safety(lx, nullptr, w.body);
  auto bound_in_body = [&](uint8_t v) {
    for (const auto& lit : w.body) {
      if (lit.kind != BodyLit::Pos) continue;
      for (int i = 0; i < lit.atom.arity; ++i)
        if (lit.atom.arg[i].kind == Arg::Var && lit.atom.arg[i].var == v) return true;
    }
    return false;
  };
  if (w.weight_is_var && !bound_in_body(w.weight_var))
    lx.fail("unsafe weight variable");
  for (const auto& t : w.tuple)
    if (t.kind == Arg::Var && !bound_in_body(t.var))
      lx.fail("unsafe variable in weight tuple");
  rs.weaks.push_back(std::move(w));
}

void parse_aggregate(Lexer& lx, RuleSet& rs) {
  AggregateRule agg;
  if (lx.peek().kind != Token::Int) lx.fail("expected aggregate lower bound");
  agg.lower = std::stoi(lx.next().text);
  lx.expect_punct("{", "expected '{'");
  while (true) {
    AggBranch br;
    VarScope vars{&br.var_names, {}};
    br.head = parse_atom(lx, vars);
    if (lx.accept_punct(":")) br.body = parse_body(lx, vars);
    check_safety(lx, &br.head, br.body);
    agg.branches.push_back(std::move(br));
    if (lx.accept_punct("}")) break;
    lx.expect_punct(";", "expected ';' or '}' after aggregate branch");
  }
  if (lx.peek().kind == Token::Int) {
    agg.upper = std::stoi(lx.next().text);
  } else if (lx.peek().kind == Token::Var || lx.peek().kind == Token::Ident) {
    agg.upper_name = lx.next().text;
  } else {
    lx.fail("expected aggregate upper bound");
  }
  lx.expect_punct(".", "expected '.' ending aggregate");
  if (agg.lower < 0 || (agg.upper && *agg.upper < agg.lower))
    throw ParseError(lx.line(), 1, "{", "aggregate bounds must satisfy 0 <= l <= u");
  rs.aggregates.push_back(std::move(agg));
}

void parse_normal(Lexer& lx, RuleSet& rs) {
  NormalRule r;
  VarScope vars{&r.var_names, {}};
  r.head = parse_atom(lx, vars);
  if (lx.accept_punct(":-")) r.body = parse_body(lx, vars);
  lx.expect_punct(".", "expected '.' ending rule");
  check_safety(lx, &r.head, r.body);
  rs.rules.push_back(std::move(r));
}

// Stratification restrictions that keep two-pass evaluation sound.
void validate(RuleSet& rs) {
  std::unordered_set<int32_t> normal_heads, agg_heads;
  for (const auto& r : rs.rules) normal_heads.insert(r.head.pred);
  for (const auto& a : rs.aggregates)
    for (const auto& br : a.branches) agg_heads.insert(br.head.pred);

  auto bad = [](const std::string& what) {
    throw ParseError(0, 0, "", what);
  };
  for (const auto& a : rs.aggregates)
    for (const auto& br : a.branches)
      for (const auto& lit : br.body) {
        if (lit.kind == BodyLit::Cmp) continue;
        if (normal_heads.count(lit.atom.pred) || agg_heads.count(lit.atom.pred))
          bad("aggregate branch bodies may only use feature predicates");
      }
  for (const auto& w : rs.weaks)
    for (const auto& lit : w.body) {
      if (lit.kind == BodyLit::Cmp) continue;
      if (normal_heads.count(lit.atom.pred))
        bad("weak constraint bodies may not use normal rule heads");
    }
  for (const auto& r : rs.rules)
    for (const auto& lit : r.body)
      if (lit.kind == BodyLit::Neg &&
          (normal_heads.count(lit.atom.pred) || agg_heads.count(lit.atom.pred)))
        bad("negation is only supported on feature predicates");
}

}  // namespace

RuleSet parse_rules(const std::string& text) {
  RuleSet rs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty()) continue;
    if (starts_with(t, "%cov:")) {
      parse_cov_header(std::string(t), lineno, rs);
      continue;
    }
    if (t[0] == '%') continue;
    Lexer lx{std::string(t), lineno};
    if (lx.peek().kind == Token::Punct && lx.peek().text == ":~") {
      parse_weak(lx, rs);
    } else if (lx.peek().kind == Token::Int) {
      parse_aggregate(lx, rs);
    } else {
      parse_normal(lx, rs);
    }
    if (!lx.at_end()) lx.fail("trailing input after statement");
  }
  validate(rs);
  return rs;
}

RuleSet load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str());
}

}  // namespace planwb::asp
