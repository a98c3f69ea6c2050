#pragma once

// Equational laws over the loop signature (*, \, /, ^l, ^r).
//
//   identity := term "=" term
//   term     := atom (("*" | "\" | "/") atom)*      equal precedence, left assoc.
//   atom     := (variable | "(" term ")") ("^l" | "^r")*
//
// Variables are single lowercase letters. Whitespace is ignored. Which
// one-sided inverse "^l" denotes is chosen at evaluation time.

#include <algorithm>
#include <array>
#include <cctype>
#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "huthnance.hpp"
#include "loop_table.hpp"

namespace loopforge {

class Term {
 public:
  enum class Kind { var, mul, ldiv, rdiv, linv, rinv };

  static Term var(char name) {
    if (name < 'a' || name > 'z') throw std::invalid_argument("variables are single letters a-z");
    return Term(Kind::var, name, nullptr, nullptr);
  }
  static Term mul(Term a, Term b) { return binary(Kind::mul, std::move(a), std::move(b)); }
  static Term ldiv(Term a, Term b) { return binary(Kind::ldiv, std::move(a), std::move(b)); }
  static Term rdiv(Term a, Term b) { return binary(Kind::rdiv, std::move(a), std::move(b)); }
  static Term linv(Term a) { return Term(Kind::linv, 0, std::make_shared<const Term>(std::move(a)), nullptr); }
  static Term rinv(Term a) { return Term(Kind::rinv, 0, std::make_shared<const Term>(std::move(a)), nullptr); }

  Kind kind() const { return kind_; }
  char name() const { return name_; }
  const Term& left() const { return *left_; }
  const Term& right() const { return *right_; }
  bool is_binary() const { return kind_ == Kind::mul || kind_ == Kind::ldiv || kind_ == Kind::rdiv; }

  void collect_vars(std::set<char>& out) const {
    if (kind_ == Kind::var) {
      out.insert(name_);
      return;
    }
    left_->collect_vars(out);
    if (right_) right_->collect_vars(out);
  }

  std::size_t depth() const {
    if (kind_ == Kind::var) return 0;
    return 1 + std::max(left_->depth(), right_ ? right_->depth() : 0);
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::var) return a.name_ == b.name_;
    if (!(*a.left_ == *b.left_)) return false;
    return !a.right_ || *a.right_ == *b.right_;
  }

 private:
  Term(Kind k, char name, std::shared_ptr<const Term> l, std::shared_ptr<const Term> r)
      : kind_(k), name_(name), left_(std::move(l)), right_(std::move(r)) {}

  static Term binary(Kind k, Term a, Term b) {
    return Term(k, 0, std::make_shared<const Term>(std::move(a)), std::make_shared<const Term>(std::move(b)));
  }

  Kind kind_;
  char name_;
  std::shared_ptr<const Term> left_, right_;
};

struct IdentityAst {
  Term lhs, rhs;
  std::vector<char> vars;  // sorted

  IdentityAst(Term l, Term r) : lhs(std::move(l)), rhs(std::move(r)) {
    std::set<char> vs;
    lhs.collect_vars(vs);
    rhs.collect_vars(vs);
    vars.assign(vs.begin(), vs.end());
  }

  friend bool operator==(const IdentityAst& a, const IdentityAst& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(std::size_t pos, const std::string& msg)
      : std::invalid_argument("syntax error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class LawParser {
 public:
  explicit LawParser(std::string_view text) : text_(text) {}

  IdentityAst identity() {
    skip();
    if (peek() == '=') throw SyntaxError(pos_, "empty left-hand side");
    Term lhs = term();
    skip();
    if (peek() != '=') throw SyntaxError(pos_, at_end() ? "expected '='" : unexpected());
    ++pos_;
    skip();
    if (at_end()) throw SyntaxError(pos_, "empty right-hand side");
    Term rhs = term();
    skip();
    if (!at_end()) throw SyntaxError(pos_, unexpected());
    return IdentityAst(std::move(lhs), std::move(rhs));
  }

 private:
  Term term() {
    Term acc = atom();
    while (true) {
      skip();
      char c = peek();
      if (c != '*' && c != '\\' && c != '/') return acc;
      ++pos_;
      Term rhs = atom();
      acc = c == '*' ? Term::mul(std::move(acc), std::move(rhs))
                     : c == '\\' ? Term::ldiv(std::move(acc), std::move(rhs)) : Term::rdiv(std::move(acc), std::move(rhs));
    }
  }

  Term atom() {
    skip();
    if (at_end()) throw SyntaxError(pos_, "expected variable or '('");
    char c = peek();
    std::optional<Term> t;
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      t = Term::var(c);
    } else if (c == '(') {
      ++pos_;
      t = term();
      skip();
      if (peek() != ')') throw SyntaxError(pos_, at_end() ? "expected ')'" : unexpected());
      ++pos_;
    } else {
      throw SyntaxError(pos_, unexpected());
    }
    while (true) {
      skip();
      if (peek() != '^') return std::move(*t);
      ++pos_;
      skip();
      char k = peek();
      if (k == 'l')
        t = Term::linv(std::move(*t));
      else if (k == 'r')
        t = Term::rinv(std::move(*t));
      else
        throw SyntaxError(pos_, "expected 'l' or 'r' after '^'");
      ++pos_;
    }
  }

  std::string unexpected() const {
    char c = peek();
    bool known = std::string_view("*\\/()=^").find(c) != std::string_view::npos || (c >= 'a' && c <= 'z');
    return (known ? "unexpected '" : "unknown character '") + std::string(1, c) + "'";
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string print_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::var:
      return std::string(1, t.name());
    case Term::Kind::mul:
      return "(" + print_term(t.left()) + "*" + print_term(t.right()) + ")";
    case Term::Kind::ldiv:
      return "(" + print_term(t.left()) + "\\" + print_term(t.right()) + ")";
    case Term::Kind::rdiv:
      return "(" + print_term(t.left()) + "/" + print_term(t.right()) + ")";
    case Term::Kind::linv:
      return print_term(t.left()) + "^l";
    case Term::Kind::rinv:
      return print_term(t.left()) + "^r";
  }
  return {};
}

}  // namespace detail

inline IdentityAst parse(std::string_view text) { return detail::LawParser(text).identity(); }

/// Fully parenthesized; parse(print(a)) == a.
inline std::string print(const IdentityAst& ast) {
  return detail::print_term(ast.lhs) + "=" + detail::print_term(ast.rhs);
}
inline std::string print(const Term& t) { return detail::print_term(t); }

struct BuiltinLaw {
  const char* name;
  const char* text;
  /// False for identities taken from the general loop literature.
  bool from_counterexample_source;
  const char* description;
};

inline const std::vector<BuiltinLaw>& builtin_catalog() {
  static const std::vector<BuiltinLaw> catalog = {
      {"osborn", "x*((y*z)*x)=(x*((y*(x^l))*x))*(z*x)", true, "Osborn identity x(yz.x) = x(yx^l.x).zx"},
      {"lemma312", "v*(v*v)=((v^l)\\v)*v", true, "universality probe v.vv = v^l\\v.v"},
      {"associative", "x*(y*z)=(x*y)*z", false, "associativity"},
      {"commutative", "x*y=y*x", false, "commutativity"},
      {"moufang", "(x*y)*(z*x)=x*((y*z)*x)", false, "Moufang identity (literature)"},
      {"lip", "(x^l)*(x*y)=y", false, "left inverse property (literature)"},
      {"rip", "(y*x)*(x^r)=y", false, "right inverse property (literature)"},
      {"wip", "x*((y*x)^r)=y^r", false, "weak inverse property (literature)"},
  };
  return catalog;
}

inline const BuiltinLaw* find_builtin(std::string_view name) {
  for (const auto& b : builtin_catalog())
    if (name == b.name) return &b;
  return nullptr;
}

inline IdentityAst builtin(std::string_view name) {
  if (const auto* b = find_builtin(name)) return parse(b->text);
  throw std::invalid_argument("unknown builtin identity '" + std::string(name) + "'");
}

/// Builtin name or law text.
inline IdentityAst resolve_law(std::string_view spec) {
  if (const auto* b = find_builtin(spec)) return parse(b->text);
  return parse(spec);
}

// Carriers --------------------------------------------------------------------

/// Loop operations a term can be evaluated in.
template <class C>
concept LoopCarrier = requires(const C& c, const typename C::value_type& x) {
  { c.mul(x, x) } -> std::convertible_to<typename C::value_type>;
  { c.ldiv(x, x) } -> std::convertible_to<typename C::value_type>;
  { c.rdiv(x, x) } -> std::convertible_to<typename C::value_type>;
  { c.left_inverse(x) } -> std::convertible_to<typename C::value_type>;
  { c.right_inverse(x) } -> std::convertible_to<typename C::value_type>;
};

struct TableCarrier {
  using value_type = Element;
  const LoopTable& table;
  Element mul(Element a, Element b) const { return table.mul(a, b); }
  Element ldiv(Element a, Element b) const { return table.div(Side::left, a, b); }
  Element rdiv(Element a, Element b) const { return table.div(Side::right, b, a); }
  Element left_inverse(Element x) const { return table.inv(Side::left, x); }
  Element right_inverse(Element x) const { return table.inv(Side::right, x); }
};

template <class E>
struct HuthnanceCarrier {
  using value_type = E;
  E mul(const E& a, const E& b) const { return huthnance::star(a, b); }
  E ldiv(const E& a, const E& b) const { return huthnance::divide(Side::left, a, b); }
  E rdiv(const E& a, const E& b) const { return huthnance::divide(Side::right, b, a); }
  E left_inverse(const E& x) const { return huthnance::inverse(x, InverseConvention::literature_left); }
  E right_inverse(const E& x) const { return huthnance::inverse(x, InverseConvention::paper_right); }
};

template <class V>
using Env = std::map<char, V>;

template <LoopCarrier C>
typename C::value_type eval_term(const Term& t, const Env<typename C::value_type>& env, const C& ops,
                                 InverseConvention conv) {
  const bool l_is_right = conv == InverseConvention::paper_right;
  switch (t.kind()) {
    case Term::Kind::var: {
      auto it = env.find(t.name());
      if (it == env.end()) throw std::invalid_argument(std::string("unbound variable ") + t.name());
      return it->second;
    }
    case Term::Kind::mul:
      return ops.mul(eval_term(t.left(), env, ops, conv), eval_term(t.right(), env, ops, conv));
    case Term::Kind::ldiv:
      return ops.ldiv(eval_term(t.left(), env, ops, conv), eval_term(t.right(), env, ops, conv));
    case Term::Kind::rdiv:
      return ops.rdiv(eval_term(t.left(), env, ops, conv), eval_term(t.right(), env, ops, conv));
    case Term::Kind::linv: {
      auto v = eval_term(t.left(), env, ops, conv);
      return l_is_right ? ops.right_inverse(v) : ops.left_inverse(v);
    }
    case Term::Kind::rinv: {
      auto v = eval_term(t.left(), env, ops, conv);
      return l_is_right ? ops.left_inverse(v) : ops.right_inverse(v);
    }
  }
  throw std::logic_error("bad term");
}

// Finite checking -------------------------------------------------------------

/// A law flattened to postfix code over a fixed table for fast exhaustive
/// evaluation. Variable slots index IdentityAst::vars.
class CompiledLaw {
 public:
  CompiledLaw(const IdentityAst& law, InverseConvention conv) : vars_(law.vars) {
    emit(law.lhs, conv, lhs_);
    emit(law.rhs, conv, rhs_);
  }

  const std::vector<char>& vars() const { return vars_; }

  bool satisfied(const LoopTable& L, const std::vector<Element>& values) const {
    return run(L, lhs_, values) == run(L, rhs_, values);
  }

 private:
  enum class Op : std::uint8_t { push, mul, ldiv, rdiv, inv_left, inv_right };
  struct Instr {
    Op op;
    std::uint8_t slot;
  };

  void emit(const Term& t, InverseConvention conv, std::vector<Instr>& code) const {
    const bool l_is_right = conv == InverseConvention::paper_right;
    switch (t.kind()) {
      case Term::Kind::var: {
        auto slot = std::find(vars_.begin(), vars_.end(), t.name()) - vars_.begin();
        code.push_back({Op::push, static_cast<std::uint8_t>(slot)});
        return;
      }
      case Term::Kind::mul:
      case Term::Kind::ldiv:
      case Term::Kind::rdiv:
        emit(t.left(), conv, code);
        emit(t.right(), conv, code);
        code.push_back({t.kind() == Term::Kind::mul    ? Op::mul
                        : t.kind() == Term::Kind::ldiv ? Op::ldiv
                                                       : Op::rdiv,
                        0});
        return;
      case Term::Kind::linv:
        emit(t.left(), conv, code);
        code.push_back({l_is_right ? Op::inv_right : Op::inv_left, 0});
        return;
      case Term::Kind::rinv:
        emit(t.left(), conv, code);
        code.push_back({l_is_right ? Op::inv_left : Op::inv_right, 0});
        return;
    }
  }

  static Element run(const LoopTable& L, const std::vector<Instr>& code, const std::vector<Element>& values) {
    Element stack[64] = {};
    std::vector<Element> big;
    Element* sp = stack;
    if (code.size() > 64) {
      big.resize(code.size());
      sp = big.data();
    }
    Element* base = sp;
    for (const auto& in : code) {
      switch (in.op) {
        case Op::push:
          *sp++ = values[in.slot];
          break;
        case Op::mul:
          --sp;
          sp[-1] = L.mul(sp[-1], sp[0]);
          break;
        case Op::ldiv:
          --sp;
          sp[-1] = L.div(Side::left, sp[-1], sp[0]);
          break;
        case Op::rdiv:
          --sp;
          sp[-1] = L.div(Side::right, sp[0], sp[-1]);
          break;
        case Op::inv_left:
          sp[-1] = L.inv(Side::left, sp[-1]);
          break;
        case Op::inv_right:
          sp[-1] = L.inv(Side::right, sp[-1]);
          break;
      }
    }
    return base[0];
  }

  std::vector<char> vars_;
  std::vector<Instr> lhs_, rhs_;
};

struct HoldsResult {
  bool holds = true;
  /// First violating assignment in lexicographic order of (vars) values.
  std::optional<std::vector<std::pair<char, Element>>> counterexample;
  explicit operator bool() const { return holds; }
};

inline HoldsResult holds(const LoopTable& L, const CompiledLaw& law) {
  const auto& vars = law.vars();
  const std::size_t n = L.order();
  std::vector<Element> values(vars.size(), 0);
  while (true) {
    if (!law.satisfied(L, values)) {
      std::vector<std::pair<char, Element>> cx;
      for (std::size_t i = 0; i < vars.size(); ++i) cx.emplace_back(vars[i], values[i]);
      return {false, std::move(cx)};
    }
    std::size_t idx = values.size();
    while (idx > 0) {
      if (++values[idx - 1] < n) break;
      values[idx - 1] = 0;
      --idx;
    }
    if (idx == 0) return {};
  }
}

inline HoldsResult holds(const LoopTable& L, const IdentityAst& law, InverseConvention conv) {
  return holds(L, CompiledLaw(law, conv));
}

}  // namespace loopforge
