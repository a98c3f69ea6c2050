#pragma once

// Exact multivariate polynomials with 64-bit checked integer coefficients.
//
// Display rule (used by every report): terms are printed by descending total
// degree; ties are broken graded-lexicographically in variable order, where
// variables are ordered by name ("i" < "k" < "m") and a larger exponent on an
// earlier variable prints first. So the polynomial 2k + m - 2i - 12i^2 - 10i^3
// prints as "-10i^3-12i^2-2i+2k+m".

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "checked.hpp"

namespace loopforge {

class VarId {
 public:
  VarId(std::string name) : name_(std::move(name)) {  // NOLINT
    if (name_.empty()) throw std::invalid_argument("variable name must be nonempty");
  }
  VarId(const char* name) : VarId(std::string(name)) {}  // NOLINT

  const std::string& name() const { return name_; }

  friend auto operator<=>(const VarId&, const VarId&) = default;
  friend bool operator==(const VarId&, const VarId&) = default;

 private:
  std::string name_;
};

using Assignment = std::map<std::string, std::int64_t>;

class MissingVariable : public std::invalid_argument {
 public:
  explicit MissingVariable(const std::string& name)
      : std::invalid_argument("assignment does not cover variable '" + name + "'"), name_(name) {}
  const std::string& variable() const { return name_; }

 private:
  std::string name_;
};

class PolyParseError : public std::invalid_argument {
 public:
  PolyParseError(std::size_t pos, const std::string& msg)
      : std::invalid_argument("polynomial syntax error at position " + std::to_string(pos) + ": " + msg),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Product of variables with positive exponents, sorted by variable.
class Monomial {
 public:
  using Factor = std::pair<VarId, unsigned>;

  Monomial() = default;

  /// Zero exponents are dropped and repeated variables combined.
  explicit Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    for (auto& [v, e] : factors) {
      if (e == 0) continue;
      if (!factors_.empty() && factors_.back().first == v)
        factors_.back().second += e;
      else
        factors_.emplace_back(std::move(v), e);
    }
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto ia = a.factors_.begin(), ib = b.factors_.begin();
    while (ia != a.factors_.end() || ib != b.factors_.end()) {
      if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
        r.factors_.push_back(*ia++);
      } else if (ia == a.factors_.end() || ib->first < ia->first) {
        r.factors_.push_back(*ib++);
      } else {
        r.factors_.emplace_back(ia->first, ia->second + ib->second);
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const {
    bool compact = std::all_of(factors_.begin(), factors_.end(),
                               [](const Factor& f) { return f.first.name().size() == 1; });
    std::string s;
    for (const auto& [v, e] : factors_) {
      if (!compact && !s.empty()) s += '*';
      s += v.name();
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::vector<Factor> factors_;
};

/// Strict weak order placing monomials in display order (see file comment).
struct DisplayOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t x = 0, y = 0;
    while (x < fa.size() && y < fb.size()) {
      if (fa[x].first != fb[y].first) return fa[x].first < fb[y].first;
      if (fa[x].second != fb[y].second) return fa[x].second > fb[y].second;
      ++x;
      ++y;
    }
    return x < fa.size() && y == fb.size();
  }
};

class Poly {
 public:
  using Terms = std::map<Monomial, std::int64_t, DisplayOrder>;

  struct TermSpec {
    std::int64_t coefficient;
    std::vector<std::pair<std::string, unsigned>> powers;
  };

  Poly() = default;
  Poly(std::int64_t c) {  // NOLINT: constants convert implicitly
    if (c != 0) terms_.emplace(Monomial{}, c);
  }

  static Poly var(const VarId& v) {
    Poly p;
    p.terms_.emplace(Monomial({{v, 1u}}), 1);
    return p;
  }

  static Poly build(const std::vector<TermSpec>& spec) {
    Poly p;
    for (const auto& t : spec) {
      std::vector<Monomial::Factor> f;
      f.reserve(t.powers.size());
      for (const auto& [name, e] : t.powers) f.emplace_back(VarId(name), e);
      p.accumulate(Monomial(std::move(f)), t.coefficient);
    }
    return p;
  }

  /// Reads the compact notation used in reports, e.g. "m+2k-10i^3-12i^2-2i".
  /// Variables are single lowercase letters; juxtaposition multiplies.
  static Poly parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
    return d;
  }

  std::set<VarId> variables() const {
    std::set<VarId> vs;
    for (const auto& [mono, c] : terms_)
      for (const auto& f : mono.factors()) vs.insert(f.first);
    return vs;
  }

  /// Constant term.
  std::int64_t constant() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? 0 : it->second;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [mono, c] : b.terms_) r.accumulate(mono, c);
    return r;
  }

  friend Poly operator-(const Poly& a) {
    Poly r;
    for (const auto& [mono, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), mono, checked_neg(c));
    return r;
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [mono, c] : b.terms_) r.accumulate(mono, checked_neg(c));
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.accumulate(ma * mb, checked_mul(ca, cb));
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::int64_t eval(const Assignment& sigma) const {
    std::int64_t total = 0;
    for (const auto& [mono, c] : terms_) {
      std::int64_t term = c;
      for (const auto& [v, e] : mono.factors()) {
        auto it = sigma.find(v.name());
        if (it == sigma.end()) throw MissingVariable(v.name());
        for (unsigned k = 0; k < e; ++k) term = checked_mul(term, it->second);
      }
      total = checked_add(total, term);
    }
    return total;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mono, c] : terms_) {
      std::uint64_t mag = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
      if (c < 0)
        s += '-';
      else if (!s.empty())
        s += '+';
      if (mono.is_one()) {
        s += std::to_string(mag);
      } else {
        if (mag != 1) s += std::to_string(mag);
        s += mono.to_string();
      }
    }
    return s;
  }

 private:
  void accumulate(const Monomial& mono, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (inserted) return;
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }

  Terms terms_;
};

inline Poly Poly::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::int64_t {
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = checked_add(checked_mul(v, 10), text[pos++] - '0');
    return v;
  };

  Poly result;
  skip();
  if (pos == text.size()) throw PolyParseError(pos, "empty polynomial");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    std::int64_t sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw PolyParseError(pos, "expected '+' or '-'");
    }
    first = false;

    std::int64_t coeff = 1;
    bool have_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = number();
      have_coeff = true;
    }
    std::vector<Monomial::Factor> factors;
    while (true) {
      skip();
      if (pos >= text.size() || !std::islower(static_cast<unsigned char>(text[pos]))) break;
      std::string name(1, text[pos++]);
      unsigned e = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
          throw PolyParseError(pos, "expected exponent");
        e = static_cast<unsigned>(number());
      }
      factors.emplace_back(VarId(std::move(name)), e);
    }
    if (!have_coeff && factors.empty())
      throw PolyParseError(pos, pos < text.size() ? std::string("unexpected character '") + text[pos] + "'"
                                                  : std::string("dangling sign"));
    result.accumulate(Monomial(std::move(factors)), checked_mul(sign, coeff));
  }
  return result;
}

}  // namespace loopforge
