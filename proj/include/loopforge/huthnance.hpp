#pragma once

// The Huthnance loop (H, *) on Z^3, numerically and symbolically.
//
// An element [a, k, m] is split by the parity of a: a = 2i (even) or
// a = 2i + 1 (odd), with i ranging over all of Z. The product of
// [2i+s, k, m] and [2j+t, p, q] is one of four formulas selected by (s, t):
//
//   (0,0)  [2i+2j,   k+p-ij(2j-1),       q+m-ij(2j-1)]
//   (1,0)  [2i+2j+1, k+p-ij(2j-1)-j^2+j, q+m-ij(2j-1)-j^2]
//   (0,1)  [2i+2j+1, m+p-ij(2j+1),       q+k-ij(2j+1)]
//   (1,1)  [2i+2j+2, m+p-ij(2j+1)-j^2+j, q+k-ij(2j+1)-j^2]

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "checked.hpp"
#include "poly.hpp"

namespace loopforge::huthnance {

/// Which one-sided inverse the symbol x^l denotes.
///  - paper_right:     x * x^l = e   (x^l = x \ e)
///  - literature_left: x^l * x = e   (x^l = e / x)
enum class InverseConvention { paper_right, literature_left };

enum class Side { left, right };

inline std::string to_string(InverseConvention c) {
  return c == InverseConvention::paper_right ? "paper-right" : "literature-left";
}

struct NumElement {
  std::int64_t a = 0, k = 0, m = 0;

  int parity() const { return static_cast<int>(a & 1); }
  std::int64_t half() const { return (a - parity()) / 2; }

  friend bool operator==(const NumElement&, const NumElement&) = default;
  friend auto operator<=>(const NumElement&, const NumElement&) = default;
  friend std::ostream& operator<<(std::ostream& os, const NumElement& x) {
    return os << '[' << x.a << ',' << x.k << ',' << x.m << ']';
  }
};

/// Symbolic element [2*half + parity, second, third].
struct SymElement {
  int parity = 0;
  Poly half, second, third;

  /// [2h + parity, k, m] for fresh variables h, k, m.
  static SymElement generic(int parity, const VarId& h, const VarId& k, const VarId& m) {
    return {parity, Poly::var(h), Poly::var(k), Poly::var(m)};
  }

  Poly first() const { return Poly(2) * half + Poly(parity); }
  std::array<Poly, 3> components() const { return {first(), second, third}; }

  friend bool operator==(const SymElement&, const SymElement&) = default;
};

inline NumElement identity_element() { return {0, 0, 0}; }

inline NumElement star(const NumElement& x, const NumElement& y) {
  const CheckedInt i = x.half(), j = y.half();
  const CheckedInt k = x.k, m = x.m, p = y.k, q = y.m;
  const int s = x.parity(), t = y.parity();
  CheckedInt second, third;
  if (t == 0) {
    const CheckedInt w = i * j * (CheckedInt(2) * j - 1);
    second = k + p - w;
    third = q + m - w;
    if (s == 1) {
      second = second - j * j + j;
      third = third - j * j;
    }
  } else {
    const CheckedInt w = i * j * (CheckedInt(2) * j + 1);
    second = m + p - w;
    third = q + k - w;
    if (s == 1) {
      second = second - j * j + j;
      third = third - j * j;
    }
  }
  const CheckedInt first = CheckedInt(2) * (i + j) + CheckedInt(s + t);
  return {first.value(), second.value(), third.value()};
}

inline SymElement star(const SymElement& x, const SymElement& y) {
  const Poly& i = x.half;
  const Poly& j = y.half;
  SymElement r;
  r.parity = x.parity ^ y.parity;
  r.half = i + j + Poly(x.parity & y.parity);
  if (y.parity == 0) {
    const Poly w = i * j * (Poly(2) * j - Poly(1));
    r.second = x.second + y.second - w;
    r.third = y.third + x.third - w;
  } else {
    const Poly w = i * j * (Poly(2) * j + Poly(1));
    r.second = x.third + y.second - w;
    r.third = y.third + x.second - w;
  }
  if (x.parity == 1) {
    r.second = r.second - j * j + j;
    r.third = r.third - j * j;
  }
  return r;
}

namespace detail {

// Unknown operand of a * x = b (left) or x * a = b (right), given as
// (parity, half, second, third) with scalars S in {CheckedInt, Poly}. The half
// of the unknown follows from first(x*y) = first(x) + first(y); the payloads
// come from inverting the unit-coefficient linear payload equations.
template <class S>
struct Parts {
  int parity;
  S half, second, third;
};

template <class S>
Parts<S> solve_left(const Parts<S>& a, const Parts<S>& b) {
  const int px = a.parity ^ b.parity;
  const S& i = a.half;
  const S j = b.half - i - S(a.parity & px);
  S second, third;
  if (px == 0) {
    const S w = i * j * (S(2) * j - S(1));
    second = b.second - a.second + w;
    third = b.third - a.third + w;
  } else {
    const S w = i * j * (S(2) * j + S(1));
    second = b.second - a.third + w;
    third = b.third - a.second + w;
  }
  if (a.parity == 1) {
    second = second + j * j - j;
    third = third + j * j;
  }
  return {px, j, second, third};
}

template <class S>
Parts<S> solve_right(const Parts<S>& a, const Parts<S>& b) {
  const int px = a.parity ^ b.parity;
  const S& j = a.half;
  const S i = b.half - j - S(a.parity & px);
  S k, m;
  if (a.parity == 0) {
    const S w = i * j * (S(2) * j - S(1));
    k = b.second - a.second + w;
    m = b.third - a.third + w;
    if (px == 1) {
      k = k + j * j - j;
      m = m + j * j;
    }
  } else {
    const S w = i * j * (S(2) * j + S(1));
    S from_second = b.second - a.second + w;  // becomes m
    S from_third = b.third - a.third + w;     // becomes k
    if (px == 1) {
      from_second = from_second + j * j - j;
      from_third = from_third + j * j;
    }
    m = from_second;
    k = from_third;
  }
  return {px, i, k, m};
}

inline Parts<CheckedInt> parts(const NumElement& x) { return {x.parity(), x.half(), x.k, x.m}; }
inline Parts<Poly> parts(const SymElement& x) { return {x.parity, x.half, x.second, x.third}; }

inline NumElement from_parts(const Parts<CheckedInt>& p) {
  return {(CheckedInt(2) * p.half + CheckedInt(p.parity)).value(), p.second.value(), p.third.value()};
}
inline SymElement from_parts(const Parts<Poly>& p) { return {p.parity, p.half, p.second, p.third}; }

}  // namespace detail

/// divide(left, a, b) solves a*x = b; divide(right, a, b) solves x*a = b.
template <class E>
E divide(Side side, const E& a, const E& b) {
  auto pa = detail::parts(a);
  auto pb = detail::parts(b);
  return detail::from_parts(side == Side::left ? detail::solve_left(pa, pb) : detail::solve_right(pa, pb));
}

template <class E>
E identity_like();
template <>
inline NumElement identity_like<NumElement>() { return identity_element(); }
template <>
inline SymElement identity_like<SymElement>() { return {0, Poly(), Poly(), Poly()}; }

/// x^l under the given convention.
template <class E>
E inverse(const E& x, InverseConvention conv) {
  const E e = identity_like<E>();
  return conv == InverseConvention::paper_right ? divide(Side::left, x, e) : divide(Side::right, x, e);
}

inline NumElement to_num(const SymElement& x, const Assignment& sigma) {
  const CheckedInt half = x.half.eval(sigma);
  return {(CheckedInt(2) * half + CheckedInt(x.parity)).value(), x.second.eval(sigma), x.third.eval(sigma)};
}

/// Sanity bound on the total degree of every polynomial the audits produce.
inline constexpr unsigned kMaxAuditDegree = 12;

struct CaseReport {
  std::vector<int> parities;
  std::array<Poly, 3> lhs, rhs, residuals;
  bool holds = false;
  /// First violating instantiation, one element per identity variable.
  std::optional<std::vector<NumElement>> witness;
};

/// A derived component set beside a reference string from the literature.
struct ReferenceCheck {
  std::string label;
  std::string reference;
  std::string derived;
  bool matches = false;
};

struct AuditReport {
  std::string identity;
  std::string law;
  InverseConvention convention = InverseConvention::paper_right;
  std::vector<CaseReport> cases;
  std::vector<ReferenceCheck> reference_checks;

  bool holds() const {
    for (const auto& c : cases)
      if (!c.holds) return false;
    return true;
  }
};

namespace detail {

inline void check_degree(const std::array<Poly, 3>& ps) {
  for (const auto& p : ps)
    if (p.degree() > kMaxAuditDegree)
      throw std::logic_error("audit polynomial exceeds degree bound: " + p.to_string());
}

inline std::array<Poly, 3> residuals(const SymElement& lhs, const SymElement& rhs) {
  auto l = lhs.components();
  auto r = rhs.components();
  return {l[0] - r[0], l[1] - r[1], l[2] - r[2]};
}

// Lexicographic scan over all assignments of vars in [-bound, bound]; returns
// the first assignment where some residual is nonzero.
inline std::optional<Assignment> first_nonzero(const std::vector<VarId>& vars, const std::array<Poly, 3>& res,
                                               std::int64_t bound) {
  Assignment sigma;
  for (const auto& v : vars) sigma[v.name()] = -bound;
  while (true) {
    for (const auto& p : res)
      if (p.eval(sigma) != 0) return sigma;
    std::size_t idx = vars.size();
    while (idx > 0) {
      auto& slot = sigma[vars[idx - 1].name()];
      if (slot < bound) {
        ++slot;
        break;
      }
      slot = -bound;
      --idx;
    }
    if (idx == 0) return std::nullopt;
  }
}

}  // namespace detail

/// Values printed for the odd case v = [2i+1, k, m] of the probe identity
/// v*(v*v) = (v^l \ v)*v in the published counterexample. The second
/// components are reproduced exactly under paper_right; the third components
/// are kept only for comparison against the derived ones.
struct PublishedProbeValues {
  static constexpr std::array<const char*, 3> lhs = {"6i+3", "m+2k-10i^3-12i^2-2i", "2m+k-10i^3-12i^2-i-1"};
  static constexpr std::array<const char*, 3> rhs = {"6i+3", "m+2k-14i^3-18i^2-7i-1", "2m+k-14i^3-16i^2-6i-1"};
};

/// Symbolic audit of v*(v*v) = (v^l \ v)*v for v = [2i+e, k, m], e in {0,1}.
/// Each case carries the witness scanned lexicographically over
/// (i, k, m) in [-3, 3]^3 when the residual is nonzero.
inline AuditReport audit_lemma312(InverseConvention conv) {
  AuditReport report;
  report.identity = "lemma312";
  report.law = "v*(v*v)=((v^l)\\v)*v";
  report.convention = conv;
  const std::vector<VarId> vars = {"i", "k", "m"};
  for (int eps : {0, 1}) {
    const SymElement v = SymElement::generic(eps, "i", "k", "m");
    const SymElement lhs = star(v, star(v, v));
    const SymElement rhs = star(divide(Side::left, inverse(v, conv), v), v);
    CaseReport c;
    c.parities = {eps};
    c.lhs = lhs.components();
    c.rhs = rhs.components();
    c.residuals = detail::residuals(lhs, rhs);
    detail::check_degree(c.lhs);
    detail::check_degree(c.rhs);
    c.holds = std::all_of(c.residuals.begin(), c.residuals.end(), [](const Poly& p) { return p.is_zero(); });
    if (!c.holds) {
      if (auto sigma = detail::first_nonzero(vars, c.residuals, 3)) c.witness = std::vector{to_num(v, *sigma)};
    }
    report.cases.push_back(std::move(c));
  }

  const auto& odd = report.cases[1];
  static const char* const names[] = {"first", "second", "third"};
  for (int side = 0; side < 2; ++side) {
    const auto& published = side == 0 ? PublishedProbeValues::lhs : PublishedProbeValues::rhs;
    const auto& derived = side == 0 ? odd.lhs : odd.rhs;
    for (std::size_t c = 0; c < 3; ++c) {
      const Poly ref = Poly::parse(published[c]);
      report.reference_checks.push_back({std::string("odd ") + (side == 0 ? "lhs " : "rhs ") + names[c],
                                         ref.to_string(), derived[c].to_string(), ref == derived[c]});
    }
  }
  return report;
}

/// Symbolic audit of the Osborn identity x*((y*z)*x) = (x*((y*x^l)*x))*(z*x)
/// over all 8 parity combinations of x = [2i+., k, m], y = [2j+., p, q],
/// z = [2n+., s, t]. Failing cases carry a witness scanned lexicographically
/// over (i, k, m, j, p, q, n, s, t) in [-3, 3]^9.
inline AuditReport audit_osborn(InverseConvention conv) {
  AuditReport report;
  report.identity = "osborn";
  report.law = "x*((y*z)*x)=(x*((y*(x^l))*x))*(z*x)";
  report.convention = conv;
  const std::vector<VarId> vars = {"i", "k", "m", "j", "p", "q", "n", "s", "t"};
  for (int c = 0; c < 8; ++c) {
    const int px = (c >> 2) & 1, py = (c >> 1) & 1, pz = c & 1;
    const SymElement x = SymElement::generic(px, "i", "k", "m");
    const SymElement y = SymElement::generic(py, "j", "p", "q");
    const SymElement z = SymElement::generic(pz, "n", "s", "t");
    const SymElement lhs = star(x, star(star(y, z), x));
    const SymElement rhs = star(star(x, star(star(y, inverse(x, conv)), x)), star(z, x));
    CaseReport cr;
    cr.parities = {px, py, pz};
    cr.lhs = lhs.components();
    cr.rhs = rhs.components();
    cr.residuals = detail::residuals(lhs, rhs);
    detail::check_degree(cr.lhs);
    detail::check_degree(cr.rhs);
    cr.holds = std::all_of(cr.residuals.begin(), cr.residuals.end(), [](const Poly& p) { return p.is_zero(); });
    if (!cr.holds) {
      if (auto sigma = detail::first_nonzero(vars, cr.residuals, 3))
        cr.witness = std::vector{to_num(x, *sigma), to_num(y, *sigma), to_num(z, *sigma)};
    }
    report.cases.push_back(std::move(cr));
  }
  return report;
}

inline nlohmann::json to_json(const NumElement& x) { return nlohmann::json::array({x.a, x.k, x.m}); }

inline nlohmann::json to_json(const AuditReport& r) {
  using nlohmann::json;
  auto strings = [](const std::array<Poly, 3>& ps) {
    return json::array({ps[0].to_string(), ps[1].to_string(), ps[2].to_string()});
  };
  json cases = json::array();
  for (const auto& c : r.cases) {
    json jc = {{"parities", c.parities},
               {"lhs", strings(c.lhs)},
               {"rhs", strings(c.rhs)},
               {"residuals", strings(c.residuals)},
               {"holds", c.holds}};
    if (c.witness) {
      json w = json::array();
      for (const auto& e : *c.witness) w.push_back(to_json(e));
      jc["witness"] = w;
    } else {
      jc["witness"] = nullptr;
    }
    cases.push_back(std::move(jc));
  }
  json j = {{"identity", r.identity},
            {"law", r.law},
            {"convention", to_string(r.convention)},
            {"holds", r.holds()},
            {"cases", cases}};
  if (!r.reference_checks.empty()) {
    json refs = json::array();
    for (const auto& rc : r.reference_checks)
      refs.push_back({{"component", rc.label},
                      {"reference", rc.reference},
                      {"derived", rc.derived},
                      {"matches", rc.matches}});
    j["reference_checks"] = refs;
  }
  return j;
}

}  // namespace loopforge::huthnance
