#pragma once

// Finite loops as Cayley tables.
//
// Text format: optional '#' comment lines, then the order n, then n rows of n
// space-separated indices in 0..n-1 with table[i][j] = i*j. The identity is
// detected, not declared.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "huthnance.hpp"

namespace loopforge {

using huthnance::InverseConvention;
using huthnance::Side;

using Element = std::uint32_t;

class LoopError : public std::invalid_argument {
 public:
  enum class Kind { bad_shape, latin_violation, no_identity };

  LoopError(Kind kind, const std::string& msg, std::optional<std::size_t> row = {},
            std::optional<std::size_t> col = {})
      : std::invalid_argument(msg), kind_(kind), row_(row), col_(col) {}

  Kind kind() const { return kind_; }
  std::optional<std::size_t> row() const { return row_; }
  std::optional<std::size_t> column() const { return col_; }

 private:
  Kind kind_;
  std::optional<std::size_t> row_, col_;
};

class LoopTable {
 public:
  /// Checks the Latin property and finds the identity.
  static LoopTable validate(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw LoopError(LoopError::Kind::bad_shape, "BadShape: empty table");
    std::vector<Element> cells;
    cells.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n)
        throw LoopError(LoopError::Kind::bad_shape,
                        "BadShape: row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                            " entries, expected " + std::to_string(n),
                        r);
      for (std::size_t c = 0; c < n; ++c) {
        auto v = rows[r][c];
        if (v < 0 || static_cast<std::size_t>(v) >= n)
          throw LoopError(LoopError::Kind::bad_shape,
                          "BadShape: entry " + std::to_string(v) + " at (" + std::to_string(r) + "," +
                              std::to_string(c) + ") outside 0.." + std::to_string(n - 1),
                          r, c);
        cells.push_back(static_cast<Element>(v));
      }
    }
    return LoopTable(n, std::move(cells));
  }

  std::size_t order() const { return n_; }
  Element identity() const { return e_; }

  Element mul(Element x, Element y) const { return cells_[x * n_ + y]; }

  /// left: a*x = b; right: x*a = b.
  Element div(Side side, Element a, Element b) const {
    return side == Side::left ? ldiv_[a * n_ + b] : rdiv_[a * n_ + b];
  }

  /// left: e/x (so inv*x = e); right: x\e (so x*inv = e).
  Element inv(Side side, Element x) const {
    return side == Side::left ? div(Side::right, x, e_) : div(Side::left, x, e_);
  }

  /// x^l under a convention; x^r is the opposite one-sided inverse.
  Element lambda(Element x, InverseConvention conv) const {
    return inv(conv == InverseConvention::paper_right ? Side::right : Side::left, x);
  }
  Element rho(Element x, InverseConvention conv) const {
    return inv(conv == InverseConvention::paper_right ? Side::left : Side::right, x);
  }

  std::vector<std::vector<std::int64_t>> rows() const {
    std::vector<std::vector<std::int64_t>> out(n_, std::vector<std::int64_t>(n_));
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out[r][c] = cells_[r * n_ + c];
    return out;
  }

  const std::vector<Element>& cells() const { return cells_; }

  friend bool operator==(const LoopTable& a, const LoopTable& b) { return a.cells_ == b.cells_; }

 private:
  LoopTable(std::size_t n, std::vector<Element> cells) : n_(n), cells_(std::move(cells)) {
    ldiv_.assign(n_ * n_, 0);
    rdiv_.assign(n_ * n_, 0);
    std::vector<char> seen(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t c = 0; c < n_; ++c) {
        Element v = cells_[r * n_ + c];
        if (seen[v])
          throw LoopError(LoopError::Kind::latin_violation,
                          "LatinViolation: row " + std::to_string(r) + " repeats " + std::to_string(v), r);
        seen[v] = 1;
        ldiv_[r * n_ + v] = static_cast<Element>(c);
      }
    }
    for (std::size_t c = 0; c < n_; ++c) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t r = 0; r < n_; ++r) {
        Element v = cells_[r * n_ + c];
        if (seen[v])
          throw LoopError(LoopError::Kind::latin_violation,
                          "LatinViolation: column " + std::to_string(c) + " repeats " + std::to_string(v),
                          std::nullopt, c);
        seen[v] = 1;
        rdiv_[c * n_ + v] = static_cast<Element>(r);
      }
    }
    std::optional<Element> found;
    for (Element x = 0; x < n_ && !found; ++x) {
      bool ok = true;
      for (Element y = 0; y < n_ && ok; ++y) ok = mul(x, y) == y && mul(y, x) == y;
      if (ok) found = x;
    }
    if (!found) throw LoopError(LoopError::Kind::no_identity, "NoIdentity: no two-sided identity element");
    e_ = *found;
  }

  std::size_t n_ = 0;
  Element e_ = 0;
  std::vector<Element> cells_;
  std::vector<Element> ldiv_;  // ldiv_[a*n+b] = a\b
  std::vector<Element> rdiv_;  // rdiv_[a*n+b] = b/a
};

inline LoopTable read_table(std::istream& in) {
  std::vector<std::int64_t> numbers;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw LoopError(LoopError::Kind::bad_shape,
                        "BadShape: line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
      numbers.push_back(v);
    }
  }
  if (numbers.empty()) throw LoopError(LoopError::Kind::bad_shape, "BadShape: missing order");
  const std::int64_t n = numbers.front();
  if (n <= 0) throw LoopError(LoopError::Kind::bad_shape, "BadShape: order must be positive");
  if (numbers.size() != 1 + static_cast<std::size_t>(n * n))
    throw LoopError(LoopError::Kind::bad_shape, "BadShape: expected " + std::to_string(n * n) + " entries, found " +
                                                    std::to_string(numbers.size() - 1));
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (std::int64_t r = 0; r < n; ++r)
    for (std::int64_t c = 0; c < n; ++c) rows[r][c] = numbers[1 + r * n + c];
  return LoopTable::validate(rows);
}

inline LoopTable parse_table(const std::string& text) {
  std::istringstream in(text);
  return read_table(in);
}

inline void write_table(std::ostream& out, const LoopTable& t) {
  const std::size_t n = t.order();
  out << n << '\n';
  for (Element r = 0; r < n; ++r) {
    for (Element c = 0; c < n; ++c) out << (c ? " " : "") << t.mul(r, c);
    out << '\n';
  }
}

inline std::string format_table(const LoopTable& t) {
  std::ostringstream out;
  write_table(out, t);
  return out.str();
}

/// x o y = (x/b)(a\y). Identity is a*b.
inline LoopTable principal_isotope(const LoopTable& L, Element a, Element b) {
  const std::size_t n = L.order();
  if (a >= n || b >= n) throw std::out_of_range("isotope parameters must be < order");
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) rows[x][y] = L.mul(L.div(Side::right, b, x), L.div(Side::left, a, y));
  return LoopTable::validate(rows);
}

/// Intersection of the left, middle and right nuclei.
inline std::set<Element> nucleus(const LoopTable& L) {
  const std::size_t n = L.order();
  std::set<Element> out;
  for (Element x = 0; x < n; ++x) {
    bool in = true;
    for (Element y = 0; y < n && in; ++y)
      for (Element z = 0; z < n && in; ++z)
        in = L.mul(x, L.mul(y, z)) == L.mul(L.mul(x, y), z) && L.mul(y, L.mul(x, z)) == L.mul(L.mul(y, x), z) &&
             L.mul(y, L.mul(z, x)) == L.mul(L.mul(y, z), x);
    if (in) out.insert(x);
  }
  return out;
}

inline LoopTable cyclic_group(std::size_t n) {
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = static_cast<std::int64_t>((r + c) % n);
  return LoopTable::validate(rows);
}

/// S3 acting on {0,1,2}; element i is the i-th permutation in lexicographic
/// order (0 = identity), product is composition (x*y)(t) = x(y(t)).
inline LoopTable symmetric_group_3() {
  const std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<std::int64_t>> rows(6, std::vector<std::int64_t>(6));
  for (std::size_t x = 0; x < 6; ++x)
    for (std::size_t y = 0; y < 6; ++y) {
      std::vector<int> comp = {perms[x][perms[y][0]], perms[x][perms[y][1]], perms[x][perms[y][2]]};
      for (std::size_t z = 0; z < 6; ++z)
        if (perms[z] == comp) rows[x][y] = static_cast<std::int64_t>(z);
    }
  return LoopTable::validate(rows);
}

}  // namespace loopforge
