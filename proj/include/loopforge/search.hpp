#pragma once

// Exhaustive enumeration of reduced loop tables (identity 0, row 0 and
// column 0 in natural order) by cell-by-cell backtracking in row-major order.
// Tables come out in lexicographic row-major order. Work is split by the
// candidate values of the first free cell (1,1); subtree results are merged
// in candidate order, so output never depends on the number of workers.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cayley.hpp"
#include "identity.hpp"
#include "loop_table.hpp"

namespace loopforge::search {

inline constexpr std::size_t kMaxOrder = 7;
/// Largest order for which matching tables may be materialized.
inline constexpr std::size_t kMaxListedOrder = 6;

namespace detail {

class Backtracker {
 public:
  using Grid = std::array<std::array<std::uint8_t, kMaxOrder>, kMaxOrder>;

  explicit Backtracker(std::size_t n) : n_(n) {
    for (std::size_t c = 0; c < n_; ++c) set(0, c, static_cast<std::uint8_t>(c));
    for (std::size_t r = 1; r < n_; ++r) set(r, 0, static_cast<std::uint8_t>(r));
  }

  /// Values allowed in cell (1,1) of the reduced square.
  std::vector<std::uint8_t> first_cell_candidates() const {
    std::vector<std::uint8_t> out;
    if (n_ < 2) return out;
    for (std::uint8_t v = 0; v < n_; ++v)
      if (allowed(1, 1, v)) out.push_back(v);
    return out;
  }

  /// Visits every completion; when `first` is set, cell (1,1) is pinned to it.
  template <class Visit>
  void run(std::optional<std::uint8_t> first, Visit&& visit) {
    if (n_ < 2) {
      visit(grid_);
      return;
    }
    if (first) {
      if (!allowed(1, 1, *first)) return;
      set(1, 1, *first);
      fill(1 * n_ + 2, visit);
      unset(1, 1, *first);
    } else {
      fill(1 * n_ + 1, visit);
    }
  }

  std::size_t order() const { return n_; }

 private:
  template <class Visit>
  void fill(std::size_t pos, Visit& visit) {
    if (pos == n_ * n_) {
      visit(grid_);
      return;
    }
    const std::size_t r = pos / n_, c = pos % n_;
    if (c == 0) {
      fill(pos + 1, visit);
      return;
    }
    std::uint32_t free = ~(rows_[r] | cols_[c]) & ((1u << n_) - 1);
    while (free) {
      const auto v = static_cast<std::uint8_t>(__builtin_ctz(free));
      free &= free - 1;
      set(r, c, v);
      fill(pos + 1, visit);
      unset(r, c, v);
    }
  }

  bool allowed(std::size_t r, std::size_t c, std::uint8_t v) const {
    return !((rows_[r] | cols_[c]) & (1u << v));
  }
  void set(std::size_t r, std::size_t c, std::uint8_t v) {
    grid_[r][c] = v;
    rows_[r] |= 1u << v;
    cols_[c] |= 1u << v;
  }
  void unset(std::size_t r, std::size_t c, std::uint8_t v) {
    rows_[r] &= ~(1u << v);
    cols_[c] &= ~(1u << v);
  }

  std::size_t n_;
  Grid grid_{};
  std::array<std::uint32_t, kMaxOrder> rows_{}, cols_{};
};

inline void check_order(std::size_t n) {
  if (n < 1 || n > kMaxOrder)
    throw std::out_of_range("loop order must be in 1.." + std::to_string(kMaxOrder) + ", got " + std::to_string(n));
}

inline LoopTable to_table(const Backtracker::Grid& g, std::size_t n) {
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = g[r][c];
  return LoopTable::validate(rows);
}

// Runs `task(candidate_index, backtracker)` for each first-cell candidate on
// up to `jobs` threads. A task list of one null candidate covers n < 2.
template <class Task>
std::size_t for_each_subtree(std::size_t n, unsigned jobs, Task&& task) {
  Backtracker probe(n);
  auto cands = probe.first_cell_candidates();
  std::vector<std::optional<std::uint8_t>> subtrees;
  if (cands.empty())
    subtrees.emplace_back(std::nullopt);
  else
    for (auto v : cands) subtrees.emplace_back(v);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Backtracker bt(n);
    for (std::size_t idx; (idx = next.fetch_add(1)) < subtrees.size();) task(idx, subtrees[idx], bt);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(subtrees.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return subtrees.size();
}

}  // namespace detail

/// Calls visit(const LoopTable&) for every reduced loop of order n, in
/// lexicographic row-major order.
template <class Visit>
void enumerate_loops(std::size_t n, Visit&& visit) {
  detail::check_order(n);
  detail::Backtracker bt(n);
  bt.run(std::nullopt, [&](const detail::Backtracker::Grid& g) { visit(detail::to_table(g, n)); });
}

inline std::vector<LoopTable> enumerate_loops(std::size_t n) {
  if (n > kMaxListedOrder) throw std::out_of_range("listing loops requires order <= " + std::to_string(kMaxListedOrder));
  std::vector<LoopTable> out;
  enumerate_loops(n, [&](const LoopTable& t) { out.push_back(t); });
  return out;
}

inline std::uint64_t count_loops(std::size_t n, unsigned jobs = 1) {
  detail::check_order(n);
  std::vector<std::uint64_t> counts(n * n + 1, 0);
  detail::for_each_subtree(n, jobs, [&](std::size_t idx, std::optional<std::uint8_t> first, detail::Backtracker& bt) {
    std::uint64_t c = 0;
    bt.run(first, [&](const auto&) { ++c; });
    counts[idx] = c;
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

struct Filter {
  enum class Mode { holds, fails, universal, trivial_nucleus };
  Mode mode = Mode::holds;
  std::optional<IdentityAst> law;
  std::string label;

  static Filter identity(std::string label, IdentityAst law, Mode mode) {
    return {mode, std::move(law), std::move(label)};
  }
  static Filter trivial_nucleus() { return {Mode::trivial_nucleus, std::nullopt, "nucleus"}; }
};

inline std::string to_string(Filter::Mode m) {
  switch (m) {
    case Filter::Mode::holds:
      return "holds";
    case Filter::Mode::fails:
      return "fails";
    case Filter::Mode::universal:
      return "universal";
    case Filter::Mode::trivial_nucleus:
      return "trivial";
  }
  return {};
}

struct SearchQuery {
  std::size_t order = 1;
  std::vector<Filter> filters;
  bool count_only = false;
  InverseConvention convention = InverseConvention::paper_right;
  unsigned jobs = 1;
};

struct FilterCount {
  std::string label;
  Filter::Mode mode;
  /// Tables that passed this filter and every filter before it.
  std::uint64_t passed = 0;
};

struct SearchReport {
  std::size_t order = 0;
  std::uint64_t total_enumerated = 0;
  std::vector<FilterCount> filters;
  std::uint64_t match_count = 0;
  std::vector<LoopTable> matches;  // empty when count_only
  double elapsed_ms = 0;
};

/// Whether t passes f (compiled law supplied for identity modes).
inline bool passes(const LoopTable& t, const Filter& f, const CompiledLaw* compiled, InverseConvention conv) {
  switch (f.mode) {
    case Filter::Mode::holds:
      return holds(t, *compiled).holds;
    case Filter::Mode::fails:
      return !holds(t, *compiled).holds;
    case Filter::Mode::universal:
      return is_universal(t, *f.law, conv).universal;
    case Filter::Mode::trivial_nucleus: {
      auto nuc = nucleus(t);
      return nuc.size() == 1 && *nuc.begin() == t.identity();
    }
  }
  return false;
}

inline SearchReport run(const SearchQuery& q) {
  detail::check_order(q.order);
  if (!q.count_only && q.order > kMaxListedOrder)
    throw std::invalid_argument("order " + std::to_string(q.order) + " requires count-only mode");
  if (q.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  for (const auto& f : q.filters)
    if (f.mode != Filter::Mode::trivial_nucleus && !f.law) throw std::invalid_argument("filter without law");

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::optional<CompiledLaw>> compiled;
  for (const auto& f : q.filters) {
    if (f.law)
      compiled.emplace_back(CompiledLaw(*f.law, q.convention));
    else
      compiled.emplace_back(std::nullopt);
  }

  struct Partial {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> passed;
    std::vector<LoopTable> matches;
  };
  const std::size_t n = q.order;
  std::vector<Partial> parts(n * n + 1);

  const std::size_t used = detail::for_each_subtree(
      n, q.jobs, [&](std::size_t idx, std::optional<std::uint8_t> first, detail::Backtracker& bt) {
        Partial p;
        p.passed.assign(q.filters.size(), 0);
        bt.run(first, [&](const detail::Backtracker::Grid& g) {
          ++p.total;
          if (q.filters.empty() && q.count_only) return;
          LoopTable t = detail::to_table(g, n);
          for (std::size_t f = 0; f < q.filters.size(); ++f) {
            const CompiledLaw* c = compiled[f] ? &*compiled[f] : nullptr;
            if (!passes(t, q.filters[f], c, q.convention)) return;
            ++p.passed[f];
          }
          if (!q.count_only) p.matches.push_back(std::move(t));
        });
        parts[idx] = std::move(p);
      });

  SearchReport report;
  report.order = n;
  for (const auto& f : q.filters) report.filters.push_back({f.label, f.mode, 0});
  for (std::size_t i = 0; i < used; ++i) {
    auto& p = parts[i];
    report.total_enumerated += p.total;
    for (std::size_t f = 0; f < p.passed.size(); ++f) report.filters[f].passed += p.passed[f];
    for (auto& t : p.matches) report.matches.push_back(std::move(t));
  }
  report.match_count = q.filters.empty() ? report.total_enumerated : report.filters.back().passed;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Deterministic serialization; elapsed time only when asked for.
inline nlohmann::json to_json(const SearchReport& r, bool include_timing = false) {
  using nlohmann::json;
  json filters = json::array();
  for (const auto& f : r.filters) filters.push_back({{"law", f.label}, {"mode", to_string(f.mode)}, {"passed", f.passed}});
  json j = {{"order", r.order}, {"total", r.total_enumerated}, {"filters", filters}, {"match_count", r.match_count}};
  json tables = json::array();
  for (const auto& t : r.matches) tables.push_back(t.rows());
  j["matches"] = tables;
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace loopforge::search
