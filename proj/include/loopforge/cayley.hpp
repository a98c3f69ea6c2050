#pragma once

// Universality over principal isotopes.
//
// Every loop isotope is isomorphic to a principal isotope x o y = (x/b)(a\y),
// and satisfying an identity is invariant under isomorphism, so a law is
// universal for L iff it holds in all n^2 principal isotopes.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "identity.hpp"
#include "loop_table.hpp"

namespace loopforge {

struct UniversalityWitness {
  Element a = 0, b = 0;
  std::vector<std::pair<char, Element>> assignment;
};

struct UniversalityResult {
  bool universal = true;
  std::optional<UniversalityWitness> witness;
  explicit operator bool() const { return universal; }
};

/// Scans (a, b) a-major then b; the witness is the first failing isotope in
/// that order regardless of `jobs`.
inline UniversalityResult is_universal(const LoopTable& L, const IdentityAst& law, InverseConvention conv,
                                       unsigned jobs = 1) {
  const std::size_t n = L.order();
  const std::size_t total = n * n;
  const CompiledLaw compiled(law, conv);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{total};
  std::mutex mu;
  std::optional<UniversalityWitness> found;

  auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total || idx >= best.load()) return;
      const Element a = static_cast<Element>(idx / n), b = static_cast<Element>(idx % n);
      auto res = holds(principal_isotope(L, a, b), compiled);
      if (res) continue;
      std::lock_guard lock(mu);
      if (idx < best.load()) {
        best = idx;
        found = UniversalityWitness{a, b, std::move(*res.counterexample)};
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (found) return {false, std::move(found)};
  return {};
}

}  // namespace loopforge
