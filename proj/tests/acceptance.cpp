// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "loopforge/loopforge.hpp"

using namespace loopforge;
using huthnance::NumElement;
using huthnance::SymElement;

namespace {

constexpr auto kRight = InverseConvention::paper_right;
constexpr auto kLeft = InverseConvention::literature_left;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) note << "failed: ";
      else note << "; ";
      note << what;
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("[%s] AC%d %s (%.2fs)", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs);
  const auto note = o.note.str();
  if (!note.empty()) std::printf(" -- %s", note.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

bool all_zero(const std::array<Poly, 3>& r) { return r[0].is_zero() && r[1].is_zero() && r[2].is_zero(); }

std::array<Poly, 3> diff(const SymElement& a, const SymElement& b) {
  auto x = a.components(), y = b.components();
  return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}

NumElement random_element(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> d(-bound, bound);
  return {d(rng), d(rng), d(rng)};
}

// Random element whose first component has the given parity.
NumElement random_with_parity(std::mt19937_64& rng, int parity, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> d(-bound, bound);
  return {2 * d(rng) + parity, d(rng), d(rng)};
}

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LOOPFORGE_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Term random_term(std::mt19937_64& rng, int depth) {
  static const std::string vars = "xyzuv";
  std::uniform_int_distribution<int> kind(0, depth == 0 ? 0 : 5);
  std::uniform_int_distribution<std::size_t> var(0, vars.size() - 1);
  switch (kind(rng)) {
    case 0:
      return Term::var(vars[var(rng)]);
    case 1:
      return Term::mul(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 2:
      return Term::ldiv(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 3:
      return Term::rdiv(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 4:
      return Term::linv(random_term(rng, depth - 1));
    default:
      return Term::rinv(random_term(rng, depth - 1));
  }
}

std::vector<LoopTable> group_fixtures() {
  return {cyclic_group(4), cyclic_group(5), cyclic_group(6), symmetric_group_3()};
}

}  // namespace

int main() {
  criterion(1, "symbolic reproduction of the odd probe case", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto report = huthnance::audit_lemma312(kRight);
    const double secs = seconds_since(t0);
    o.require(report.cases.size() == 2, "two parity cases");
    const auto& odd = report.cases.at(1);
    o.require(odd.parities == std::vector<int>{1}, "case 1 is odd");
    o.require(odd.lhs[1] == Poly::parse("m+2k-10i^3-12i^2-2i"), "lhs second = " + odd.lhs[1].to_string());
    o.require(odd.rhs[1] == Poly::parse("m+2k-14i^3-18i^2-7i-1"), "rhs second = " + odd.rhs[1].to_string());
    o.require(odd.lhs[0] == Poly::parse("6i+3"), "lhs first = " + odd.lhs[0].to_string());
    o.require(odd.rhs[0] == Poly::parse("6i+3"), "rhs first = " + odd.rhs[0].to_string());
    o.require(odd.residuals[1] == Poly::parse("4i^3+6i^2+5i+1"), "residual second = " + odd.residuals[1].to_string());
    o.require(!odd.residuals[1].is_zero() && !odd.holds, "odd case fails");
    o.require(secs < 1.0, "runtime " + std::to_string(secs) + "s >= 1s");
  });

  criterion(2, "numeric witness at v=[1,0,0] and verify-paper verdict", [](Outcome& o) {
    const NumElement v{1, 0, 0};
    const auto lhs = huthnance::star(v, huthnance::star(v, v));
    const auto rhs = huthnance::star(huthnance::divide(Side::left, huthnance::inverse(v, kRight), v), v);
    o.require(lhs == NumElement{3, 0, -1}, "lhs is [3,0,-1]");
    o.require(lhs != rhs, "lhs differs from rhs");
    const auto cli = run_cli("verify-paper");
    o.require(cli.status == 0, "verify-paper exit status " + std::to_string(cli.status));
    o.require(cli.out.find("FAILS") != std::string::npos, "verify-paper prints FAILS");
  });

  criterion(3, "third components derived and mismatches flagged", [](Outcome& o) {
    const auto report = huthnance::audit_lemma312(kRight);
    int third = 0, flagged = 0;
    for (const auto& rc : report.reference_checks) {
      if (rc.label.find("third") == std::string::npos) continue;
      ++third;
      o.require(!rc.derived.empty() && !rc.reference.empty(), rc.label + " has both strings");
      o.require(rc.matches == (Poly::parse(rc.reference) == Poly::parse(rc.derived)), rc.label + " flag is truthful");
      if (!rc.matches) ++flagged;
    }
    o.require(third == 2, "both sides carry a third-component check");
    o.require(flagged > 0, "expected mismatch is reported");
    const auto& odd = report.cases.at(1);
    for (const auto& rc : report.reference_checks) {
      if (rc.label == "odd lhs third") o.require(rc.derived == odd.lhs[2].to_string(), "lhs third is derived");
      if (rc.label == "odd rhs third") o.require(rc.derived == odd.rhs[2].to_string(), "rhs third is derived");
    }
  });

  criterion(4, "divisions and inverse laws, symbolic and on 10^4 random elements", [](Outcome& o) {
    const auto e = huthnance::identity_like<SymElement>();
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 2; ++u) {
        const auto a = SymElement::generic(s, "i", "k", "m"), b = SymElement::generic(u, "j", "p", "q");
        const std::string tag = " (" + std::to_string(s) + "," + std::to_string(u) + ")";
        o.require(all_zero(diff(huthnance::star(a, huthnance::divide(Side::left, a, b)), b)), "a*(a\\b)=b" + tag);
        o.require(all_zero(diff(huthnance::star(huthnance::divide(Side::right, a, b), a), b)), "(b/a)*a=b" + tag);
        o.require(all_zero(diff(huthnance::divide(Side::left, a, huthnance::star(a, b)), b)), "a\\(a*b)=b" + tag);
        o.require(all_zero(diff(huthnance::divide(Side::right, b, huthnance::star(a, b)), a)), "(a*b)/b=a" + tag);
      }
    for (int s = 0; s < 2; ++s) {
      const auto x = SymElement::generic(s, "i", "k", "m");
      o.require(all_zero(diff(huthnance::star(x, huthnance::inverse(x, kRight)), e)), "x*x^r=e");
      o.require(all_zero(diff(huthnance::star(huthnance::inverse(x, kLeft), x), e)), "x^l*x=e");
    }

    std::mt19937_64 rng(20240401);
    const auto en = huthnance::identity_element();
    std::size_t bad = 0;
    for (int t = 0; t < 10000; ++t) {
      const auto a = random_element(rng, 1000), b = random_element(rng, 1000);
      const auto ab = huthnance::star(a, b);
      bad += huthnance::star(a, huthnance::divide(Side::left, a, b)) != b;
      bad += huthnance::star(huthnance::divide(Side::right, a, b), a) != b;
      bad += huthnance::divide(Side::left, a, ab) != b;
      bad += huthnance::divide(Side::right, b, ab) != a;
      bad += huthnance::star(a, huthnance::inverse(a, kRight)) != en;
      bad += huthnance::star(huthnance::inverse(a, kLeft), a) != en;
    }
    o.require(bad == 0, std::to_string(bad) + " numeric violations");
  });

  criterion(5, "symbolic and numeric products agree on 10^5 assignments", [](Outcome& o) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
    std::size_t bad = 0;
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 2; ++u) {
        const auto x = SymElement::generic(s, "i", "k", "m"), y = SymElement::generic(u, "j", "p", "q");
        const auto xy = huthnance::star(x, y);
        for (int t = 0; t < 25000; ++t) {
          const Assignment sg = {{"i", d(rng)}, {"k", d(rng)}, {"m", d(rng)},
                                 {"j", d(rng)}, {"p", d(rng)}, {"q", d(rng)}};
          bad += huthnance::to_num(xy, sg) != huthnance::star(huthnance::to_num(x, sg), huthnance::to_num(y, sg));
        }
      }
    o.require(bad == 0, std::to_string(bad) + " mismatches");
  });

  criterion(6, "Osborn audit: 8 cases per convention, numerically consistent", [](Outcome& o) {
    const auto law = builtin("osborn");
    const HuthnanceCarrier<NumElement> h;
    std::mt19937_64 rng(6);
    for (auto conv : {kRight, kLeft}) {
      const auto report = huthnance::audit_osborn(conv);
      const std::string tag = " [" + huthnance::to_string(conv) + "]";
      o.require(report.cases.size() == 8, "8 cases" + tag);
      auto satisfied = [&](const NumElement& x, const NumElement& y, const NumElement& z) {
        const Env<NumElement> env{{'x', x}, {'y', y}, {'z', z}};
        return eval_term(law.lhs, env, h, conv) == eval_term(law.rhs, env, h, conv);
      };
      for (const auto& c : report.cases) {
        const std::string cs = std::to_string(c.parities[0]) + std::to_string(c.parities[1]) +
                               std::to_string(c.parities[2]) + tag;
        if (c.holds) {
          for (int t = 0; t < 100; ++t) {
            const auto x = random_with_parity(rng, c.parities[0], 10);
            const auto y = random_with_parity(rng, c.parities[1], 10);
            const auto z = random_with_parity(rng, c.parities[2], 10);
            if (!satisfied(x, y, z)) {
              o.require(false, "holding case " + cs + " violated numerically");
              break;
            }
          }
        } else {
          o.require(c.witness.has_value() && c.witness->size() == 3, "case " + cs + " has a witness");
          if (c.witness) {
            const auto& w = *c.witness;
            o.require(!satisfied(w[0], w[1], w[2]), "witness of " + cs + " violates the identity");
          }
        }
      }
    }
  });

  criterion(7, "group fixtures pass Osborn, universality and the probe", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto osborn = builtin("osborn");
    const auto probe = builtin("lemma312");
    const char* names[] = {"Z4", "Z5", "Z6", "S3"};
    const auto fixtures = group_fixtures();
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
      const auto& L = fixtures[f];
      for (auto conv : {kRight, kLeft}) {
        const std::string tag = std::string(names[f]) + " [" + huthnance::to_string(conv) + "]";
        o.require(holds(L, osborn, conv).holds, tag + " osborn");
        o.require(is_universal(L, osborn, conv).universal, tag + " universal osborn");
        o.require(holds(L, probe, conv).holds, tag + " lemma312");
      }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 10.0, "runtime " + std::to_string(secs) + "s >= 10s");
  });

  criterion(8, "reduced loop counts, n=6 timing, parallel determinism", [](Outcome& o) {
    const std::uint64_t expected[] = {1, 1, 1, 4, 56, 9408};
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto got = search::count_loops(n);
      o.require(got == expected[n - 1], "n=" + std::to_string(n) + " count " + std::to_string(got));
    }
    const auto t0 = Clock::now();
    std::uint64_t six = 0;
    search::enumerate_loops(6, [&](const LoopTable&) { ++six; });
    const double secs = seconds_since(t0);
    o.require(six == 9408, "n=6 count " + std::to_string(six));
    o.require(secs < 60.0, "n=6 runtime " + std::to_string(secs) + "s >= 60s");
    o.require(search::count_loops(6, 4) == 9408, "parallel n=6 count");

    for (std::size_t n : {5u, 6u}) {
      search::SearchQuery q;
      q.order = n;
      q.filters.push_back(search::Filter::identity("osborn", builtin("osborn"), search::Filter::Mode::holds));
      q.jobs = 1;
      const auto seq = search::to_json(search::run(q)).dump();
      q.jobs = 4;
      const auto par = search::to_json(search::run(q)).dump();
      o.require(seq == par, "n=" + std::to_string(n) + " parallel report differs");
    }
  });

  criterion(9, "identity DSL round trip and positioned syntax errors", [](Outcome& o) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> depth(0, 5);
    std::size_t bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const IdentityAst a(random_term(rng, depth(rng)), random_term(rng, depth(rng)));
      const auto text = print(a);
      const auto b = parse(text);
      bad += !(b == a) || print(b) != text;
    }
    o.require(bad == 0, std::to_string(bad) + " random ASTs did not round trip");

    for (const char* name : {"osborn", "lemma312"}) {
      const auto law = builtin(name);
      const auto text = print(law);
      const auto again = parse(text);
      o.require(again == law && print(again) == text, std::string(name) + " builtin round trip");
    }

    const std::pair<const char*, std::size_t> malformed[] = {
        {"x*", 2}, {"=x", 0}, {"x*y", 3}, {"(x*y = x", 5}, {"x^q = x", 2}, {"x = y)", 5}, {"x # y = x", 2}};
    for (const auto& [text, pos] : malformed) {
      try {
        (void)parse(text);
        o.require(false, std::string("'") + text + "' parsed");
      } catch (const SyntaxError& e) {
        o.require(e.position() == pos, std::string("'") + text + "' error at " + std::to_string(e.position()));
      }
    }
  });

  criterion(10, "universal Osborn loops of order 5 satisfy the probe", [](Outcome& o) {
    const auto osborn = builtin("osborn");
    const CompiledLaw probe(builtin("lemma312"), kRight);
    std::size_t loops = 0, universal = 0;
    for (const auto& L : search::enumerate_loops(5)) {
      ++loops;
      if (!is_universal(L, osborn, kRight).universal) continue;
      ++universal;
      o.require(holds(L, probe).holds, "universal Osborn loop violates lemma312:\n" + format_table(L));
    }
    o.require(loops == 56, "56 loops enumerated");
    o.note << (o.pass ? "" : "; ") << universal << " of " << loops << " universal";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
