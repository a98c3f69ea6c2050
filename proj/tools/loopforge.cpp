// loopforge: audits of the Huthnance loop and finite-loop tooling.
//
// Exit codes: 0 claim holds / task done, 1 checked property fails, 2 usage or
// input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopforge/loopforge.hpp"

namespace {

using namespace loopforge;
using huthnance::AuditReport;
using huthnance::NumElement;
using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

const char* const kDisplayRule =
    "Polynomials print by descending total degree; ties are ordered graded-lexicographically\n"
    "by variable name (i < k < m ...), a larger power of an earlier variable first.\n"
    "Example: -10i^3-12i^2-2i+2k+m.\n"
    "Convention: 'right' (default) reads x^l as the right inverse, x*x^l = e;\n"
    "'left' reads it as the left inverse, x^l*x = e.\n"
    "Exit codes: 0 holds/done, 1 property fails, 2 usage or input error.";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<InverseConvention> conventions(const std::string& flag, bool allow_both) {
  if (flag == "right") return {InverseConvention::paper_right};
  if (flag == "left") return {InverseConvention::literature_left};
  if (flag == "both" && allow_both) return {InverseConvention::paper_right, InverseConvention::literature_left};
  throw UsageError("invalid --convention '" + flag + "'");
}

std::string triple(const std::array<Poly, 3>& ps) {
  return "[" + ps[0].to_string() + ", " + ps[1].to_string() + ", " + ps[2].to_string() + "]";
}

std::string elements(const std::vector<NumElement>& es) {
  std::ostringstream os;
  for (std::size_t i = 0; i < es.size(); ++i) os << (i ? " " : "") << es[i];
  return os.str();
}

LoopTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open table file '" + path + "'");
  return read_table(in);
}

// verify-paper ---------------------------------------------------------------

struct ProbeNumeric {
  NumElement v, lhs, rhs;
};

ProbeNumeric probe_at(const NumElement& v, InverseConvention conv) {
  using namespace huthnance;
  return {v, star(v, star(v, v)), star(divide(Side::left, inverse(v, conv), v), v)};
}

void print_audit(const AuditReport& r) {
  std::cout << "identity " << r.identity << ": " << r.law << "   [convention " << to_string(r.convention) << "]\n";
  for (const auto& c : r.cases) {
    std::cout << "  parities (";
    for (std::size_t i = 0; i < c.parities.size(); ++i) std::cout << (i ? "," : "") << c.parities[i];
    std::cout << ")  " << (c.holds ? "holds" : "FAILS") << "\n";
    std::cout << "    lhs      = " << triple(c.lhs) << "\n";
    std::cout << "    rhs      = " << triple(c.rhs) << "\n";
    std::cout << "    residual = " << triple(c.residuals) << "\n";
    if (c.witness) std::cout << "    witness  = " << elements(*c.witness) << "\n";
  }
  if (!r.reference_checks.empty()) {
    std::cout << "  comparison with the published odd-case values:\n";
    for (const auto& rc : r.reference_checks)
      std::cout << "    " << rc.label << ": reference " << rc.reference << " | derived " << rc.derived << "  "
                << (rc.matches ? "match" : "MISMATCH") << "\n";
  }
}

int verify_paper(const std::string& conv_flag, bool as_json) {
  const auto convs = conventions(conv_flag, true);
  bool confirmed = false;
  json runs = json::array();
  for (auto conv : convs) {
    const auto probe = huthnance::audit_lemma312(conv);
    const auto osborn = huthnance::audit_osborn(conv);
    const auto numeric = probe_at({1, 0, 0}, conv);
    const bool probe_fails = !probe.cases[1].holds;
    if (conv == InverseConvention::paper_right && probe_fails) confirmed = true;

    if (as_json) {
      runs.push_back({{"convention", huthnance::to_string(conv)},
                      {"lemma312", huthnance::to_json(probe)},
                      {"osborn", huthnance::to_json(osborn)},
                      {"numeric_check",
                       {{"v", huthnance::to_json(numeric.v)},
                        {"lhs", huthnance::to_json(numeric.lhs)},
                        {"rhs", huthnance::to_json(numeric.rhs)},
                        {"equal", numeric.lhs == numeric.rhs}}}});
      continue;
    }
    std::cout << "=== convention " << huthnance::to_string(conv) << " ===\n";
    print_audit(probe);
    std::cout << "  numeric check v = " << numeric.v << ": lhs = " << numeric.lhs << ", rhs = " << numeric.rhs
              << (numeric.lhs == numeric.rhs ? "  (equal)" : "  (differ)") << "\n\n";
    print_audit(osborn);
    std::cout << "\n";
  }

  const std::string verdict = confirmed ? "necessary condition for universality FAILS"
                                        : "counterexample not confirmed under the selected convention";
  if (as_json) {
    std::cout << json{{"runs", runs}, {"verdict", verdict}, {"confirmed", confirmed}}.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << verdict << "\n";
  }
  return confirmed ? kOk : kFails;
}

// check / isotope / nucleus ---------------------------------------------------

std::string assignment_text(const std::vector<std::pair<char, Element>>& a) {
  std::string s;
  for (const auto& [v, x] : a) s += (s.empty() ? "" : " ") + std::string(1, v) + "=" + std::to_string(x);
  return s;
}

int check(const std::string& path, const std::string& law_spec, bool all_isotopes, const std::string& conv_flag,
          unsigned jobs, bool as_json) {
  const auto conv = conventions(conv_flag, false).front();
  const LoopTable table = load_table(path);
  const IdentityAst law = resolve_law(law_spec);
  json out = {{"law", print(law)}, {"convention", huthnance::to_string(conv)}};
  bool ok;
  if (all_isotopes) {
    auto res = is_universal(table, law, conv, jobs);
    ok = res.universal;
    out["mode"] = "universal";
    out["holds"] = ok;
    if (!ok) {
      const auto& w = *res.witness;
      json asg = json::object();
      for (const auto& [v, x] : w.assignment) asg[std::string(1, v)] = x;
      out["witness"] = {{"a", w.a}, {"b", w.b}, {"assignment", asg}};
      if (!as_json)
        std::cout << "fails on principal isotope (a,b)=(" << w.a << "," << w.b << "): "
                  << assignment_text(w.assignment) << "\n";
    } else if (!as_json) {
      std::cout << "holds on all " << table.order() * table.order() << " principal isotopes\n";
    }
  } else {
    auto res = holds(table, law, conv);
    ok = res.holds;
    out["mode"] = "holds";
    out["holds"] = ok;
    if (!ok) {
      json asg = json::object();
      for (const auto& [v, x] : *res.counterexample) asg[std::string(1, v)] = x;
      out["witness"] = {{"assignment", asg}};
      if (!as_json) std::cout << "fails: " << assignment_text(*res.counterexample) << "\n";
    } else if (!as_json) {
      std::cout << "holds\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return ok ? kOk : kFails;
}

int isotope(const std::string& path, long a, long b, const std::string& out_path) {
  const LoopTable table = load_table(path);
  const auto n = static_cast<long>(table.order());
  if (a < 0 || b < 0 || a >= n || b >= n) throw UsageError("-a and -b must lie in 0.." + std::to_string(n - 1));
  const LoopTable iso = principal_isotope(table, static_cast<Element>(a), static_cast<Element>(b));
  if (out_path.empty()) {
    write_table(std::cout, iso);
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    out << "# principal isotope (a,b)=(" << a << "," << b << "), identity " << iso.identity() << "\n";
    write_table(out, iso);
  }
  return kOk;
}

int nucleus_cmd(const std::string& path, bool as_json) {
  const LoopTable table = load_table(path);
  const auto nuc = nucleus(table);
  const bool trivial = nuc.size() == 1;
  if (as_json) {
    std::cout << json{{"nucleus", nuc}, {"identity", table.identity()}, {"trivial", trivial}}.dump(2) << "\n";
  } else {
    std::cout << "nucleus: {";
    bool first = true;
    for (auto x : nuc) {
      std::cout << (first ? "" : ", ") << x;
      first = false;
    }
    std::cout << "}\ntrivial: " << (trivial ? "yes" : "no") << "\n";
  }
  return kOk;
}

// search ----------------------------------------------------------------------

int search_cmd(std::size_t n, const std::vector<std::string>& identities, const std::vector<std::string>& failing,
               bool universal, bool trivial_nucleus, bool count_only, unsigned jobs, const std::string& out_dir,
               const std::string& conv_flag, bool as_json) {
  search::SearchQuery q;
  q.order = n;
  q.count_only = count_only;
  q.jobs = jobs;
  q.convention = conventions(conv_flag, false).front();
  using Mode = search::Filter::Mode;
  for (const auto& s : identities)
    q.filters.push_back(search::Filter::identity(s, resolve_law(s), universal ? Mode::universal : Mode::holds));
  for (const auto& s : failing) q.filters.push_back(search::Filter::identity(s, resolve_law(s), Mode::fails));
  if (trivial_nucleus) q.filters.push_back(search::Filter::trivial_nucleus());
  if (n < 1 || n > search::kMaxOrder) throw UsageError("-n must be in 1.." + std::to_string(search::kMaxOrder));
  if (!count_only && n > search::kMaxListedOrder)
    throw UsageError("order " + std::to_string(n) + " is only supported with --count-only");

  const auto report = search::run(q);

  if (!out_dir.empty() && !count_only) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < report.matches.size(); ++i) {
      const auto file = std::filesystem::path(out_dir) / ("loop_n" + std::to_string(n) + "_" + std::to_string(i) + ".txt");
      std::ofstream out(file);
      if (!out) throw UsageError("cannot write '" + file.string() + "'");
      write_table(out, report.matches[i]);
    }
  }

  if (as_json) {
    std::cout << search::to_json(report).dump(2) << "\n";
  } else {
    std::cout << "order " << report.order << "\n";
    std::cout << "total " << report.total_enumerated << "\n";
    for (const auto& f : report.filters)
      std::cout << "filter " << f.label << " (" << search::to_string(f.mode) << "): " << f.passed << "\n";
    std::cout << "matches " << report.match_count << "\n";
    if (!count_only && out_dir.empty())
      for (const auto& t : report.matches) std::cout << "\n" << format_table(t);
  }
  std::cerr << "elapsed " << report.elapsed_ms << " ms\n";
  return kOk;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("LOOPFORGE_JOBS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopforge: Osborn-loop audits and finite loop tooling"};
  app.footer(kDisplayRule);
  app.require_subcommand(1);

  std::string convention = "right";
  bool as_json = false;
  unsigned jobs = default_jobs();

  auto* verify = app.add_subcommand("verify-paper", "Audit the Huthnance loop counterexample symbolically");
  verify->add_option("--convention", convention, "left | right | both")->check(CLI::IsMember({"left", "right", "both"}));
  verify->add_flag("--json", as_json, "Emit the audit report as JSON");

  std::string table_path, identity;
  bool all_isotopes = false;
  auto* check_cmd = app.add_subcommand("check", "Check an identity on a Cayley table");
  check_cmd->add_option("table", table_path, "Cayley table file")->required();
  check_cmd->add_option("--identity", identity, "Builtin name or law text")->required();
  check_cmd->add_flag("--all-isotopes", all_isotopes, "Check every principal isotope (universality)");
  check_cmd->add_option("--convention", convention, "left | right")->check(CLI::IsMember({"left", "right"}));
  check_cmd->add_option("--jobs", jobs, "Worker threads (default $LOOPFORGE_JOBS or 1)")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--json", as_json, "JSON output");

  long iso_a = 0, iso_b = 0;
  std::string out_path;
  auto* iso_cmd = app.add_subcommand("isotope", "Write the principal isotope (x/b)(a\\y)");
  iso_cmd->add_option("table", table_path, "Cayley table file")->required();
  iso_cmd->add_option("-a", iso_a, "Left parameter")->required();
  iso_cmd->add_option("-b", iso_b, "Right parameter")->required();
  iso_cmd->add_option("-o,--out", out_path, "Output file (default stdout)");

  auto* nuc_cmd = app.add_subcommand("nucleus", "List the nucleus of a loop");
  nuc_cmd->add_option("table", table_path, "Cayley table file")->required();
  nuc_cmd->add_flag("--json", as_json, "JSON output");

  std::size_t order = 0;
  std::vector<std::string> identities, failing;
  bool universal = false, trivial_nucleus = false, count_only = false;
  std::string out_dir;
  auto* search_cmd_p = app.add_subcommand("search", "Enumerate reduced loops of order n with filters");
  search_cmd_p->add_option("-n", order, "Order (1..7; 7 needs --count-only)")->required();
  search_cmd_p->add_option("--identity", identities, "Keep loops satisfying this law (repeatable)");
  search_cmd_p->add_option("--fails", failing, "Keep loops violating this law (repeatable)");
  search_cmd_p->add_flag("--universal", universal, "Require --identity laws on every principal isotope");
  search_cmd_p->add_flag("--trivial-nucleus", trivial_nucleus, "Keep loops whose nucleus is {e}");
  search_cmd_p->add_flag("--count-only", count_only, "Report counts only");
  search_cmd_p->add_option("--jobs", jobs, "Worker threads (default $LOOPFORGE_JOBS or 1)")->check(CLI::PositiveNumber);
  search_cmd_p->add_option("--out", out_dir, "Write matches as loop_n{N}_{index}.txt");
  search_cmd_p->add_option("--convention", convention, "left | right")->check(CLI::IsMember({"left", "right"}));
  search_cmd_p->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return verify_paper(convention, as_json);
    if (*check_cmd) return check(table_path, identity, all_isotopes, convention, jobs, as_json);
    if (*iso_cmd) return isotope(table_path, iso_a, iso_b, out_path);
    if (*nuc_cmd) return nucleus_cmd(table_path, as_json);
    if (*search_cmd_p)
      return search_cmd(order, identities, failing, universal, trivial_nucleus, count_only, jobs, out_dir, convention,
                        as_json);
  } catch (const LoopError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
