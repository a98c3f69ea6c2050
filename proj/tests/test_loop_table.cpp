#include <catch_amalgamated.hpp>

#include "loopforge/cayley.hpp"
#include "loopforge/search.hpp"

using namespace loopforge;

namespace {

std::vector<LoopTable> group_fixtures() {
  return {cyclic_group(4), cyclic_group(5), cyclic_group(6), symmetric_group_3()};
}

// Small nonassociative loops: every order-5 reduced loop that is not a group.
std::vector<LoopTable> nonassociative_fixtures() {
  std::vector<LoopTable> out;
  const auto assoc = builtin("associative");
  for (const auto& t : search::enumerate_loops(5))
    if (!holds(t, assoc, InverseConvention::paper_right)) out.push_back(t);
  return out;
}

LoopError::Kind error_kind(const std::vector<std::vector<std::int64_t>>& rows) {
  try {
    (void)LoopTable::validate(rows);
  } catch (const LoopError& e) {
    return e.kind();
  }
  FAIL("expected LoopError");
  return LoopError::Kind::bad_shape;
}

}  // namespace

TEST_CASE("validate", "[cayley]") {
  const auto z3 = LoopTable::validate({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(z3.order() == 3);
  CHECK(z3.identity() == 0);

  try {
    (void)LoopTable::validate({{0, 1}, {1, 1}});
    FAIL("expected LatinViolation");
  } catch (const LoopError& e) {
    CHECK(e.kind() == LoopError::Kind::latin_violation);
    CHECK(e.row() == 1u);
  }
  // [[1,0],[0,1]] is Z2 with identity 1, not identity-free
  CHECK(LoopTable::validate({{1, 0}, {0, 1}}).identity() == 1);
  // x*y = -x-y mod 3: idempotent quasigroup, no identity
  CHECK(error_kind({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}) == LoopError::Kind::no_identity);
  CHECK(error_kind({}) == LoopError::Kind::bad_shape);
  CHECK(error_kind({{0, 1}, {1}}) == LoopError::Kind::bad_shape);
  CHECK(error_kind({{0, 2}, {2, 0}}) == LoopError::Kind::bad_shape);
  CHECK(error_kind({{0, 1}, {0, 1}}) == LoopError::Kind::latin_violation);

  // identity need not be 0
  const auto shifted = LoopTable::validate({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
  CHECK(shifted.identity() == 2);
}

TEST_CASE("text format round trip", "[cayley]") {
  const auto s3 = symmetric_group_3();
  const auto text = format_table(s3);
  CHECK(parse_table("# comment\n\n" + text) == s3);
  CHECK_THROWS_AS(parse_table("2\n0 1\n1"), LoopError);
  CHECK_THROWS_AS(parse_table("2\n0 1\n1 x"), LoopError);
  CHECK_THROWS_AS(parse_table("# only comments\n"), LoopError);
}

TEST_CASE("loop operations on Z3", "[cayley]") {
  const auto z3 = cyclic_group(3);
  CHECK(z3.mul(1, 2) == 0);
  CHECK(z3.div(Side::left, 1, 2) == 1);
  CHECK(z3.inv(Side::left, 1) == 2);
}

TEST_CASE("division round trips", "[cayley][property]") {
  std::vector<LoopTable> tables = group_fixtures();
  for (auto& t : nonassociative_fixtures()) tables.push_back(t);
  for (std::size_t n = 7; n <= 12; ++n) tables.push_back(cyclic_group(n));
  for (const auto& L : tables) {
    const auto n = static_cast<Element>(L.order());
    for (Element a = 0; a < n; ++a) {
      REQUIRE(L.div(Side::left, a, a) == L.identity());
      REQUIRE(L.div(Side::right, a, a) == L.identity());
      REQUIRE(L.mul(L.inv(Side::left, a), a) == L.identity());
      REQUIRE(L.mul(a, L.inv(Side::right, a)) == L.identity());
      for (Element b = 0; b < n; ++b) {
        REQUIRE(L.mul(a, L.div(Side::left, a, b)) == b);
        REQUIRE(L.mul(L.div(Side::right, a, b), a) == b);
      }
    }
  }
}

TEST_CASE("groups have two-sided inverses", "[cayley]") {
  for (const auto& L : group_fixtures())
    for (Element x = 0; x < L.order(); ++x) REQUIRE(L.inv(Side::left, x) == L.inv(Side::right, x));
}

TEST_CASE("principal isotopes", "[cayley]") {
  const auto z3 = cyclic_group(3);
  CHECK(principal_isotope(z3, 0, 0) == z3);
  CHECK(principal_isotope(z3, 1, 1).identity() == 2);

  std::vector<LoopTable> tables = group_fixtures();
  const auto nonassoc = nonassociative_fixtures();
  tables.insert(tables.end(), nonassoc.begin(), nonassoc.begin() + 5);
  for (const auto& L : tables) {
    CHECK(principal_isotope(L, L.identity(), L.identity()) == L);
    for (Element a = 0; a < L.order(); ++a)
      for (Element b = 0; b < L.order(); ++b) {
        const auto iso = principal_isotope(L, a, b);  // validates
        REQUIRE(iso.identity() == L.mul(a, b));
      }
  }
}

TEST_CASE("universality", "[cayley]") {
  const auto osborn = builtin("osborn");
  CHECK(is_universal(cyclic_group(5), osborn, InverseConvention::paper_right).universal);
  CHECK(is_universal(cyclic_group(4), parse("x*y=x*y"), InverseConvention::paper_right).universal);

  const auto s3 = symmetric_group_3();
  const auto res = is_universal(s3, parse("x*y=y*x"), InverseConvention::paper_right);
  REQUIRE_FALSE(res.universal);
  CHECK(res.witness->a == s3.identity());
  CHECK(res.witness->b == s3.identity());
}

TEST_CASE("universality witnesses re-fail and ignore job count", "[cayley][property]") {
  const auto laws = {builtin("osborn"), builtin("moufang"), builtin("lip"), builtin("commutative")};
  const auto nonassoc = nonassociative_fixtures();
  for (std::size_t t = 0; t < nonassoc.size(); t += 5) {
    const auto& L = nonassoc[t];
    for (const auto& law : laws) {
      const auto seq = is_universal(L, law, InverseConvention::paper_right, 1);
      const auto par = is_universal(L, law, InverseConvention::paper_right, 4);
      REQUIRE(seq.universal == par.universal);
      if (seq.universal) continue;
      REQUIRE(seq.witness->a == par.witness->a);
      REQUIRE(seq.witness->b == par.witness->b);
      REQUIRE(seq.witness->assignment == par.witness->assignment);
      const auto iso = principal_isotope(L, seq.witness->a, seq.witness->b);
      std::vector<Element> values;
      for (const auto& [v, x] : seq.witness->assignment) values.push_back(x);
      CHECK_FALSE(CompiledLaw(law, InverseConvention::paper_right).satisfied(iso, values));
      // nothing earlier in scan order fails
      const auto first = seq.witness->a * L.order() + seq.witness->b;
      for (std::size_t idx = 0; idx < first; ++idx)
        REQUIRE(holds(principal_isotope(L, idx / L.order(), idx % L.order()), law, InverseConvention::paper_right));
    }
  }
}

TEST_CASE("nucleus", "[cayley]") {
  CHECK(nucleus(cyclic_group(3)) == std::set<Element>{0, 1, 2});
  for (const auto& L : group_fixtures()) CHECK(nucleus(L).size() == L.order());
  for (const auto& L : nonassociative_fixtures()) {
    const auto nuc = nucleus(L);
    REQUIRE(nuc.count(L.identity()) == 1);
    REQUIRE(nuc.size() < L.order());
  }
}

TEST_CASE("nucleus is a subgroup for every loop of order <= 6", "[cayley][property]") {
  for (std::size_t n = 1; n <= 6; ++n) {
    search::enumerate_loops(n, [](const LoopTable& L) {
      const auto nuc = nucleus(L);
      REQUIRE(nuc.count(L.identity()) == 1);
      for (auto x : nuc) {
        REQUIRE(nuc.count(L.inv(Side::left, x)) == 1);
        REQUIRE(nuc.count(L.inv(Side::right, x)) == 1);
        for (auto y : nuc) REQUIRE(nuc.count(L.mul(x, y)) == 1);
      }
    });
  }
}
