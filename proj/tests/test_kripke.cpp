#include <doctest.h>

#include <random>

#include "modalbao/bao.hpp"
#include "modalbao/error.hpp"
#include "modalbao/kripke.hpp"
#include "oracle.hpp"

using namespace modalbao;

TEST_CASE("eval_model: examples") {
  const Formula c = parse("[]p -> p");
  CHECK(eval_model(FiniteFrame::identity(1), {{"p", 0}}, c) == 0b1);
  CHECK(eval_model(FiniteFrame::empty(1), {{"p", 0}}, c) == 0);
  const FiniteFrame chain = parse_frame_spec("2;0-1");
  CHECK(eval_model(chain, {{"q", 0b10}}, parse("<>q")) == 0b01);
}

TEST_CASE("eval_model: errors") {
  CHECK_THROWS_AS(eval_model(FiniteFrame::identity(2), {}, parse("p")), UnassignedVariable);
  CHECK_THROWS_AS(eval_model(FiniteFrame::identity(2), {{"p", 0b100}}, parse("p")), InvalidArgument);
}

TEST_CASE("frame_validates: examples") {
  const FiniteFrame s4chain = parse_frame_spec("2;0-0,0-1,1-1");
  const auto f = frame_validates(s4chain, axiom_catalog().get("F"));
  CHECK(f.valid);
  CHECK(f.valuations_checked == 4);

  const auto c = frame_validates(FiniteFrame::empty(1), axiom_catalog().get("C"));
  CHECK_FALSE(c.valid);
  REQUIRE(c.counterexample);
  CHECK(c.counterexample->valuation.at("p") == 0);
  CHECK(c.counterexample->world == 0);

  for (const auto* spec : {"1;", "3;0-1,1-2", "2;total", "4;refl"}) {
    CHECK(frame_validates(parse_frame_spec(spec), parse("#t")).valid);
  }
}

TEST_CASE("frame_validates: counterexamples really refute") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const FiniteFrame fr = oracle::random_frame(rng, 1 + i % 3);
    for (const char* name : {"C", "D", "E", "F", "B"}) {
      const Formula f = axiom_catalog().get(name);
      const auto v = frame_validates(fr, f);
      CAPTURE(fr.spec());
      CAPTURE(name);
      CHECK(v.valid == oracle::valid_on_frame(fr, f));
      if (!v.valid) {
        REQUIRE(v.counterexample);
        CHECK_FALSE(oracle::holds(fr, v.counterexample->valuation, f, v.counterexample->world));
      }
    }
  }
}

TEST_CASE("frame_validates: resource guard") {
  ValidityLimits tight;
  tight.max_valuation_bits = 4;
  CHECK_THROWS_AS(frame_validates(FiniteFrame::identity(3), parse("p & q"), tight), BoundExceeded);
}

TEST_CASE("enumerate_frames") {
  CHECK(enumerate_frames(1).count() == 2);
  CHECK(enumerate_frames(2).count() == 16);
  CHECK(enumerate_frames(3).count() == 512);
  CHECK_THROWS_AS(enumerate_frames(4), BoundExceeded);
  EnumerationLimits wide;
  wide.max_worlds = 4;
  CHECK(enumerate_frames(4, wide).count() == 65536);

  std::set<std::uint64_t> seen;
  std::uint64_t n = 0;
  for (const FiniteFrame& fr : enumerate_frames(3)) {
    seen.insert(fr.relation_bits());
    ++n;
  }
  CHECK(n == 512);
  CHECK(seen.size() == 512);
}

TEST_CASE("frame_properties") {
  auto props = frame_properties(FiniteFrame::identity(3));
  CHECK(props.reflexive);
  CHECK(props.transitive);
  props = frame_properties(FiniteFrame::empty(2));
  CHECK_FALSE(props.reflexive);
  CHECK(props.transitive);
  props = frame_properties(parse_frame_spec("3;0-1,1-2"));
  CHECK_FALSE(props.reflexive);
  CHECK_FALSE(props.transitive);

  for (const FiniteFrame& fr : enumerate_frames(3)) {
    const auto p = frame_properties(fr);
    CHECK(p.reflexive == oracle::reflexive(fr));
    CHECK(p.transitive == oracle::transitive(fr));
  }
}

TEST_CASE("enumerate_preorders matches a filter over all frames") {
  // Labelled preorder counts: 1, 4, 29, 355.
  const std::uint64_t expected[] = {1, 4, 29, 355};
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto pre = enumerate_preorders(k);
    CHECK(pre.size() == expected[k - 1]);
    for (const auto& fr : pre) CHECK((oracle::reflexive(fr) && oracle::transitive(fr)));
  }
}

TEST_CASE("frame specs round trip") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const FiniteFrame fr = oracle::random_frame(rng, 1 + i % 4);
    CHECK(parse_frame_spec(fr.spec()) == fr);
  }
  CHECK(parse_frame_spec("3;refl") == FiniteFrame::identity(3));
  CHECK(parse_frame_spec("2;total") == FiniteFrame::total(2));
  CHECK_THROWS_AS(parse_frame_spec("2;0-5"), ParseError);
  CHECK_THROWS(parse_frame_spec("x"));
}

TEST_CASE("modal semantics: duality and monotonicity") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t k = 1 + i % 6;
    const FiniteFrame fr = oracle::random_frame(rng, k);
    std::uniform_int_distribution<WorldSet> set(0, all_worlds(k));
    const WorldSet x = set(rng), y = set(rng);
    CHECK(fr.box(x) == (~fr.diamond(~x & all_worlds(k)) & all_worlds(k)));
    CHECK((fr.diamond(x & y) & ~fr.diamond(x)) == 0);
    CHECK(fr.diamond(x | y) == (fr.diamond(x) | fr.diamond(y)));
    CHECK(fr.diamond(0) == 0);
    const Valuation v{{"p", x}, {"q", y}};
    CHECK(eval_model(fr, v, parse("[]p")) == eval_model(fr, v, parse("~<>~p")));
    const Formula f = parse("<>(p & []q) -> [](q | <>~p)");
    CHECK(eval_model(fr, v, f) == oracle::truth_set(fr, v, f));
  }
}

TEST_CASE("reflexive transitive frames validate A to F") {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const auto& fr : enumerate_preorders(k)) {
      for (const char* name : {"A", "B", "C", "D", "E", "F"}) {
        CAPTURE(fr.spec());
        CAPTURE(name);
        CHECK(frame_validates(fr, axiom_catalog().get(name)).valid);
      }
    }
  }
}

TEST_CASE("the conjunct schemas are not valid on their own") {
  // [](q1 -> r) and friends only make sense inside A's antecedent.
  for (const char* name : {"A1", "A2", "B1", "B2", "C1"}) {
    CHECK_FALSE(frame_validates(FiniteFrame::identity(1), axiom_catalog().get(name)).valid);
  }
}

TEST_CASE("frame validity agrees with the powerset algebra") {
  for (std::size_t k = 1; k <= 2; ++k) {
    for (const FiniteFrame& fr : enumerate_frames(k)) {
      const auto ctx = powerset_bao_of_frame(fr);
      for (const auto& e : axiom_catalog().entries()) {
        if (e.variables.size() > 3) continue;
        CAPTURE(fr.spec());
        CAPTURE(e.name);
        CHECK(frame_validates(fr, e.formula).valid == bao_validates_exhaustive(*ctx, e.formula).valid);
      }
    }
  }
}
