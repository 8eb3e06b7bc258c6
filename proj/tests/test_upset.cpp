#include <doctest.h>

#include <numeric>
#include <random>

#include "modalbao/error.hpp"
#include "modalbao/upset.hpp"
#include "oracle.hpp"

using namespace modalbao;

namespace {

std::vector<bool> bits(const char* s) {
  std::vector<bool> out;
  for (; *s; ++s) out.push_back(*s == '1');
  return out;
}

// Compares a UPSet against a membership predicate on [0, n).
template <typename Pred>
bool agrees(const UPSet& s, Pred expected, std::uint64_t n) {
  const oracle::RawSet raw = oracle::raw_of(s);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (raw.contains(i) != expected(i) || s.contains(i) != expected(i)) return false;
  }
  return true;
}

UPSet evens() { return UPSet::progression(0, 2); }

}  // namespace

TEST_CASE("normalize: examples") {
  CHECK(UPSet::normalize({}, bits("11")) == UPSet::omega());
  CHECK(UPSet::normalize({}, bits("11")).period() == bits("1"));
  const UPSet one = UPSet::normalize(bits("01"), bits("0"));
  CHECK(one == UPSet::singleton(1));
  CHECK(one.prefix() == bits("01"));
  CHECK(one.period() == bits("0"));

  const oracle::RawSet raw{bits("0"), bits("100100")};
  const UPSet s = UPSet::normalize(raw.prefix, raw.period);
  CHECK(s.period().size() == 3);
  CHECK(agrees(s, [&](std::uint64_t n) { return raw.contains(n); }, 64));
  CHECK(s.bits() == ";010");

  CHECK_THROWS_AS(UPSet::normalize(bits("1"), {}), InvalidArgument);
}

TEST_CASE("set operations: examples") {
  CHECK(complement(UPSet::empty()) == UPSet::omega());
  const UPSet u = unite(UPSet::progression(2, 3), UPSet::progression(3, 3));
  CHECK(agrees(u, [](std::uint64_t n) { return n >= 2 && n % 3 != 1; }, 64));
  CHECK(u.period() == bits("011"));
  CHECK(difference(UPSet::from(1), UPSet::from(2)) == UPSet::singleton(1));
  CHECK(intersect(UPSet::progression(2, 3), UPSet::progression(3, 3)).is_empty());
  CHECK(subset_of(UPSet::singleton(4), UPSet::progression(1, 3)));
  CHECK_FALSE(subset_of(UPSet::singleton(5), UPSet::progression(1, 3)));
}

TEST_CASE("set operations: lcm cap fails loudly") {
  CHECK_THROWS_AS(unite(UPSet::progression(0, 7), UPSet::progression(0, 11), 50), BoundExceeded);
  CHECK_NOTHROW(unite(UPSet::progression(0, 7), UPSet::progression(0, 11), 77));
}

TEST_CASE("recession operators: examples") {
  CHECK(dia_recession(UPSet::empty()).is_empty());
  CHECK(dia_recession(UPSet::singleton(5)) == UPSet::interval(0, 6));
  CHECK(dia_recession(evens()).is_omega());
  const UPSet a = complement(UPSet::singleton(0));
  CHECK(box_recession(a) == UPSet::from(2));
  CHECK(box_recession(evens()).is_empty());
  CHECK(box_recession(UPSet::omega()).is_omega());
}

TEST_CASE("recession operators agree with the windowed definition") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const oracle::RawSet x = oracle::random_raw(rng);
    const UPSet s = UPSet::normalize(x.prefix, x.period);
    const std::uint64_t window = 400;
    const auto member = [&](std::uint64_t n) { return x.contains(n); };
    CHECK(agrees(dia_recession(s), [&](std::uint64_t w) {
      return oracle::recession_dia_window(member, w, window + 200);
    }, window));
  }
}

TEST_CASE("veiled admissibility") {
  CHECK_FALSE(veiled_admissible(UPSet::progression(2, 3)));
  CHECK(veiled_admissible(complement(UPSet::singleton(0))));
  CHECK(veiled_admissible(UPSet::empty()));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const UPSet x = random_admissible(rng), y = random_admissible(rng);
    REQUIRE(veiled_admissible(x));
    CHECK(veiled_admissible(intersect(x, y)));
    CHECK(veiled_admissible(complement(x)));
    CHECK(veiled_admissible(dia_recession(x)));
  }
}

TEST_CASE("random UPSets: operations match the pointwise oracle") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 2000; ++i) {
    const oracle::RawSet x = oracle::random_raw(rng), y = oracle::random_raw(rng);
    const UPSet sx = UPSet::normalize(x.prefix, x.period), sy = UPSet::normalize(y.prefix, y.period);
    const std::uint64_t n =
        2 * (std::max(x.prefix.size(), y.prefix.size()) + std::lcm(x.period.size(), y.period.size()));
    CHECK(agrees(sx, [&](auto k) { return x.contains(k); }, n));
    CHECK(agrees(unite(sx, sy), [&](auto k) { return x.contains(k) || y.contains(k); }, n));
    CHECK(agrees(intersect(sx, sy), [&](auto k) { return x.contains(k) && y.contains(k); }, n));
    CHECK(agrees(complement(sx), [&](auto k) { return !x.contains(k); }, n));
    CHECK(agrees(difference(sx, sy), [&](auto k) { return x.contains(k) && !y.contains(k); }, n));
    CHECK(agrees(dia_recession(sx), [&](auto k) { return oracle::recession_dia(x, k); }, n));
    CHECK(agrees(box_recession(sx), [&](auto k) { return oracle::recession_box(x, k); }, n));
  }
}

TEST_CASE("canonical form: idempotent, and equal iff same set") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    const oracle::RawSet x = oracle::random_raw(rng, 6, 4), y = oracle::random_raw(rng, 6, 4);
    const UPSet sx = UPSet::normalize(x.prefix, x.period), sy = UPSet::normalize(y.prefix, y.period);
    CHECK(UPSet::normalize(sx.prefix(), sx.period()) == sx);
    bool same = true;
    for (std::uint64_t k = 0; k < 2 * (6 + 12); ++k) same = same && x.contains(k) == y.contains(k);
    CHECK((sx == sy) == same);
    CHECK(parse_upset(sx.bits()) == sx);
    CHECK(parse_upset(sx.describe()) == sx);
  }
}

TEST_CASE("normality and reflexivity of the recession diamond") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    const UPSet x = random_upset(rng), y = random_upset(rng);
    CHECK(dia_recession(unite(x, y)) == unite(dia_recession(x), dia_recession(y)));
    CHECK(subset_of(x, dia_recession(x)));
    CHECK(box_recession(x) == complement(dia_recession(complement(x))));
  }
}

TEST_CASE("queries") {
  const UPSet s = UPSet::finite(std::vector<std::uint64_t>{1, 4, 9});
  CHECK(s.is_finite());
  CHECK(s.max_element() == 9u);
  CHECK(s.members() == std::vector<std::uint64_t>{1, 4, 9});
  const UPSet c = complement(s);
  CHECK(c.is_cofinite());
  CHECK(c.max_missing() == 9u);
  CHECK(c.min_missing() == 1u);
  CHECK_FALSE(UPSet::progression(0, 2).max_element());
}

TEST_CASE("describe and parse") {
  CHECK(UPSet::empty().describe() == "∅");
  CHECK(UPSet::omega().describe() == "ω");
  CHECK(UPSet::from(2).describe() == "{n ≥ 2}");
  CHECK(UPSet::interval(0, 6).describe() == "[0,6]");
  CHECK(UPSet::progression(2, 3).describe() == "{2,5,8,…}");
  CHECK(complement(UPSet::singleton(3)).describe() == "ω∖{3}");
  CHECK(parse_upset("00;100") == UPSet::progression(2, 3));
  CHECK(parse_upset("omega\\{0}") == UPSet::from(1));
  CHECK(parse_upset("{n>=2}") == UPSet::from(2));
  CHECK(parse_upset("{3,6,9,...}") == UPSet::progression(3, 3));
  CHECK(parse_upset("{}").is_empty());
  CHECK(parse_upset("[0,6]") == UPSet::interval(0, 6));
  CHECK_THROWS(parse_upset("{2,...}"));
  CHECK_THROWS(parse_upset("nonsense"));
  CHECK_THROWS_AS(parse_upset(";"), ParseError);
}

TEST_CASE("supremum in the veiled algebra") {
  const auto none = supremum_in_veiled({2, 3});
  CHECK_FALSE(none.supremum);
  CHECK(none.union_set == UPSet::progression(2, 3));
  const auto cands = candidate_upper_bounds(none, 20);
  CHECK(cands.size() == 20);
  const auto just = verify_justification(none, cands);
  CHECK(just.ok());
  CHECK(just.candidates == 20);
  for (const auto& ub : cands) {
    // Independently: the shrink is a strictly smaller cofinite upper bound.
    const UPSet smaller = none.shrink(ub);
    CHECK(smaller.is_cofinite());
    CHECK(subset_of(none.union_set, smaller));
    CHECK(subset_of(smaller, ub));
    CHECK(smaller != ub);
  }
  CHECK(supremum_in_veiled({0, 1}).supremum == UPSet::omega());
  CHECK(supremum_in_veiled({5, 1}).supremum == UPSet::from(5));
  CHECK_THROWS_AS(supremum_in_veiled({1, 0}), InvalidArgument);
}
