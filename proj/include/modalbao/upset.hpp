#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modalbao {

inline constexpr std::size_t kDefaultLcmCap = std::size_t{1} << 16;

// Ultimately periodic subset of the naturals: n is a member iff
//   n < |prefix| and prefix[n], or
//   n >= |prefix| and period[(n - |prefix|) mod |period|].
// Always held in canonical form: the period is primitive and the prefix
// cannot be shortened by rotating its last bit into the period. Two UPSets
// are equal as sets iff their canonical forms are identical.
class UPSet {
 public:
  // The empty set.
  UPSet();

  // Throws InvalidArgument on an empty period.
  static UPSet normalize(std::vector<bool> prefix, std::vector<bool> period);

  static UPSet empty();
  static UPSet omega();
  static UPSet singleton(std::uint64_t n);
  static UPSet finite(std::span<const std::uint64_t> members);
  // {n : n >= lo}
  static UPSet from(std::uint64_t lo);
  // [lo, hi]; empty when lo > hi.
  static UPSet interval(std::uint64_t lo, std::uint64_t hi);
  // {start + n*step : n >= 0}, step >= 1.
  static UPSet progression(std::uint64_t start, std::uint64_t step);

  bool contains(std::uint64_t n) const noexcept;

  bool is_empty() const noexcept;
  bool is_omega() const noexcept;
  bool is_finite() const noexcept;
  bool is_cofinite() const noexcept;

  // Largest member of a finite nonempty set.
  std::optional<std::uint64_t> max_element() const;
  // Largest non-member of a cofinite set other than omega.
  std::optional<std::uint64_t> max_missing() const;
  // Smallest non-member, if any.
  std::optional<std::uint64_t> min_missing() const;

  // Members of a finite set, ascending. Throws InvalidArgument if infinite.
  std::vector<std::uint64_t> members() const;

  const std::vector<bool>& prefix() const noexcept { return prefix_; }
  const std::vector<bool>& period() const noexcept { return period_; }

  // `prefix;period` bitstrings, e.g. `00;100` for {2,5,8,...}.
  std::string bits() const;
  // Readable form, e.g. `{n ≥ 2}`, `{2,5,8,…}`, `[0,6]`, `ω∖{3,5}`.
  std::string describe() const;

  friend bool operator==(const UPSet&, const UPSet&) = default;

 private:
  UPSet(std::vector<bool> prefix, std::vector<bool> period)
      : prefix_(std::move(prefix)), period_(std::move(period)) {}

  std::vector<bool> prefix_;
  std::vector<bool> period_;
};

// Boolean operations align both operands to prefix max(l1, l2) and period
// lcm(p1, p2); BoundExceeded is thrown when the lcm exceeds `lcm_cap`.
UPSet unite(const UPSet& x, const UPSet& y, std::size_t lcm_cap = kDefaultLcmCap);
UPSet intersect(const UPSet& x, const UPSet& y, std::size_t lcm_cap = kDefaultLcmCap);
UPSet complement(const UPSet& x);
UPSet difference(const UPSet& x, const UPSet& y, std::size_t lcm_cap = kDefaultLcmCap);
bool subset_of(const UPSet& x, const UPSet& y, std::size_t lcm_cap = kDefaultLcmCap);

// Diamond of the recession relation (w R v iff v >= w - 1):
// empty -> empty, finite with max m -> [0, m+1], infinite -> omega.
UPSet dia_recession(const UPSet& x);
// Dual: not cofinite -> empty, omega -> omega, cofinite with largest gap m -> {n >= m+2}.
UPSet box_recession(const UPSet& x);

// Admissible in the veiled recession frame: finite or cofinite.
bool veiled_admissible(const UPSet& x) noexcept;

// Accepts either the bitstring form or the readable form (ASCII spellings
// `{}`, `omega`, `>=`, `\`, `...`, `|` are accepted too).
UPSet parse_upset(std::string_view text);

// The family of singletons {start + n*step} for n >= 0.
struct AffineSingletonFamily {
  std::uint64_t start = 0;
  std::uint64_t step = 1;

  friend bool operator==(const AffineSingletonFamily&, const AffineSingletonFamily&) = default;
};

// Union of the family; throws InvalidArgument when step is 0.
UPSet affine_union(const AffineSingletonFamily& family);

// Given an infinite, co-infinite set `lower` and a cofinite `upper_bound`
// containing it, returns a strictly smaller cofinite set still containing
// `lower`: the bound minus the first gap of `lower` past the bound's last gap.
// Throws InvalidArgument when the inputs do not have that shape.
UPSet shrink_upper_bound(const UPSet& lower, const UPSet& upper_bound);

// Outcome of asking for the supremum of an affine singleton family among the
// finite and cofinite sets.
struct SupremumDecision {
  AffineSingletonFamily family;
  UPSet union_set;
  // Set iff the union is itself admissible.
  std::optional<UPSet> supremum;

  // Executable witness that no supremum exists: maps any cofinite upper bound
  // to a strictly smaller one. Only valid when supremum is empty.
  UPSet shrink(const UPSet& upper_bound) const { return shrink_upper_bound(union_set, upper_bound); }
};

SupremumDecision supremum_in_veiled(const AffineSingletonFamily& family);

// Cofinite upper bounds union ∪ {n >= c} for c = 0, 1, ..., count-1.
std::vector<UPSet> candidate_upper_bounds(const SupremumDecision& decision, std::size_t count);

struct JustificationCheck {
  std::size_t candidates = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return candidates > 0 && passed == candidates; }
};

// For every candidate: it is a cofinite upper bound, and shrink() returns a
// cofinite upper bound strictly inside it.
JustificationCheck verify_justification(const SupremumDecision& decision,
                                        std::span<const UPSet> candidates);

struct RandomShape {
  std::size_t max_prefix = 16;
  std::size_t max_period = 12;
};

// Uniform prefix and period lengths within the shape, uniform bits.
UPSet random_upset(std::mt19937_64& rng, RandomShape shape = {});

// Finite or cofinite set built from members below `span_limit`.
UPSet random_admissible(std::mt19937_64& rng, std::uint64_t span_limit = 24);

}  // namespace modalbao
