#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modalbao/formula.hpp"

namespace modalbao {

// Set of worlds as a bitmask; bit w is world w.
using WorldSet = std::uint64_t;
inline constexpr std::size_t kMaxWorlds = 64;

inline constexpr WorldSet all_worlds(std::size_t k) {
  return k >= 64 ? ~WorldSet{0} : (WorldSet{1} << k) - 1;
}

// Kripke frame on worlds 0..k-1. Row w of the relation is successors(w).
class FiniteFrame {
 public:
  FiniteFrame(std::size_t size, std::vector<WorldSet> successors);

  // Relation read from bit w*k+v of `relation_bits` (k <= 8).
  static FiniteFrame from_relation_bits(std::size_t k, std::uint64_t relation_bits);
  static FiniteFrame empty(std::size_t k);
  static FiniteFrame identity(std::size_t k);
  static FiniteFrame total(std::size_t k);

  std::size_t size() const noexcept { return successors_.size(); }
  WorldSet worlds() const noexcept { return all_worlds(size()); }
  WorldSet successors(std::size_t w) const { return successors_.at(w); }
  bool related(std::size_t w, std::size_t v) const { return (successors_.at(w) >> v) & 1U; }

  // Inverse of from_relation_bits (k <= 8).
  std::uint64_t relation_bits() const;

  // m_R(X) = {w | some successor of w lies in X}.
  WorldSet diamond(WorldSet x) const noexcept;
  WorldSet box(WorldSet x) const noexcept;

  // `k;edges` form accepted by parse_frame_spec.
  std::string spec() const;

  friend bool operator==(const FiniteFrame&, const FiniteFrame&) = default;

 private:
  std::vector<WorldSet> successors_;
};

// `k;edges` where edges is a comma-separated list of `w-v` pairs and the
// shorthands `refl` (all loops) and `total` (all pairs). `3;` is the empty
// relation on three worlds.
FiniteFrame parse_frame_spec(std::string_view spec);

using Valuation = std::map<std::string, WorldSet, std::less<>>;

// Flattened formula for repeated evaluation over many valuations. Variables
// are indexed in lexicographic order.
class CompiledFormula {
 public:
  explicit CompiledFormula(const Formula& f);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  WorldSet eval(const FiniteFrame& fr, std::span<const WorldSet> values) const;

 private:
  struct Op {
    Connective kind;
    std::uint32_t arg;  // variable index for Variable
  };
  std::vector<Op> program_;  // postorder
  std::vector<std::string> variables_;
  std::size_t max_stack_ = 0;
};

// Truth set of f. Throws UnassignedVariable, or InvalidArgument when an
// assigned set has worlds outside the frame.
WorldSet eval_model(const FiniteFrame& fr, const Valuation& v, const Formula& f);

struct KripkeCounterexample {
  Valuation valuation;
  std::size_t world;
};

struct FrameVerdict {
  bool valid = true;
  std::optional<KripkeCounterexample> counterexample;
  std::uint64_t valuations_checked = 0;
};

struct ValidityLimits {
  // Upper bound on variables * worlds.
  std::size_t max_valuation_bits = 24;
};

// Exhaustive over all 2^(vars*k) valuations. Valuation i assigns to the j-th
// variable (lexicographic) the set (i >> j*k) & mask, so the first variable
// varies fastest. The first failing valuation and its lowest refuting world
// are reported.
FrameVerdict frame_validates(const FiniteFrame& fr, const Formula& f, ValidityLimits limits = {});
FrameVerdict frame_validates(const FiniteFrame& fr, const CompiledFormula& f,
                             ValidityLimits limits = {});

struct EnumerationLimits {
  std::size_t max_worlds = 3;
};

// All 2^(k*k) frames on k worlds, indexed by relation bits.
class FrameEnumeration {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FiniteFrame;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(std::size_t k, std::uint64_t index) : k_(k), index_(index) {}

    FiniteFrame operator*() const { return FiniteFrame::from_relation_bits(k_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++index_;
      return copy;
    }
    friend bool operator==(const iterator&, const iterator&) = default;

   private:
    std::size_t k_ = 0;
    std::uint64_t index_ = 0;
  };

  explicit FrameEnumeration(std::size_t k) : k_(k) {}

  std::size_t worlds() const noexcept { return k_; }
  std::uint64_t count() const noexcept { return std::uint64_t{1} << (k_ * k_); }
  FiniteFrame at(std::uint64_t index) const { return FiniteFrame::from_relation_bits(k_, index); }
  iterator begin() const { return {k_, 0}; }
  iterator end() const { return {k_, count()}; }

 private:
  std::size_t k_;
};

// Throws BoundExceeded when k > limits.max_worlds; k must be >= 1.
FrameEnumeration enumerate_frames(std::size_t k, EnumerationLimits limits = {});

struct FrameProperties {
  bool reflexive = false;
  bool transitive = false;
};

FrameProperties frame_properties(const FiniteFrame& fr);

// Every reflexive transitive relation on k worlds (k <= 5).
std::vector<FiniteFrame> enumerate_preorders(std::size_t k);

}  // namespace modalbao
