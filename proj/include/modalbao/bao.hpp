#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "modalbao/formula.hpp"
#include "modalbao/kripke.hpp"
#include "modalbao/upset.hpp"

namespace modalbao {

class BaoContext;

using ContextId = std::uint64_t;

// Every algebra here is a concrete set algebra: elements are sets of worlds
// of a finite frame or ultimately periodic subsets of the naturals.
using ElementValue = std::variant<WorldSet, UPSet>;

// Handle to an element of one specific BaoContext. Only contexts create them.
class Element {
 public:
  ContextId owner() const noexcept { return owner_; }
  const ElementValue& value() const noexcept { return value_; }

  // Throws InvalidArgument if the element has the other representation.
  WorldSet worlds() const;
  const UPSet& upset() const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  friend class BaoContext;
  Element(ContextId owner, ElementValue value) : owner_(owner), value_(std::move(value)) {}

  ContextId owner_;
  ElementValue value_;
};

using Assignment = std::map<std::string, Element, std::less<>>;

// Families whose joins the library knows how to describe.
struct FiniteFamily {
  std::vector<Element> members;
};

// Members <>^d (box^m seed minus box^(m+1) seed) for m = start + n*step, n >= 0.
struct LayerFamily {
  Element seed;
  std::size_t start = 1;
  std::size_t step = 1;
  std::size_t diamonds = 0;
};

using Family = std::variant<FiniteFamily, LayerFamily, AffineSingletonFamily>;

std::string describe_family(const Family& family);

struct Capabilities {
  bool enumerate_elements = false;
  bool family_join = false;
  bool sample_element = false;
};

class BaoContext {
 public:
  virtual ~BaoContext() = default;
  BaoContext(const BaoContext&) = delete;
  BaoContext& operator=(const BaoContext&) = delete;

  ContextId id() const noexcept { return id_; }

  // Text accepted by make_context to rebuild an equivalent algebra.
  virtual std::string definition() const = 0;
  virtual Capabilities capabilities() const = 0;

  virtual Element zero() const = 0;
  virtual Element meet(const Element& x, const Element& y) const = 0;
  virtual Element complement(const Element& x) const = 0;
  virtual Element diamond(const Element& x) const = 0;

  Element top() const { return complement(zero()); }
  Element join(const Element& x, const Element& y) const;
  Element difference(const Element& x, const Element& y) const { return meet(x, complement(y)); }
  Element implies(const Element& x, const Element& y) const { return join(complement(x), y); }
  Element box(const Element& x) const { return complement(diamond(complement(x))); }
  Element box_power(const Element& x, std::size_t n) const;
  Element diamond_power(const Element& x, std::size_t n) const;
  bool leq(const Element& x, const Element& y) const { return is_zero(difference(x, y)); }
  bool is_zero(const Element& x) const;
  bool is_top(const Element& x) const;

  // Capability: finite algebras list all elements in a fixed order.
  virtual std::vector<Element> enumerate_elements() const;
  virtual std::uint64_t element_count() const;

  // Capability: least upper bound of a describable family. Throws
  // CapabilityError when the family has no join here (or the algebra cannot
  // compute it).
  virtual Element family_join(const Family& family) const;
  // Set-theoretic union of the members, when that union is an element.
  virtual std::optional<Element> family_union(const Family& family) const;

  // Capability: random element for sampled validity.
  virtual Element sample_element(std::mt19937_64& rng) const;

  virtual std::string render(const Element& x) const = 0;
  virtual Element parse_element(std::string_view text) const = 0;

  // Throws CrossContextError unless x belongs to this context.
  void check_owned(const Element& x) const;

 protected:
  BaoContext();

  Element make(ElementValue value) const { return Element(id_, std::move(value)); }
  [[noreturn]] void missing(const char* capability) const;

  // Exact union of a layer family in a finite algebra: box^step is iterated
  // from box^start seed until a state repeats.
  Element union_layers_by_cycle(const LayerFamily& family) const;

 private:
  ContextId id_;
};

using BaoHandle = std::shared_ptr<const BaoContext>;

// First `limit` members of a family, computed from the context operations.
std::vector<Element> family_members(const BaoContext& ctx, const Family& family, std::size_t limit);

// The family of diamonds of the members.
Family diamond_image(const BaoContext& ctx, const Family& family);

// Full powerset algebra of a finite frame with diamond m_R.
class PowersetContext final : public BaoContext {
 public:
  explicit PowersetContext(FiniteFrame frame);

  const FiniteFrame& frame() const noexcept { return frame_; }
  Element element(WorldSet worlds) const;

  std::string definition() const override;
  Capabilities capabilities() const override { return {true, true, true}; }
  Element zero() const override;
  Element meet(const Element& x, const Element& y) const override;
  Element complement(const Element& x) const override;
  Element diamond(const Element& x) const override;
  std::vector<Element> enumerate_elements() const override;
  std::uint64_t element_count() const override;
  Element family_join(const Family& family) const override;
  std::optional<Element> family_union(const Family& family) const override;
  Element sample_element(std::mt19937_64& rng) const override;
  std::string render(const Element& x) const override;
  Element parse_element(std::string_view text) const override;

 private:
  FiniteFrame frame_;
};

std::shared_ptr<const PowersetContext> powerset_bao_of_frame(const FiniteFrame& frame);

// Homomorphic evaluation of f. Throws UnassignedVariable or CrossContextError.
Element eval_in_bao(const BaoContext& ctx, const Assignment& assignment, const Formula& f);

struct BaoVerdict {
  bool valid = true;
  std::optional<Assignment> counterexample;
  std::uint64_t assignments_checked = 0;
};

struct ExhaustiveLimits {
  std::uint64_t max_assignments = std::uint64_t{1} << 22;
};

// Every assignment of enumerated elements to the variables of f (sorted; the
// first variable varies fastest). Throws CapabilityError or BoundExceeded.
BaoVerdict bao_validates_exhaustive(const BaoContext& ctx, const Formula& f,
                                    ExhaustiveLimits limits = {});

// Random assignments drawn with sample_element. Finding nothing is evidence,
// never a validity proof.
struct SampledVerdict {
  bool counterexample_found = false;
  std::optional<Assignment> counterexample;
  std::uint64_t samples_run = 0;
  std::uint64_t seed = 0;

  static constexpr const char* kNotAProof = "sampled: no counterexample found is not a proof of validity";
};

SampledVerdict bao_validates_sampled(const BaoContext& ctx, const Formula& f, std::uint64_t samples,
                                     std::uint64_t seed);

std::string render_assignment(const BaoContext& ctx, const Assignment& assignment);

// The three supremum facts for a pair of families (a_n), (b_n):
//   SumSup:   union a ⊆ union b  implies  join a <= join b
//   Disjoint: union a ∩ union b = 0  implies  join a ∧ join b = 0
//   Distr:    join <>a_n <= <>(join a_n)   (checked for both families)
enum class PreliminaryFact { SumSup, Disjoint, Distr };

const char* fact_name(PreliminaryFact fact);

struct FactCheck {
  std::size_t pair_index = 0;
  PreliminaryFact fact = PreliminaryFact::SumSup;
  bool premise_holds = true;  // false makes the check vacuous
  bool passed = false;
  std::string detail;
};

struct PreliminaryFactsReport {
  std::vector<FactCheck> checks;

  bool all_passed() const noexcept;
};

using FamilyPair = std::pair<Family, Family>;

PreliminaryFactsReport check_preliminary_facts(const BaoContext& ctx,
                                               std::span<const FamilyPair> families);

}  // namespace modalbao
