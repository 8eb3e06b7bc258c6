#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "modalbao/bao.hpp"
#include "modalbao/formula.hpp"

namespace modalbao {

class RecessionContext;

// An element a with box a not below box^2 a, i.e. a refutation of F.
struct WitnessA {
  Element a;
  Element box_a;
  Element box2_a;
  // box^2 a <= box a. Guaranteed when C is valid; recorded, not assumed.
  bool box2_below_box = false;
};

std::optional<WitnessA> make_witness(const BaoContext& ctx, const Element& a);

// First candidate that refutes F, in the given order.
std::optional<WitnessA> find_f_witness(const BaoContext& ctx, std::span<const Element> candidates);

// Cofinite sets omega minus S for S within [0, universe), smallest S first,
// then lexicographic.
std::vector<Element> recession_witness_candidates(const RecessionContext& ctx, std::size_t universe = 4);

// b_n = box^n a minus box^(n+1) a for 1 <= n <= depth.
class BSequence {
 public:
  BSequence(Element a, std::vector<Element> powers, std::vector<Element> layers)
      : a_(std::move(a)), powers_(std::move(powers)), layers_(std::move(layers)) {}

  const Element& a() const noexcept { return a_; }
  std::size_t depth() const noexcept { return layers_.size(); }
  // b_n, 1-based.
  const Element& b(std::size_t n) const { return layers_.at(n - 1); }
  // box^n a for 0 <= n <= depth + 1.
  const Element& power(std::size_t n) const { return powers_.at(n); }
  const std::vector<Element>& layers() const noexcept { return layers_; }

 private:
  Element a_;
  std::vector<Element> powers_;
  std::vector<Element> layers_;
};

// Why the sequence stopped: b_{n+1} = 0 while b_n > 0. The E instance with
// p := box^(n-1) a is re-evaluated; it must fail for the step to be possible.
struct BSequenceFailure {
  std::size_t last_nonzero = 0;  // n
  Formula e_instance = Formula::top();
  bool e_instance_holds = false;
  std::string e_instance_value;
  std::string message;
};

struct ConstructionLimits {
  std::size_t max_depth = 4096;
};

std::variant<BSequence, BSequenceFailure> build_b_sequence(const BaoContext& ctx, const WitnessA& w,
                                                           std::size_t depth,
                                                           ConstructionLimits limits = {});

// Pairwise disjointness, with each link of b_j <= box^j a <= box^(i+1) a <= -b_i
// checked on its own.
struct DisjointnessReport {
  std::size_t pairs = 0;
  std::size_t meet_failures = 0;
  std::size_t chain_failures = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return meet_failures == 0 && chain_failures == 0; }
};

DisjointnessReport verify_disjointness(const BaoContext& ctx, const BSequence& bs);

struct CoverageOptions {
  // Side conditions are replayed for pairs (i, j) with i + 1 < j and
  // (i + j) % stride == 0; stride 1 replays all of them.
  std::size_t side_condition_stride = 1;
};

struct CoverageReport {
  std::size_t pairs = 0;               // b_i <= <>b_j for i < j
  std::size_t pair_failures = 0;
  std::size_t e_instances = 0;         // consecutive indices, via E
  std::size_t e_failures = 0;
  std::size_t side_conditions = 0;     // D-step premises and D instance
  std::size_t side_failures = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return pair_failures == 0 && e_failures == 0 && side_failures == 0; }
};

CoverageReport verify_coverage(const BaoContext& ctx, const BSequence& bs, CoverageOptions options = {});

struct RefutingAssignment {
  Element p;
  Element q1;
  Element q2;
  Element q3;
  Element r;
  bool union_is_r = false;         // q1 v q2 v q3 = r
  bool pairwise_disjoint = false;  // q_i ^ q_j = 0
  bool layers_below = false;       // each built b_n lies below its q_i and r

  // The variables of A: p, q1, q2, r.
  Assignment for_axiom() const;
};

// p := a, q_i := join of b_{3n+i} (n >= 0), r := join of b_n (n >= 1).
// Throws CapabilityError when the context cannot join these families.
RefutingAssignment assemble_assignment(const BaoContext& ctx, const WitnessA& w, const BSequence& bs);

struct CertificateCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

enum class RefutationVerdict { ARefuted, ConstructionBroken };

const char* verdict_name(RefutationVerdict v);

// Self-contained record of a completed run. Element values are stored in the
// context's textual rendering so that a fresh process can re-parse them.
struct RefutationCertificate {
  std::string context;
  std::string a;
  std::size_t depth = 0;
  std::vector<std::string> b;
  std::string p, q1, q2, q3, r;
  std::string antecedent;
  std::string consequent;
  std::vector<CertificateCheck> checks;
  RefutationVerdict verdict = RefutationVerdict::ConstructionBroken;
  std::string failed_step;
};

RefutationCertificate refute_a(const BaoContext& ctx, const WitnessA& w, const BSequence& bs,
                               const RefutingAssignment& assignment);

// Structured-text form (JSON, schema 1).
std::string certificate_to_text(const RefutationCertificate& cert);
// Throws ParseError on malformed input.
RefutationCertificate certificate_from_text(std::string_view text);

struct RecheckReport {
  std::vector<CertificateCheck> checks;

  bool passed() const noexcept;
};

// Rebuilds the context from its definition and recomputes every value the
// certificate asserts, comparing against the stored renderings.
RecheckReport recheck_certificate(const RefutationCertificate& cert);

}  // namespace modalbao
