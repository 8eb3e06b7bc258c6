#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modalbao/construction.hpp"
#include "modalbao/kripke.hpp"
#include "modalbao/upset.hpp"

namespace modalbao {

// Order of the per-frame verdicts.
inline constexpr std::array<const char*, 6> kSweepAxioms{"A", "B", "C", "D", "E", "F"};

struct SweepConfig {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Allows kmax = 4 exhaustively (65,536 frames; slow).
  bool exhaustive_k4 = false;
  // With kmax = 4 and no exhaustive flag: number of random relations on 4 worlds.
  std::uint64_t sampled_k4_frames = 0;
  std::uint64_t seed = 0;
};

// What the refutation engine does on a finite frame.
enum class FiniteRunOutcome {
  NoWitness,        // F valid: every candidate rejected at the precondition
  ZeroLayer,        // some b_{n+1} = 0 after b_n > 0
  LayersRepeat,     // layers stay nonzero but are not pairwise disjoint
};

const char* outcome_name(FiniteRunOutcome o);

struct FrameClassification {
  std::size_t worlds = 0;
  std::uint64_t index = 0;  // relation bits
  std::string spec;
  std::array<bool, 6> validates{};  // kSweepAxioms order
  bool reflexive = false;
  bool transitive = false;
  FiniteRunOutcome outcome = FiniteRunOutcome::NoWitness;
  // For ZeroLayer: whether the re-checked E instance failed (it must).
  bool e_instance_refuted = false;

  bool validates_logic() const noexcept;  // A..E
  bool validates_bcde() const noexcept;
};

struct SweepLevel {
  std::size_t worlds = 0;
  std::uint64_t frames = 0;
  std::uint64_t validating_logic = 0;
  std::uint64_t validating_f = 0;
  std::uint64_t preorders = 0;
  bool sampled = false;
};

struct SweepReport {
  std::size_t kmax = 0;
  std::vector<SweepLevel> levels;
  std::vector<FrameClassification> frames;
  // Frames validating A..E but refuting F. Expected: none.
  std::vector<std::string> counterexamples;
  // Reflexive transitive frames failing some of A..F. Expected: none.
  std::vector<std::string> preorder_failures;
  // Frames validating B..E where a refutation of F still exists. On finite
  // algebras the disjoint nonzero layers would have to run forever: none.
  std::vector<std::string> bcde_witnesses;
  // Frames refuting F where the zero layer was reached but E survived.
  std::vector<std::string> unexplained_stops;
  double wall_ms = 0;

  std::uint64_t frames_examined() const noexcept;
  bool passed() const noexcept;
};

// Throws BoundExceeded for kmax > 4, or kmax = 4 without either k4 option.
SweepReport finite_sweep(std::size_t kmax, SweepConfig config = {});

// Classification of a single frame (used by the sweep).
FrameClassification classify_frame(const FiniteFrame& frame);

struct SuiteCheck {
  std::string description;
  std::string claim;
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> data;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  std::optional<RefutationCertificate> certificate;
  double wall_ms = 0;

  bool passed() const noexcept;
};

struct RecessionSuiteOptions {
  std::size_t depth = 64;
  std::uint64_t seed = 0;
  std::uint64_t samples = 500;
  // Overrides the candidate search for the F witness.
  std::optional<UPSet> witness;
};

SuiteReport recession_suite(const RecessionSuiteOptions& options);

struct VeiledSuiteOptions {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t justification_candidates = 20;
};

SuiteReport veiled_suite(const VeiledSuiteOptions& options);

SuiteReport certify_suite(const RefutationCertificate& cert);

// Report rendering. JSON carries `schema: 1`; timing fields are omitted when
// `with_timing` is false so reports can be compared byte for byte.
std::string sweep_to_json(const SweepReport& report, bool with_timing = true);
std::string sweep_to_text(const SweepReport& report, bool with_timing = true);
std::string suite_to_json(const SuiteReport& report, bool with_timing = true);
std::string suite_to_text(const SuiteReport& report, bool with_timing = true);

}  // namespace modalbao
