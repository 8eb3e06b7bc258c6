#include "modalbao/harness.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "modalbao/bao.hpp"
#include "modalbao/error.hpp"
#include "modalbao/recession.hpp"

namespace modalbao {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

const std::vector<CompiledFormula>& compiled_sweep_axioms() {
  static const std::vector<CompiledFormula> compiled = [] {
    std::vector<CompiledFormula> out;
    for (const char* name : kSweepAxioms) out.emplace_back(axiom_catalog().get(name));
    return out;
  }();
  return compiled;
}

}  // namespace

const char* outcome_name(FiniteRunOutcome o) {
  switch (o) {
    case FiniteRunOutcome::NoWitness: return "no-witness";
    case FiniteRunOutcome::ZeroLayer: return "zero-layer";
    case FiniteRunOutcome::LayersRepeat: return "layers-repeat";
  }
  return "?";
}

bool FrameClassification::validates_logic() const noexcept {
  return validates[0] && validates[1] && validates[2] && validates[3] && validates[4];
}

bool FrameClassification::validates_bcde() const noexcept {
  return validates[1] && validates[2] && validates[3] && validates[4];
}

FrameClassification classify_frame(const FiniteFrame& frame) {
  FrameClassification c;
  c.worlds = frame.size();
  c.index = frame.relation_bits();
  c.spec = frame.spec();
  const auto& axioms = compiled_sweep_axioms();
  for (std::size_t i = 0; i < axioms.size(); ++i) c.validates[i] = frame_validates(frame, axioms[i]).valid;
  const auto props = frame_properties(frame);
  c.reflexive = props.reflexive;
  c.transitive = props.transitive;

  // Run the refutation engine on the powerset algebra. Non-witnesses are
  // rejected at the precondition, so F-valid frames end with NoWitness.
  const auto ctx = powerset_bao_of_frame(frame);
  const auto elements = ctx->enumerate_elements();
  const auto witness = find_f_witness(*ctx, elements);
  if (!witness) {
    c.outcome = FiniteRunOutcome::NoWitness;
    return c;
  }
  const std::size_t depth = elements.size() + 1;
  auto seq = build_b_sequence(*ctx, *witness, depth);
  if (auto* failure = std::get_if<BSequenceFailure>(&seq)) {
    c.outcome = FiniteRunOutcome::ZeroLayer;
    c.e_instance_refuted = !failure->e_instance_holds;
  } else {
    // More nonzero layers than worlds cannot be pairwise disjoint.
    c.outcome = FiniteRunOutcome::LayersRepeat;
  }
  return c;
}

std::uint64_t SweepReport::frames_examined() const noexcept {
  std::uint64_t n = 0;
  for (const auto& l : levels) n += l.frames;
  return n;
}

bool SweepReport::passed() const noexcept {
  return counterexamples.empty() && preorder_failures.empty() && bcde_witnesses.empty() &&
         unexplained_stops.empty();
}

SweepReport finite_sweep(std::size_t kmax, SweepConfig config) {
  if (kmax == 0) throw InvalidArgument("kmax must be at least 1");
  if (kmax > 4) throw BoundExceeded("the sweep supports kmax <= 4");
  if (kmax == 4 && !config.exhaustive_k4 && config.sampled_k4_frames == 0) {
    throw BoundExceeded("kmax = 4 needs the exhaustive-k4 flag or a sampled frame count");
  }
  const auto start = Clock::now();
  SweepReport report;
  report.kmax = kmax;

  std::mt19937_64 rng(config.seed);
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::uint64_t> indices;
    SweepLevel level;
    level.worlds = k;
    if (k == 4 && !config.exhaustive_k4) {
      level.sampled = true;
      for (std::uint64_t i = 0; i < config.sampled_k4_frames; ++i) indices.push_back(rng() & 0xFFFF);
    } else {
      const auto frames = enumerate_frames(k, {k <= 3 ? 3u : 4u});
      for (std::uint64_t i = 0; i < frames.count(); ++i) indices.push_back(i);
    }

    std::vector<FrameClassification> results(indices.size());
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, indices.size())));
    auto work = [&](unsigned t) {
      for (std::size_t i = t; i < indices.size(); i += threads) {
        results[i] = classify_frame(FiniteFrame::from_relation_bits(k, indices[i]));
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }

    // Merge in frame-index order.
    for (auto& c : results) {
      ++level.frames;
      if (c.validates_logic()) ++level.validating_logic;
      if (c.validates[5]) ++level.validating_f;
      if (c.reflexive && c.transitive) {
        ++level.preorders;
        if (!std::all_of(c.validates.begin(), c.validates.end(), [](bool b) { return b; })) {
          report.preorder_failures.push_back(c.spec);
        }
      }
      if (c.validates_logic() && !c.validates[5]) report.counterexamples.push_back(c.spec);
      if (c.validates_bcde() && c.outcome != FiniteRunOutcome::NoWitness) {
        report.bcde_witnesses.push_back(c.spec);
      }
      if ((c.outcome == FiniteRunOutcome::NoWitness) != c.validates[5]) {
        report.unexplained_stops.push_back(c.spec + " (frame and algebra disagree on F)");
      }
      if (c.outcome == FiniteRunOutcome::ZeroLayer && !c.e_instance_refuted) {
        report.unexplained_stops.push_back(c.spec + " (zero layer but E instance holds)");
      }
      report.frames.push_back(std::move(c));
    }
    report.levels.push_back(level);
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

// ---------------------------------------------------------------------------

bool SuiteReport::passed() const noexcept {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

SuiteCheck sampled_check(const BaoContext& ctx, const std::string& name, std::uint64_t samples,
                         std::uint64_t seed) {
  const auto verdict = bao_validates_sampled(ctx, axiom_catalog().get(name), samples, seed);
  SuiteCheck c{name + " sampled over " + std::to_string(samples) + " assignments",
               "no assignment refutes " + name, !verdict.counterexample_found, {}};
  c.data.emplace_back("samples_run", std::to_string(verdict.samples_run));
  c.data.emplace_back("seed", std::to_string(verdict.seed));
  c.data.emplace_back("evidence", SampledVerdict::kNotAProof);
  if (verdict.counterexample) {
    c.data.emplace_back("counterexample", render_assignment(ctx, *verdict.counterexample));
  }
  return c;
}

}  // namespace

SuiteReport recession_suite(const RecessionSuiteOptions& options) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "recession";
  const auto ctx = recession_algebra(RecessionFlavor::Full);
  auto finish = [&]() -> SuiteReport {
    report.wall_ms = elapsed_ms(start);
    return report;
  };

  const char* axioms[] = {"B", "C", "D", "E"};
  for (std::size_t i = 0; i < 4; ++i) {
    report.checks.push_back(sampled_check(*ctx, axioms[i], options.samples, options.seed + i));
  }

  std::vector<Element> candidates;
  if (options.witness) {
    candidates.push_back(ctx->element(*options.witness));
  } else {
    candidates = recession_witness_candidates(*ctx);
  }
  const auto witness = find_f_witness(*ctx, candidates);
  {
    SuiteCheck c{"F witness found", "some a has []a not below [][]a", witness.has_value(), {}};
    if (witness) {
      c.data.emplace_back("a", ctx->render(witness->a));
      c.data.emplace_back("[]a", ctx->render(witness->box_a));
      c.data.emplace_back("[][]a", ctx->render(witness->box2_a));
      c.data.emplace_back("[]a \\ [][]a", ctx->render(ctx->difference(witness->box_a, witness->box2_a)));
      c.data.emplace_back("[][]a <= []a", yes_no(witness->box2_below_box));
    }
    report.checks.push_back(std::move(c));
  }
  if (!witness) return finish();

  auto seq = build_b_sequence(*ctx, *witness, options.depth);
  if (auto* failure = std::get_if<BSequenceFailure>(&seq)) {
    report.checks.push_back({"layers b_n nonzero up to depth " + std::to_string(options.depth),
                             "E forces every b_n > 0", false, {{"failure", failure->message}}});
    return finish();
  }
  const auto& bs = std::get<BSequence>(seq);
  {
    SuiteCheck c{"layers b_n nonzero up to depth " + std::to_string(options.depth),
                 "E forces every b_n > 0", true, {}};
    for (std::size_t n = 1; n <= std::min<std::size_t>(3, bs.depth()); ++n) {
      c.data.emplace_back("b_" + std::to_string(n), ctx->render(bs.b(n)));
    }
    c.data.emplace_back("b_" + std::to_string(bs.depth()), ctx->render(bs.b(bs.depth())));
    report.checks.push_back(std::move(c));
  }
  {
    const auto d = verify_disjointness(*ctx, bs);
    SuiteCheck c{"layers pairwise disjoint", "b_j <= []^j a <= []^(i+1) a <= -b_i", d.passed(), {}};
    c.data.emplace_back("pairs", std::to_string(d.pairs));
    c.data.emplace_back("meet_failures", std::to_string(d.meet_failures));
    c.data.emplace_back("chain_failures", std::to_string(d.chain_failures));
    report.checks.push_back(std::move(c));
  }
  {
    const auto cov = verify_coverage(*ctx, bs);
    SuiteCheck c{"coverage b_i <= <>b_j for i < j", "D and E give b_i <= <>b_j", cov.passed(), {}};
    c.data.emplace_back("pairs", std::to_string(cov.pairs));
    c.data.emplace_back("e_instances", std::to_string(cov.e_instances));
    c.data.emplace_back("side_conditions", std::to_string(cov.side_conditions));
    c.data.emplace_back("failures", std::to_string(cov.pair_failures + cov.e_failures + cov.side_failures));
    report.checks.push_back(std::move(c));
  }

  std::optional<RefutingAssignment> assignment;
  try {
    assignment = assemble_assignment(*ctx, *witness, bs);
  } catch (const CapabilityError& e) {
    report.checks.push_back({"assignment assembled from joins", "complete algebra joins the layers",
                             false, {{"error", e.what()}}});
    return finish();
  }
  {
    SuiteCheck c{"assignment assembled from joins", "complete algebra joins the layers",
                 assignment->union_is_r && assignment->pairwise_disjoint && assignment->layers_below,
                 {}};
    c.data.emplace_back("p", ctx->render(assignment->p));
    c.data.emplace_back("q1", ctx->render(assignment->q1));
    c.data.emplace_back("q2", ctx->render(assignment->q2));
    c.data.emplace_back("q3", ctx->render(assignment->q3));
    c.data.emplace_back("r", ctx->render(assignment->r));
    c.data.emplace_back("q1 | q2 | q3 = r", yes_no(assignment->union_is_r));
    c.data.emplace_back("q_i disjoint", yes_no(assignment->pairwise_disjoint));
    report.checks.push_back(std::move(c));
  }
  {
    auto layers = [&](std::size_t s, std::size_t step) { return Family{LayerFamily{witness->a, s, step, 0}}; };
    const std::vector<FamilyPair> pairs{
        {layers(1, 3), layers(2, 3)}, {layers(1, 3), layers(3, 3)}, {layers(2, 3), layers(3, 3)},
        {layers(1, 3), layers(1, 1)}, {layers(2, 3), layers(1, 1)}, {layers(3, 3), layers(1, 1)},
    };
    const auto facts = check_preliminary_facts(*ctx, pairs);
    SuiteCheck c{"supremum facts on the construction families",
                 "SumSup, Disjoint and Distr hold for joins of layers", facts.all_passed(), {}};
    std::size_t premises = 0;
    for (const auto& f : facts.checks) premises += f.premise_holds ? 1 : 0;
    c.data.emplace_back("checks", std::to_string(facts.checks.size()));
    c.data.emplace_back("non_vacuous", std::to_string(premises));
    c.data.emplace_back("join <>b_n", ctx->render(ctx->family_join(LayerFamily{witness->a, 1, 1, 1})));
    c.data.emplace_back("<>r", ctx->render(ctx->diamond(assignment->r)));
    report.checks.push_back(std::move(c));
  }

  auto cert = refute_a(*ctx, *witness, bs, *assignment);
  {
    SuiteCheck c{"A refuted by the assembled assignment", "antecedent = b_1 > 0 and consequent = 0",
                 cert.verdict == RefutationVerdict::ARefuted, {}};
    c.data.emplace_back("antecedent", cert.antecedent);
    c.data.emplace_back("consequent", cert.consequent);
    c.data.emplace_back("verdict", verdict_name(cert.verdict));
    if (!cert.failed_step.empty()) c.data.emplace_back("failed_step", cert.failed_step);
    report.checks.push_back(std::move(c));
  }
  {
    const auto recheck = recheck_certificate(certificate_from_text(certificate_to_text(cert)));
    SuiteCheck c{"certificate re-checked from its text form", "every stored value re-derives",
                 recheck.passed(), {{"checks", std::to_string(recheck.checks.size())}}};
    report.checks.push_back(std::move(c));
  }
  report.certificate = std::move(cert);
  return finish();
}

SuiteReport veiled_suite(const VeiledSuiteOptions& options) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "veiled";
  const auto ctx = recession_algebra(RecessionFlavor::Veiled);
  const UPSet a_set = complement(UPSet::singleton(0));

  std::optional<Element> a;
  try {
    a = ctx->element(a_set);
    report.checks.push_back({"a = ω∖{0} is admissible", "cofinite sets are admissible", true,
                             {{"a", ctx->render(*a)}}});
  } catch (const NotAdmissible& e) {
    report.checks.push_back({"a = ω∖{0} is admissible", "cofinite sets are admissible", false,
                             {{"error", e.what()}}});
  }
  if (a) {
    const Element layer = eval_in_bao(*ctx, {{"p", *a}}, parse("[]p & ~[][]p"));
    const Element f_value = eval_in_bao(*ctx, {{"p", *a}}, axiom_catalog().get("F"));
    report.checks.push_back({"~F satisfiable", "[]a \\ [][]a is nonzero",
                             !ctx->is_zero(layer) && !ctx->is_top(f_value),
                             {{"[]a \\ [][]a", ctx->render(layer)}, {"F under p = a", ctx->render(f_value)}}});
  }
  {
    const UPSet evens = UPSet::progression(0, 2);
    bool rejected = false;
    try {
      (void)ctx->element(evens);
    } catch (const NotAdmissible&) {
      rejected = true;
    }
    report.checks.push_back({"non-admissible element rejected", "only finite and cofinite sets",
                             rejected, {{"set", evens.describe()}}});
  }

  for (std::uint64_t s : {2, 3, 4}) {
    const AffineSingletonFamily family{s, 3};
    const auto decision = supremum_in_veiled(family);
    auto candidates = candidate_upper_bounds(decision, options.justification_candidates);
    // A descending chain from omega, each link produced by the justification.
    if (!decision.supremum) {
      UPSet bound = UPSet::omega();
      for (std::size_t i = 0; i < options.justification_candidates; ++i) {
        candidates.push_back(bound);
        bound = decision.shrink(bound);
      }
    }
    const auto check = verify_justification(decision, candidates);
    SuiteCheck c{"no supremum for " + decision.union_set.describe(),
                 "every cofinite upper bound shrinks to a smaller one",
                 !decision.supremum && check.ok() && check.candidates >= options.justification_candidates,
                 {}};
    c.data.emplace_back("family", "{" + std::to_string(s) + " + 3n}");
    c.data.emplace_back("union", decision.union_set.bits());
    c.data.emplace_back("candidates_verified", std::to_string(check.passed) + "/" + std::to_string(check.candidates));
    if (!check.failures.empty()) c.data.emplace_back("first_failure", check.failures.front());
    report.checks.push_back(std::move(c));
  }

  const char* axioms[] = {"A", "B", "C", "D", "E"};
  for (std::size_t i = 0; i < 5; ++i) {
    report.checks.push_back(sampled_check(*ctx, axioms[i], options.samples, options.seed + i));
  }

  if (a) {
    // The refutation engine runs until it needs an infinite join.
    SuiteCheck c{"refutation engine stops at the layer joins", "q_1 has no supremum here", false, {}};
    if (auto w = make_witness(*ctx, *a)) {
      auto seq = build_b_sequence(*ctx, *w, 8);
      if (auto* bs = std::get_if<BSequence>(&seq)) {
        try {
          (void)assemble_assignment(*ctx, *w, *bs);
          c.data.emplace_back("error", "joins unexpectedly available");
        } catch (const CapabilityError& e) {
          c.passed = true;
          c.data.emplace_back("error", e.what());
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  report.wall_ms = elapsed_ms(start);
  return report;
}

SuiteReport certify_suite(const RefutationCertificate& cert) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "certify";
  const auto recheck = recheck_certificate(cert);
  for (const auto& c : recheck.checks) {
    report.checks.push_back({c.name, "recomputed from " + cert.context, c.passed,
                             {{"expected", c.expected}, {"actual", c.actual}}});
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

// ---------------------------------------------------------------------------

std::string sweep_to_json(const SweepReport& report, bool with_timing) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["report"] = "sweep";
  j["kmax"] = report.kmax;
  j["frames_examined"] = report.frames_examined();
  j["levels"] = nlohmann::ordered_json::array();
  for (const auto& l : report.levels) {
    j["levels"].push_back({{"worlds", l.worlds},
                           {"frames", l.frames},
                           {"sampled", l.sampled},
                           {"validating_A_to_E", l.validating_logic},
                           {"validating_F", l.validating_f},
                           {"reflexive_transitive", l.preorders}});
  }
  j["counterexamples"] = report.counterexamples;
  j["preorder_failures"] = report.preorder_failures;
  j["bcde_witnesses"] = report.bcde_witnesses;
  j["unexplained_stops"] = report.unexplained_stops;
  j["frames"] = nlohmann::ordered_json::array();
  for (const auto& c : report.frames) {
    nlohmann::ordered_json v;
    for (std::size_t i = 0; i < kSweepAxioms.size(); ++i) v[kSweepAxioms[i]] = c.validates[i];
    j["frames"].push_back({{"worlds", c.worlds},
                           {"index", c.index},
                           {"frame", c.spec},
                           {"validates", v},
                           {"reflexive", c.reflexive},
                           {"transitive", c.transitive},
                           {"engine", outcome_name(c.outcome)}});
  }
  j["passed"] = report.passed();
  if (with_timing) j["wall_time_ms"] = report.wall_ms;
  return j.dump(2) + "\n";
}

std::string sweep_to_text(const SweepReport& report, bool with_timing) {
  std::ostringstream out;
  out << "sweep: frames up to " << report.kmax << " worlds\n";
  for (const auto& l : report.levels) {
    out << "  k=" << l.worlds << ": " << l.frames << " frames" << (l.sampled ? " (sampled)" : "")
        << ", " << l.validating_logic << " validate A-E, " << l.validating_f << " validate F, "
        << l.preorders << " reflexive-transitive\n";
  }
  auto list = [&](const char* label, const std::vector<std::string>& xs) {
    out << "  " << label << ": " << xs.size() << "\n";
    for (const auto& x : xs) out << "    " << x << "\n";
  };
  list("frames validating A-E but not F", report.counterexamples);
  list("reflexive-transitive frames failing A-F", report.preorder_failures);
  list("frames validating B-E with an F witness", report.bcde_witnesses);
  list("unexplained engine stops", report.unexplained_stops);
  if (with_timing) out << "  wall time: " << static_cast<long long>(report.wall_ms) << " ms\n";
  out << (report.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string suite_to_json(const SuiteReport& report, bool with_timing) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["report"] = "suite";
  j["suite"] = report.suite;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.data) data[k] = v;
    j["checks"].push_back({{"description", c.description},
                           {"claim", c.claim},
                           {"verdict", c.passed ? "pass" : "fail"},
                           {"data", data}});
  }
  j["summary"] = report.passed() ? "pass" : "fail";
  if (with_timing) j["wall_time_ms"] = report.wall_ms;
  return j.dump(2) + "\n";
}

std::string suite_to_text(const SuiteReport& report, bool with_timing) {
  std::ostringstream out;
  out << report.suite << " suite\n";
  for (const auto& c : report.checks) {
    out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.description << "\n";
    for (const auto& [k, v] : c.data) out << "         " << k << ": " << v << "\n";
  }
  if (with_timing) out << "  wall time: " << static_cast<long long>(report.wall_ms) << " ms\n";
  out << (report.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace modalbao
