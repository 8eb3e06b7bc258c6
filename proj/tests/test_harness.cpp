#include <doctest.h>

#include <json.hpp>

#include "modalbao/harness.hpp"
#include "oracle.hpp"

using namespace modalbao;

TEST_CASE("sweep: small levels") {
  for (std::size_t k : {1u, 2u}) {
    const auto r = finite_sweep(k);
    CHECK(r.passed());
    CHECK(r.counterexamples.empty());
    CHECK(r.frames_examined() == (k == 1 ? 2u : 18u));
  }
  CHECK_THROWS(finite_sweep(4));
}

TEST_CASE("sweep: classification matches brute force on k <= 2") {
  const auto r = finite_sweep(2);
  REQUIRE(r.frames.size() == 18);
  for (const auto& fc : r.frames) {
    const FiniteFrame fr = FiniteFrame::from_relation_bits(fc.worlds, fc.index);
    CAPTURE(fc.spec);
    for (std::size_t i = 0; i < kSweepAxioms.size(); ++i) {
      CHECK(fc.validates[i] == oracle::valid_on_frame(fr, axiom_catalog().get(kSweepAxioms[i])));
    }
    CHECK(fc.reflexive == oracle::reflexive(fr));
    CHECK(fc.transitive == oracle::transitive(fr));
    // A frame refuting F must be one where the engine finds a witness.
    CHECK((fc.outcome == FiniteRunOutcome::NoWitness) == fc.validates[5]);
  }
}

TEST_CASE("sweep: deterministic apart from timing") {
  SweepConfig one;
  one.threads = 1;
  SweepConfig many;
  many.threads = 3;
  const auto a = sweep_to_json(finite_sweep(3, one), false);
  const auto b = sweep_to_json(finite_sweep(3, many), false);
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j.at("schema") == 1);
  CHECK_FALSE(j.contains("wall_time_ms"));
  CHECK(nlohmann::json::parse(sweep_to_json(finite_sweep(1))).contains("wall_time_ms"));
}

TEST_CASE("sweep: sampled 4-world frames") {
  SweepConfig cfg;
  cfg.sampled_k4_frames = 40;
  cfg.seed = 5;
  const auto r = finite_sweep(4, cfg);
  CHECK(r.passed());
  CHECK(r.levels.back().sampled);
  CHECK(r.levels.back().frames == 40);
}

TEST_CASE("classify_frame: chain refuting F") {
  const auto fc = classify_frame(parse_frame_spec("3;0-1,1-2"));
  CHECK_FALSE(fc.validates[5]);
  CHECK(fc.outcome != FiniteRunOutcome::NoWitness);
  CHECK_FALSE(fc.validates_logic());
}

TEST_CASE("recession suite") {
  RecessionSuiteOptions o;
  o.samples = 100;
  const auto r = recession_suite(o);
  CHECK(r.passed());
  REQUIRE(r.certificate);
  CHECK(r.certificate->verdict == RefutationVerdict::ARefuted);
  CHECK(suite_to_json(r, false) == suite_to_json(recession_suite(o), false));
  CHECK(certify_suite(*r.certificate).passed());

  o.witness = UPSet::omega();  // not a witness: F holds at it
  const auto bad = recession_suite(o);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("veiled suite") {
  VeiledSuiteOptions o;
  o.samples = 100;
  const auto r = veiled_suite(o);
  CHECK(r.passed());
  CHECK_FALSE(r.certificate);
  const auto text = suite_to_text(r, false);
  CHECK(text.find("no supremum for {2,5,8,…}") != std::string::npos);
  CHECK(text.find("wall time") == std::string::npos);
}
