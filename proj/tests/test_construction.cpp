#include <doctest.h>

#include <json.hpp>

#include "modalbao/construction.hpp"
#include "modalbao/error.hpp"
#include "modalbao/recession.hpp"
#include "oracle.hpp"

using namespace modalbao;

namespace {

struct Run {
  std::shared_ptr<const RecessionContext> ctx = recession_algebra(RecessionFlavor::Full);
  WitnessA w = *make_witness(*ctx, ctx->element(complement(UPSet::singleton(0))));
};

}  // namespace

TEST_CASE("find_f_witness") {
  Run run;
  const auto cands = recession_witness_candidates(*run.ctx);
  REQUIRE(cands.size() >= 2);
  CHECK(cands[0].upset().is_omega());
  const auto w = find_f_witness(*run.ctx, cands);
  REQUIRE(w);
  CHECK(w->a.upset() == complement(UPSet::singleton(0)));
  CHECK(w->box_a.upset() == UPSet::from(2));
  CHECK(w->box2_a.upset() == UPSet::from(3));
  CHECK(w->box2_below_box);

  const auto s4 = powerset_bao_of_frame(parse_frame_spec("3;refl"));
  CHECK_FALSE(find_f_witness(*s4, s4->enumerate_elements()));
  const auto point = powerset_bao_of_frame(FiniteFrame::empty(1));
  CHECK_FALSE(find_f_witness(*point, point->enumerate_elements()));
}

TEST_CASE("b sequence: b_n = {n+1} against the windowed oracle") {
  Run run;
  auto built = build_b_sequence(*run.ctx, run.w, 200);
  REQUIRE(std::holds_alternative<BSequence>(built));
  const auto& bs = std::get<BSequence>(built);
  CHECK(bs.depth() == 200);
  for (std::size_t n = 1; n <= 200; ++n) CHECK(bs.b(n).upset() == UPSet::singleton(n + 1));
  for (std::size_t n : {1u, 2u, 7u, 30u, 64u}) {
    const auto layer = oracle::recession_layer(oracle::raw_of(run.w.a.upset()), n, 200);
    for (std::uint64_t w = 0; w < 200; ++w) CHECK(bs.b(n).upset().contains(w) == layer[w]);
  }
  auto three = std::get<BSequence>(build_b_sequence(*run.ctx, run.w, 3));
  CHECK(run.ctx->render(three.b(1)) == "{2}");
  CHECK(run.ctx->render(three.b(3)) == "{4}");

  ConstructionLimits tight;
  tight.max_depth = 10;
  CHECK_THROWS_AS(build_b_sequence(*run.ctx, run.w, 11, tight), BoundExceeded);
}

TEST_CASE("b sequence on a finite algebra stops with a report") {
  // The irreflexive 3-chain refutes F; its layers run out.
  const auto ctx = powerset_bao_of_frame(parse_frame_spec("3;0-1,1-2"));
  const auto w = find_f_witness(*ctx, ctx->enumerate_elements());
  REQUIRE(w);
  const auto built = build_b_sequence(*ctx, *w, 16);
  REQUIRE(std::holds_alternative<BSequenceFailure>(built));
  const auto& fail = std::get<BSequenceFailure>(built);
  CHECK(fail.last_nonzero >= 1);
  CHECK_FALSE(fail.message.empty());
  CHECK(fail.e_instance.variables() == std::set<std::string>{"a"});
  // The recorded verdict on the E instance matches direct evaluation.
  const Element v = eval_in_bao(*ctx, {{"a", w->a}}, fail.e_instance);
  CHECK(fail.e_instance_holds == ctx->is_top(v));
}

TEST_CASE("make_witness rejects non-witnesses") {
  const auto s4 = powerset_bao_of_frame(parse_frame_spec("3;refl"));
  for (const Element& e : s4->enumerate_elements()) CHECK_FALSE(make_witness(*s4, e));
}

TEST_CASE("disjointness and coverage") {
  Run run;
  const auto bs = std::get<BSequence>(build_b_sequence(*run.ctx, run.w, 64));
  const auto dis = verify_disjointness(*run.ctx, bs);
  CHECK(dis.passed());
  CHECK(dis.pairs == 64 * 63 / 2);
  const auto cov = verify_coverage(*run.ctx, bs);
  CHECK(cov.passed());
  CHECK(cov.pairs == 64 * 63 / 2);
  CHECK(cov.e_instances == 63);

  // Spot checks by hand.
  CHECK(run.ctx->diamond(bs.b(2)).upset() == UPSet::interval(0, 4));
  CHECK(run.ctx->leq(bs.b(1), run.ctx->diamond(bs.b(5))));
  CHECK(run.ctx->diamond(bs.b(5)).upset() == UPSet::interval(0, 7));
  CHECK(run.ctx->is_zero(run.ctx->meet(run.ctx->diamond(bs.b(1)), run.ctx->box_power(run.w.a, 3))));
}

TEST_CASE("assignment and refutation") {
  Run run;
  const auto bs = std::get<BSequence>(build_b_sequence(*run.ctx, run.w, 64));
  const auto as = assemble_assignment(*run.ctx, run.w, bs);
  CHECK(as.q1.upset() == UPSet::progression(2, 3));
  CHECK(as.q2.upset() == UPSet::progression(3, 3));
  CHECK(as.q3.upset() == UPSet::progression(4, 3));
  CHECK(as.r.upset() == UPSet::from(2));
  CHECK(as.union_is_r);
  CHECK(as.pairwise_disjoint);
  CHECK(as.layers_below);
  const auto map = as.for_axiom();
  CHECK(map.size() == 4);
  CHECK(map.count("q3") == 0);

  const auto cert = refute_a(*run.ctx, run.w, bs, as);
  CHECK(cert.verdict == RefutationVerdict::ARefuted);
  CHECK(cert.antecedent == "{2}");
  CHECK(cert.consequent == "∅");
  CHECK(cert.failed_step.empty());
  for (const auto& c : cert.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  // Independent evaluation of A under the assignment.
  const Element av = eval_in_bao(*run.ctx, map, axiom_catalog().get("A"));
  CHECK(av.upset() == complement(UPSet::singleton(2)));
  CHECK(run.ctx->diamond(as.q1).upset().is_omega());
  CHECK(run.ctx->is_zero(run.ctx->meet(as.q1, as.q2)));
}

TEST_CASE("veiled algebra: the construction stops at the joins") {
  const auto veiled = recession_algebra(RecessionFlavor::Veiled);
  const auto w = make_witness(*veiled, veiled->element(complement(UPSet::singleton(0))));
  REQUIRE(w);
  const auto bs = std::get<BSequence>(build_b_sequence(*veiled, *w, 8));
  try {
    assemble_assignment(*veiled, *w, bs);
    FAIL("expected the join to be unavailable");
  } catch (const CapabilityError& e) {
    CHECK(std::string(e.what()) == "family join unavailable: {2,5,8,…} has no supremum");
  }
}

TEST_CASE("certificate: text round trip and recheck") {
  Run run;
  const auto bs = std::get<BSequence>(build_b_sequence(*run.ctx, run.w, 16));
  const auto cert = refute_a(*run.ctx, run.w, bs, assemble_assignment(*run.ctx, run.w, bs));
  const std::string text = certificate_to_text(cert);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("schema") == 1);
  const auto back = certificate_from_text(text);
  CHECK(certificate_to_text(back) == text);
  CHECK(back.context == "recession:full");
  CHECK(back.b.size() == 16);
  CHECK(recheck_certificate(back).passed());

  SUBCASE("tampered layer") {
    auto bad = back;
    bad.b[3] = "{7}";
    CHECK_FALSE(recheck_certificate(bad).passed());
  }
  SUBCASE("tampered consequent") {
    auto bad = back;
    bad.consequent = "{3}";
    CHECK_FALSE(recheck_certificate(bad).passed());
  }
  SUBCASE("tampered verdict") {
    auto bad = back;
    bad.verdict = RefutationVerdict::ConstructionBroken;
    CHECK_FALSE(recheck_certificate(bad).passed());
  }
  SUBCASE("tampered q1") {
    auto bad = back;
    bad.q1 = "{2,6,10,…}";
    CHECK_FALSE(recheck_certificate(bad).passed());
  }
  SUBCASE("malformed text") {
    CHECK_THROWS(certificate_from_text("{}"));
    CHECK_THROWS(certificate_from_text("not json"));
  }
}
