// Exercises the shared library through its C interface only.
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "modalbao/modalbao.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { mb_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

}  // namespace

TEST_CASE("formula parse, print and equality") {
  mb_formula* f = nullptr;
  mb_formula* g = nullptr;
  Str err;
  REQUIRE(mb_formula_parse("[]p -> [][]p", &f, &err.p) == MB_OK);
  REQUIRE(mb_formula_catalog("F", &g, &err.p) == MB_OK);
  CHECK(mb_formula_equal(f, g) == 1);
  Str printed{mb_formula_print(f)};
  CHECK(printed.s() == "[]p -> [][]p");
  Str tree{mb_formula_tree(f)};
  CHECK(tree.s() == "Implication(Box(Variable(p)), Box(Box(Variable(p))))");
  mb_formula_destroy(f);
  mb_formula_destroy(g);

  mb_formula* bad = nullptr;
  CHECK(mb_formula_parse("p &", &bad, &err.p) == MB_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK_FALSE(err.s().empty());
  CHECK(mb_formula_parse(nullptr, &bad, nullptr) == MB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("check reports") {
  mb_options* o = mb_options_create();
  mb_options_set_format(o, MB_FORMAT_JSON);
  mb_frame* fr = nullptr;
  mb_formula* c = nullptr;
  REQUIRE(mb_frame_parse("1;", &fr, nullptr) == MB_OK);
  CHECK(mb_frame_size(fr) == 1);
  REQUIRE(mb_formula_catalog("C", &c, nullptr) == MB_OK);
  Str report, err;
  CHECK(mb_check(o, fr, c, &report.p, &err.p) == MB_CHECK_FAILED);
  const auto j = nlohmann::json::parse(report.s());
  CHECK(j.at("valid") == false);
  CHECK(j.at("counterexample").at("world") == 0);
  CHECK(j.at("counterexample").at("valuation").at("p") == "{}");
  mb_formula_destroy(c);
  mb_frame_destroy(fr);
  mb_options_destroy(o);

  mb_frame* junk = nullptr;
  Str e2;
  CHECK(mb_frame_parse("zz", &junk, &e2.p) != MB_OK);
}

TEST_CASE("runners") {
  mb_options* o = mb_options_create();
  mb_options_set_timing(o, 0);
  mb_options_set_samples(o, 50);
  {
    Str report, err;
    CHECK(mb_sweep(o, 2, &report.p, &err.p) == MB_OK);
    CHECK(report.s().find("PASS") != std::string::npos);
  }
  {
    Str report, cert, err;
    CHECK(mb_recession(o, 12, nullptr, &report.p, &cert.p, &err.p) == MB_OK);
    REQUIRE(cert.p);
    Str r2, e2;
    CHECK(mb_certify(o, cert.p, &r2.p, &e2.p) == MB_OK);
    std::string tampered = cert.s();
    const auto pos = tampered.find("A refuted");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 9, "construction-broken");
    Str r3, e3;
    CHECK(mb_certify(o, tampered.c_str(), &r3.p, &e3.p) == MB_CHECK_FAILED);
  }
  {
    Str report, err;
    CHECK(mb_recession(o, 12, "{1,2", &report.p, nullptr, &err.p) == MB_ERR_PARSE);
  }
  {
    Str report, err;
    CHECK(mb_veiled(o, &report.p, &err.p) == MB_OK);
  }
  {
    Str report, err;
    mb_options_set_format(o, MB_FORMAT_JSON);
    CHECK(mb_upset(o, "omega\\{0}", &report.p, &err.p) == MB_OK);
    const auto j = nlohmann::json::parse(report.s());
    CHECK(j.at("box").at("description") == "{n ≥ 2}");
    CHECK(j.at("veiled_admissible") == true);
  }
  mb_options_destroy(o);
}

TEST_CASE("status names") {
  CHECK(std::string(mb_status_name(MB_OK)) == "ok");
  CHECK(std::string(mb_status_name(MB_ERR_BOUND)) == "bound exceeded");
  CHECK(std::string(mb_version()).size() > 0);
}
