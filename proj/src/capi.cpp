#include "modalbao/modalbao.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <new>
#include <sstream>

#include "modalbao/error.hpp"
#include "modalbao/formula.hpp"
#include "modalbao/harness.hpp"
#include "modalbao/kripke.hpp"
#include "modalbao/recession.hpp"
#include "modalbao/upset.hpp"

struct mb_formula {
  modalbao::Formula value;
};

struct mb_frame {
  modalbao::FiniteFrame value;
};

struct mb_options {
  std::uint64_t seed = 0;
  mb_format format = MB_FORMAT_TEXT;
  unsigned threads = 0;
  std::uint64_t samples = 0;
  bool exhaustive_k4 = false;
  std::uint64_t sampled_k4_frames = 0;
  bool timing = true;
};

namespace {

using namespace modalbao;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** errmsg, const std::string& message) {
  if (!errmsg) return;
  std::free(*errmsg);
  *errmsg = copy_string(message);
}

mb_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return MB_ERR_PARSE;
    case ErrorKind::InvalidArgument: return MB_ERR_INVALID_ARGUMENT;
    case ErrorKind::BoundExceeded: return MB_ERR_BOUND;
    case ErrorKind::Capability: return MB_ERR_CAPABILITY;
    case ErrorKind::UnassignedVariable: return MB_ERR_UNASSIGNED;
    case ErrorKind::CrossContext: return MB_ERR_INVALID_ARGUMENT;
    case ErrorKind::NotAdmissible: return MB_ERR_NOT_ADMISSIBLE;
  }
  return MB_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
mb_status guarded(char** errmsg, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    set_error(errmsg, e.what());
    return status_of(e.kind());
  } catch (const std::exception& e) {
    set_error(errmsg, e.what());
    return MB_ERR_INTERNAL;
  } catch (...) {
    set_error(errmsg, "unknown error");
    return MB_ERR_INTERNAL;
  }
}

#define MB_REQUIRE(cond, what)                               \
  do {                                                       \
    if (!(cond)) {                                           \
      set_error(errmsg, what);                               \
      return MB_ERR_INVALID_ARGUMENT;                        \
    }                                                        \
  } while (0)

const mb_options& options_or_default(const mb_options* options) {
  static const mb_options defaults;
  return options ? *options : defaults;
}

bool json_wanted(const mb_options& o) { return o.format == MB_FORMAT_JSON; }

std::string catalog_match(const Formula& f) {
  for (const auto& e : axiom_catalog().entries()) {
    if (e.formula == f) return e.name;
  }
  return {};
}

std::string render_worlds(WorldSet worlds, std::size_t k) {
  std::string out = "{";
  bool first = true;
  for (std::size_t w = 0; w < k; ++w) {
    if (!((worlds >> w) & 1U)) continue;
    if (!first) out += ',';
    first = false;
    out += std::to_string(w);
  }
  return out + "}";
}

}  // namespace

extern "C" {

const char* mb_version(void) { return "1.0.0"; }

const char* mb_status_name(mb_status status) {
  switch (status) {
    case MB_OK: return "ok";
    case MB_CHECK_FAILED: return "check failed";
    case MB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MB_ERR_PARSE: return "parse error";
    case MB_ERR_BOUND: return "bound exceeded";
    case MB_ERR_CAPABILITY: return "capability missing";
    case MB_ERR_UNASSIGNED: return "unassigned variable";
    case MB_ERR_NOT_ADMISSIBLE: return "not admissible";
    case MB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mb_string_free(char* s) { std::free(s); }

mb_options* mb_options_create(void) { return new (std::nothrow) mb_options(); }
void mb_options_destroy(mb_options* options) { delete options; }
void mb_options_set_seed(mb_options* o, uint64_t seed) { if (o) o->seed = seed; }
void mb_options_set_format(mb_options* o, mb_format format) { if (o) o->format = format; }
void mb_options_set_threads(mb_options* o, unsigned threads) { if (o) o->threads = threads; }
void mb_options_set_samples(mb_options* o, uint64_t samples) { if (o) o->samples = samples; }
void mb_options_set_exhaustive_k4(mb_options* o, int enabled) { if (o) o->exhaustive_k4 = enabled != 0; }
void mb_options_set_sampled_k4_frames(mb_options* o, uint64_t frames) { if (o) o->sampled_k4_frames = frames; }
void mb_options_set_timing(mb_options* o, int enabled) { if (o) o->timing = enabled != 0; }

// ---------------------------------------------------------------------------

mb_status mb_formula_parse(const char* text, mb_formula** out, char** errmsg) {
  MB_REQUIRE(text && out, "text and out must be non-null");
  return guarded(errmsg, [&] {
    *out = new mb_formula{parse(text)};
    return MB_OK;
  });
}

mb_status mb_formula_catalog(const char* name, mb_formula** out, char** errmsg) {
  MB_REQUIRE(name && out, "name and out must be non-null");
  return guarded(errmsg, [&] {
    *out = new mb_formula{axiom_catalog().get(name)};
    return MB_OK;
  });
}

void mb_formula_destroy(mb_formula* formula) { delete formula; }

char* mb_formula_print(const mb_formula* formula) {
  if (!formula) return nullptr;
  try {
    return copy_string(print(formula->value));
  } catch (...) {
    return nullptr;
  }
}

char* mb_formula_tree(const mb_formula* formula) {
  if (!formula) return nullptr;
  try {
    return copy_string(print_tree(formula->value));
  } catch (...) {
    return nullptr;
  }
}

int mb_formula_equal(const mb_formula* a, const mb_formula* b) {
  return a && b && a->value == b->value ? 1 : 0;
}

mb_status mb_formula_report(const mb_options* options, const mb_formula* formula, char** report,
                            char** errmsg) {
  MB_REQUIRE(formula && report, "formula and report must be non-null");
  const auto& o = options_or_default(options);
  return guarded(errmsg, [&] {
    const Formula& f = formula->value;
    const std::string match = catalog_match(f);
    const auto vars = f.variables();
    std::string out;
    if (json_wanted(o)) {
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["report"] = "parse";
      j["tree"] = print_tree(f);
      j["print"] = print(f);
      j["variables"] = std::vector<std::string>(vars.begin(), vars.end());
      j["catalog_entry"] = match.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(match);
      out = j.dump(2) + "\n";
    } else {
      out = "tree:  " + print_tree(f) + "\nprint: " + print(f) + "\n";
      if (!match.empty()) out += "catalog entry: " + match + "\n";
    }
    *report = copy_string(out);
    return MB_OK;
  });
}

mb_status mb_frame_parse(const char* spec, mb_frame** out, char** errmsg) {
  MB_REQUIRE(spec && out, "spec and out must be non-null");
  return guarded(errmsg, [&] {
    *out = new mb_frame{parse_frame_spec(spec)};
    return MB_OK;
  });
}

void mb_frame_destroy(mb_frame* frame) { delete frame; }

size_t mb_frame_size(const mb_frame* frame) { return frame ? frame->value.size() : 0; }

mb_status mb_check(const mb_options* options, const mb_frame* frame, const mb_formula* formula,
                   char** report, char** errmsg) {
  MB_REQUIRE(frame && formula && report, "frame, formula and report must be non-null");
  const auto& o = options_or_default(options);
  return guarded(errmsg, [&] {
    const auto& fr = frame->value;
    const auto verdict = frame_validates(fr, formula->value);
    std::string out;
    if (json_wanted(o)) {
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["report"] = "check";
      j["frame"] = fr.spec();
      j["formula"] = print(formula->value);
      j["valid"] = verdict.valid;
      j["valuations_checked"] = verdict.valuations_checked;
      if (verdict.counterexample) {
        nlohmann::ordered_json v = nlohmann::ordered_json::object();
        for (const auto& [name, set] : verdict.counterexample->valuation) v[name] = render_worlds(set, fr.size());
        j["counterexample"] = {{"valuation", v}, {"world", verdict.counterexample->world}};
      }
      out = j.dump(2) + "\n";
    } else {
      std::ostringstream s;
      s << "frame " << fr.spec() << ", formula " << print(formula->value) << ": "
        << (verdict.valid ? "valid" : "not valid") << " (" << verdict.valuations_checked
        << " valuations)\n";
      if (verdict.counterexample) {
        s << "  counterexample:";
        for (const auto& [name, set] : verdict.counterexample->valuation) {
          s << " " << name << " = " << render_worlds(set, fr.size());
        }
        s << ", refuted at world " << verdict.counterexample->world << "\n";
      }
      out = s.str();
    }
    *report = copy_string(out);
    return verdict.valid ? MB_OK : MB_CHECK_FAILED;
  });
}

mb_status mb_sweep(const mb_options* options, unsigned kmax, char** report, char** errmsg) {
  MB_REQUIRE(report, "report must be non-null");
  const auto& o = options_or_default(options);
  return guarded(errmsg, [&] {
    SweepConfig config;
    config.threads = o.threads;
    config.exhaustive_k4 = o.exhaustive_k4;
    config.sampled_k4_frames = o.sampled_k4_frames;
    config.seed = o.seed;
    const auto r = finite_sweep(kmax, config);
    *report = copy_string(json_wanted(o) ? sweep_to_json(r, o.timing) : sweep_to_text(r, o.timing));
    return r.passed() ? MB_OK : MB_CHECK_FAILED;
  });
}

mb_status mb_recession(const mb_options* options, size_t depth, const char* witness, char** report,
                       char** certificate, char** errmsg) {
  MB_REQUIRE(report, "report must be non-null");
  const auto& o = options_or_default(options);
  return guarded(errmsg, [&] {
    RecessionSuiteOptions ro;
    ro.depth = depth;
    ro.seed = o.seed;
    if (o.samples) ro.samples = o.samples;
    if (witness) ro.witness = parse_upset(witness);
    const auto r = recession_suite(ro);
    *report = copy_string(json_wanted(o) ? suite_to_json(r, o.timing) : suite_to_text(r, o.timing));
    if (certificate) *certificate = r.certificate ? copy_string(certificate_to_text(*r.certificate)) : nullptr;
    return r.passed() ? MB_OK : MB_CHECK_FAILED;
  });
}

mb_status mb_veiled(const mb_options* options, char** report, char** errmsg) {
  MB_REQUIRE(report, "report must be non-null");
  const auto& o = options_or_default(options);
  return guarded(errmsg, [&] {
    VeiledSuiteOptions vo;
    vo.seed = o.seed;
    if (o.samples) vo.samples = o.samples;
    const auto r = veiled_suite(vo);
    *report = copy_string(json_wanted(o) ? suite_to_json(r, o.timing) : suite_to_text(r, o.timing));
    return r.passed() ? MB_OK : MB_CHECK_FAILED;
  });
}

mb_status mb_certify(const mb_options* options, const char* certificate, char** report, char** errmsg) {
  MB_REQUIRE(certificate && report, "certificate and report must be non-null");
  const auto& o = options_or_default(options);
  return guarded(errmsg, [&] {
    const auto r = certify_suite(certificate_from_text(certificate));
    *report = copy_string(json_wanted(o) ? suite_to_json(r, o.timing) : suite_to_text(r, o.timing));
    return r.passed() ? MB_OK : MB_CHECK_FAILED;
  });
}

mb_status mb_upset(const mb_options* options, const char* set, char** report, char** errmsg) {
  MB_REQUIRE(set && report, "set and report must be non-null");
  const auto& o = options_or_default(options);
  return guarded(errmsg, [&] {
    const UPSet x = parse_upset(set);
    const UPSet dia = dia_recession(x);
    const UPSet box = box_recession(x);
    std::string out;
    if (json_wanted(o)) {
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["report"] = "upset";
      j["bits"] = x.bits();
      j["description"] = x.describe();
      j["finite"] = x.is_finite();
      j["cofinite"] = x.is_cofinite();
      j["veiled_admissible"] = veiled_admissible(x);
      j["diamond"] = {{"bits", dia.bits()}, {"description", dia.describe()}};
      j["box"] = {{"bits", box.bits()}, {"description", box.describe()}};
      out = j.dump(2) + "\n";
    } else {
      out = "set:     " + x.describe() + "  [" + x.bits() + "]\n" +
            "kind:    " + (x.is_finite() ? "finite" : x.is_cofinite() ? "cofinite" : "infinite, co-infinite") +
            (veiled_admissible(x) ? " (admissible)" : " (not admissible)") + "\n" +
            "<> set:  " + dia.describe() + "  [" + dia.bits() + "]\n" +
            "[] set:  " + box.describe() + "  [" + box.bits() + "]\n";
    }
    *report = copy_string(out);
    return MB_OK;
  });
}

}  // extern "C"
