// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "modalbao/modalbao.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  bool json = false;
  bool quiet = false;
  std::string out;
  unsigned threads = 0;
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { mb_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

using OptionsPtr = std::unique_ptr<mb_options, decltype(&mb_options_destroy)>;

OptionsPtr make_options(const Globals& g) {
  OptionsPtr o(mb_options_create(), &mb_options_destroy);
  mb_options_set_seed(o.get(), g.seed);
  mb_options_set_format(o.get(), g.json ? MB_FORMAT_JSON : MB_FORMAT_TEXT);
  mb_options_set_threads(o.get(), g.threads);
  return o;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

// Prints the report (unless quiet), maps the status to an exit code.
int finish(const Globals& g, mb_status status, const OwnedString& report, const OwnedString& err) {
  if (status != MB_OK && status != MB_CHECK_FAILED) {
    std::cerr << "error (" << mb_status_name(status) << "): " << err.str() << "\n";
    return status == MB_ERR_INTERNAL ? kExitCheckFailed : kExitUsage;
  }
  const std::string text = report.str();
  if (!g.out.empty()) {
    if (!write_file(g.out, text)) {
      std::cerr << "error: cannot write " << g.out << "\n";
      return kExitUsage;
    }
  } else if (!g.quiet) {
    std::cout << text;
  }
  return status == MB_OK ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modalbao: modal algebra workbench"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every sampled run")->capture_default_str();
  app.add_flag("--json", g.json, "Emit JSON reports");
  app.add_flag("--quiet", g.quiet, "Suppress report output; exit status only");
  app.add_option("--out", g.out, "Write the report to a file instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads for the sweep (0 = hardware)");

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula");
  std::string parse_text;
  parse_cmd->add_option("formula", parse_text)->required();

  auto* check_cmd = app.add_subcommand("check", "Check validity of a formula on a finite frame");
  std::string frame_spec, check_text;
  check_cmd->add_option("--frame", frame_spec, "Frame, e.g. '3;0-1,1-2' or '3;refl'")->required();
  check_cmd->add_option("formula", check_text, "Formula text or catalog name")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Finite-frame sweep of the axioms A to F");
  unsigned kmax = 3;
  bool exhaustive_k4 = false;
  std::uint64_t sampled_k4 = 0;
  sweep_cmd->add_option("--kmax", kmax)->capture_default_str();
  sweep_cmd->add_flag("--exhaustive-k4", exhaustive_k4, "Enumerate all 65536 frames on 4 worlds");
  sweep_cmd->add_option("--sampled-k4", sampled_k4, "Number of random 4-world frames");

  auto* rec_cmd = app.add_subcommand("recession", "Run the construction on the recession frame");
  std::size_t depth = 64;
  std::string witness, cert_out;
  std::uint64_t rec_samples = 0;
  rec_cmd->add_option("--depth", depth)->capture_default_str();
  rec_cmd->add_option("--witness", witness, "Element a, e.g. 'omega\\{0}'");
  rec_cmd->add_option("--certificate-out", cert_out, "Write the refutation certificate here");
  rec_cmd->add_option("--samples", rec_samples, "Samples for the B to E check (0 = default)");

  auto* veiled_cmd = app.add_subcommand("veiled", "Checks on the finite/cofinite subalgebra");
  std::uint64_t veiled_samples = 0;
  veiled_cmd->add_option("--samples", veiled_samples, "Samples for the A to E check (0 = default)");

  auto* certify_cmd = app.add_subcommand("certify", "Recheck a stored refutation certificate");
  std::string cert_in;
  certify_cmd->add_option("--in", cert_in)->required()->check(CLI::ExistingFile);

  auto* upset_cmd = app.add_subcommand("upset", "Describe an ultimately periodic set");
  std::string upset_text;
  upset_cmd->add_option("set", upset_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  auto opts = make_options(g);
  OwnedString report, err;
  mb_status status = MB_OK;

  if (*parse_cmd) {
    mb_formula* f = nullptr;
    status = mb_formula_parse(parse_text.c_str(), &f, &err.ptr);
    if (status == MB_OK) {
      status = mb_formula_report(opts.get(), f, &report.ptr, &err.ptr);
      mb_formula_destroy(f);
    }
  } else if (*check_cmd) {
    mb_frame* frame = nullptr;
    mb_formula* f = nullptr;
    status = mb_frame_parse(frame_spec.c_str(), &frame, &err.ptr);
    if (status == MB_OK) {
      status = mb_formula_catalog(check_text.c_str(), &f, nullptr);
      if (status != MB_OK) status = mb_formula_parse(check_text.c_str(), &f, &err.ptr);
    }
    if (status == MB_OK) status = mb_check(opts.get(), frame, f, &report.ptr, &err.ptr);
    mb_formula_destroy(f);
    mb_frame_destroy(frame);
  } else if (*sweep_cmd) {
    if (exhaustive_k4) {
      std::cerr << "warning: --exhaustive-k4 checks 65536 frames and can take a long time\n";
    }
    mb_options_set_exhaustive_k4(opts.get(), exhaustive_k4 ? 1 : 0);
    mb_options_set_sampled_k4_frames(opts.get(), sampled_k4);
    status = mb_sweep(opts.get(), kmax, &report.ptr, &err.ptr);
  } else if (*rec_cmd) {
    mb_options_set_samples(opts.get(), rec_samples);
    OwnedString cert;
    status = mb_recession(opts.get(), depth, witness.empty() ? nullptr : witness.c_str(), &report.ptr,
                          cert_out.empty() ? nullptr : &cert.ptr, &err.ptr);
    if ((status == MB_OK || status == MB_CHECK_FAILED) && !cert_out.empty()) {
      if (!cert.ptr) {
        std::cerr << "warning: no certificate was produced\n";
      } else if (!write_file(cert_out, cert.str())) {
        std::cerr << "error: cannot write " << cert_out << "\n";
        return kExitUsage;
      }
    }
  } else if (*veiled_cmd) {
    mb_options_set_samples(opts.get(), veiled_samples);
    status = mb_veiled(opts.get(), &report.ptr, &err.ptr);
  } else if (*certify_cmd) {
    std::ifstream in(cert_in, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    status = mb_certify(opts.get(), buf.str().c_str(), &report.ptr, &err.ptr);
  } else if (*upset_cmd) {
    status = mb_upset(opts.get(), upset_text.c_str(), &report.ptr, &err.ptr);
  }
  return finish(g, status, report, err);
}
