#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsv/cli.hpp"

using namespace qsv;
using namespace qsv::cli;

namespace {

struct RunResult {
  int code;
  Json out;         // parsed stdout (JSON formats only)
  std::string raw;  // raw stdout
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  RunResult r{code, Json(), out.str()};
  if (!r.raw.empty() && (r.raw[0] == '{' || r.raw[0] == '['))
    r.out = Json::parse(r.raw);
  return r;
}

Json strip_diagnostics(Json j) {
  j.erase("timing_ms");
  j.erase("cache");
  return j;
}

std::string temp_path(const char* name) {
  return std::string("qsv_test_") + name + ".json";
}

}  // namespace

TEST_CASE("support command: spec examples and exit codes") {
  RunResult steinberg =
      run({"--type", "A", "--rank", "1", "--ell", "5", "--weight", "4",
           "support"});
  CHECK(steinberg.code == 0);
  CHECK(steinberg.out["outputs"]["J"] == Json::array({1}));
  CHECK(steinberg.out["outputs"]["dimension"] == 0);

  RunResult nullcone =
      run({"--type", "A", "--rank", "2", "--ell", "5", "--weight", "0,0",
           "support"});
  CHECK(nullcone.code == 0);
  CHECK(nullcone.out["outputs"]["J"] == Json::array());
  CHECK(nullcone.out["outputs"]["dimension"] == 6);

  RunResult even = run({"--type", "A", "--rank", "2", "--ell", "4",
                        "--weight", "0,0", "support"});
  CHECK(even.code == 2);
  CHECK(even.out["error"]["kind"] == "invalid_input");
  std::string msg = even.out["error"]["message"].get<std::string>();
  CHECK(msg.find("odd") != std::string::npos);
}

TEST_CASE("certificates re-parse (round trip)") {
  RunResult r = run({"--type", "B", "--rank", "2", "--ell", "7", "--weight",
                     "1,2", "support"});
  REQUIRE(r.code == 0);
  Certificate cert = Certificate::from_json(r.out);
  CHECK(cert.command == "support");
  CHECK(cert.verdict == Verdict::Pass);
  CHECK(cert.to_json()["outputs"] == r.out["outputs"]);
}

TEST_CASE("determinism: identical configs give identical JSON") {
  std::vector<std::string> args{"--type", "A", "--rank", "2", "--ell", "5",
                                "--bound", "4", "verify"};
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.code == 0);
  CHECK(strip_diagnostics(a.out) == strip_diagnostics(b.out));
}

TEST_CASE("verify: pass counts, exit codes, csv and text formats") {
  RunResult r = run({"--type", "A", "--rank", "1", "--ell", "5", "--bound",
                     "0", "verify"});
  CHECK(r.code == 0);
  CHECK(r.out["outputs"]["summary"]["total"] == 1);
  CHECK(r.out["outputs"]["summary"]["passed"] == 1);

  RunResult csv = run({"--type", "A", "--rank", "1", "--ell", "5", "--bound",
                       "2", "--format", "csv", "verify"});
  CHECK(csv.code == 0);
  CHECK(csv.raw.find("weight,s,") == 0);
  CHECK(csv.raw.find("TOTAL,3,passed=3") != std::string::npos);

  RunResult text = run({"--type", "A", "--rank", "1", "--ell", "5", "--bound",
                        "2", "--format", "text", "verify"});
  CHECK(text.code == 0);
  CHECK(text.raw.find("summary: 3/3 passed") != std::string::npos);

  // capacity surfaces as exit 3 and is flagged in the summary
  RunResult capped =
      run({"--type", "A", "--rank", "1", "--ell", "5", "--bound", "9",
           "--max-kl-length", "1", "verify"});
  CHECK(capped.code == 3);
  CHECK(capped.out["outputs"]["summary"]["capacity_exceeded"].get<int>() > 0);
  CHECK(capped.out["verdict"] == "capacity-exceeded");
}

TEST_CASE("exit-code contract for fabricated summaries") {
  VerifyResult r;
  r.summary.total = 2;
  r.summary.passed = 2;
  CHECK(r.exit_code() == 0);
  r.summary.failed = 1;
  CHECK(r.exit_code() == 1);
  r.summary.failed = 0;
  r.summary.capacity = 1;
  CHECK(r.exit_code() == 3);
}

TEST_CASE("kl command") {
  RunResult same = run({"--type", "A", "--rank", "1", "--ell", "5", "kl",
                        "--y", "1,0,1", "--w", "1,0,1"});
  CHECK(same.code == 0);
  CHECK(same.out["outputs"]["coeffs"] == Json::array({1}));
  CHECK(same.out["outputs"]["value_at_1"] == 1);

  RunResult incomparable = run({"--type", "A", "--rank", "1", "--ell", "5",
                                "kl", "--y", "1,0,1", "--w", "1"});
  CHECK(incomparable.code == 0);
  CHECK(incomparable.out["outputs"]["coeffs"] == Json::array());

  // (theta, word) JSON input form: t_{ell alpha} in rank one is s1 s0
  RunResult json_elt =
      run({"--type", "A", "--rank", "1", "--ell", "5", "kl", "--y",
           "{\"theta\":[0],\"word\":[]}", "--w",
           "{\"theta\":[1],\"word\":[]}"});
  CHECK(json_elt.code == 0);
  CHECK(json_elt.out["outputs"]["w"]["theta"] == Json::array({1}));
  CHECK(json_elt.out["outputs"]["coeffs"] == Json::array({1}));

  // parabolic with a non-minimal coset representative is a usage error
  RunResult bad = run({"--type", "A", "--rank", "1", "--ell", "5", "kl",
                       "--y", "0", "--w", "1,0", "--parabolic", "0"});
  CHECK(bad.code == 2);
  CHECK(bad.out["error"]["kind"] == "invalid_input");

  RunResult parab = run({"--type", "A", "--rank", "1", "--ell", "5", "kl",
                         "--y", "1", "--w", "0,1", "--parabolic", "0"});
  CHECK(parab.code == 0);
  CHECK(parab.out["outputs"]["coeffs"] == Json::array({1}));
}

TEST_CASE("cache: cold start, warm reuse, header mismatch, corruption") {
  std::string path = temp_path("cache");
  std::remove(path.c_str());

  std::vector<std::string> args{"--type", "A", "--rank", "1", "--ell",  "5",
                                "--bound", "6", "--cache", path, "verify"};
  RunResult cold = run(args);
  CHECK(cold.code == 0);
  CHECK(cold.out["cache"]["loaded_entries"] == 0);
  CHECK(cold.out["cache"]["stored_entries"].get<int>() > 0);

  RunResult warm = run(args);
  CHECK(warm.code == 0);
  CHECK(warm.out["cache"]["loaded_entries"].get<int>() ==
        cold.out["cache"]["stored_entries"].get<int>());
  // identical outputs, fewer fresh computations
  CHECK(strip_diagnostics(warm.out) == strip_diagnostics(cold.out));
  CHECK(warm.out["cache"]["computed"].get<int>() <
        cold.out["cache"]["computed"].get<int>());

  // a cache written for another level is ignored, not trusted
  RunResult other = run({"--type", "A", "--rank", "1", "--ell", "7", "--bound",
                         "6", "--cache", path, "verify"});
  CHECK(other.code == 0);
  CHECK(other.out["cache"]["loaded_entries"] == 0);
  std::string note = other.out["cache"]["note"].get<std::string>();
  CHECK(note.find("mismatch") != std::string::npos);

  // corrupt cache: warn and cold start, never a hard failure
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  RunResult corrupt = run(args);
  CHECK(corrupt.code == 0);
  CHECK(corrupt.out["cache"]["loaded_entries"] == 0);
  CHECK(corrupt.out["cache"]["note"].get<std::string>().find("corrupt") !=
        std::string::npos);
  CHECK(strip_diagnostics(corrupt.out) == strip_diagnostics(cold.out));
  std::remove(path.c_str());
}

TEST_CASE("parallel sweep matches the single-threaded run") {
  std::vector<std::string> base{"--type", "A", "--rank", "2", "--ell", "5",
                                "--bound", "6", "verify"};
  std::vector<std::string> parallel{"--type", "A", "--rank", "2", "--ell", "5",
                                    "--bound", "6", "--jobs", "4", "verify"};
  RunResult a = run(base);
  RunResult b = run(parallel);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  // the config echo differs in the jobs field; the results must not
  CHECK(a.out["outputs"] == b.out["outputs"]);
}

TEST_CASE("input validation errors") {
  CHECK(run({"--type", "A", "--rank", "2", "--ell", "5", "--weight", "1",
             "support"})
            .code == 2);
  CHECK(run({"--type", "Z", "--rank", "2", "--ell", "5", "--weight", "1,1",
             "support"})
            .code == 2);
  CHECK(run({"--type", "A", "--rank", "2", "--ell", "5", "--weight", "1,x",
             "support"})
            .code == 2);
  CHECK(run({"--type", "A", "--rank", "2", "--ell", "5", "verify"}).code == 2);
  CHECK(run({"--type", "A", "--rank", "2", "--ell", "5", "--weight", "1,1",
             "--format", "csv", "support"})
            .code == 2);
  CHECK(run({"--type", "G", "--rank", "2", "--ell", "9", "--weight", "1,1",
             "support"})
            .code == 2);
}

TEST_CASE("modular mode flows through to the descriptor") {
  RunResult r = run({"--type", "A", "--rank", "2", "--ell", "5", "--mode",
                     "modular", "--weight", "7,9", "support"});
  CHECK(r.code == 0);
  CHECK(r.out["outputs"]["conditional_on_LCF"] == true);
  RunResult r0 = run({"--type", "A", "--rank", "2", "--ell", "5", "--mode",
                      "modular", "--weight", "2,4", "support"});
  CHECK(r.out["outputs"]["J"] == r0.out["outputs"]["J"]);
  CHECK(r.out["outputs"]["dimension"] == r0.out["outputs"]["dimension"]);
}
