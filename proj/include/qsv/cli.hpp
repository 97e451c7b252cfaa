/*
  Command-line front end: run configuration, certificate emission (JSON
  first, CSV/text for humans), KL cache persistence, and the sweep runner.

  Exit-code contract: 0 = all verdicts pass, 1 = verification failure,
  2 = invalid input, 3 = capacity exceeded.

  Serialized affine elements are {"theta": [...], "word": [...], "level": l}
  with word the reduced word of the finite part over simple letters 1..n.
  Generator words elsewhere use 0 for the affine reflection.  Simple-root
  indices in emitted JSON are 1-based.
*/
#ifndef QSV_CLI_HPP
#define QSV_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsv/kl.hpp"
#include "qsv/support.hpp"

namespace qsv {
namespace cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
  char type = 'A';
  int rank = 1;
  long long ell = 5;
  ParamMode mode = ParamMode::Quantum;
  std::optional<CoordVec> weight;       // single-weight commands
  std::optional<Coord> sweep_bound;     // sweep commands: coords in [0, bound]
  OutputFormat format = OutputFormat::Json;
  std::string cache_path;               // empty: no persistence
  long long max_kl_length = 14;
  int jobs = 1;

  void validate_shape() const;  // structural checks (rank vs weight size etc.)
};

enum class Verdict { Pass, Fail, CapacityExceeded };
const char* to_string(Verdict v);

struct Certificate {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  Verdict verdict = Verdict::Pass;
  double timing_ms = 0.0;
  Json cache = Json::object();

  Json to_json() const;
  static Certificate from_json(const Json& j);
};

Json element_to_json(const AffineGroup& g, const AffineElement& a);
AffineElement element_from_json(const AffineGroup& g, const Json& j);

// KL cache persistence.  The header pins {format version, type, rank, ell};
// a mismatched or corrupt file is ignored with a note (cold start).
struct CacheLoad {
  bool loaded = false;
  std::size_t entries = 0;
  std::string note;
};
CacheLoad load_cache(KLTable& klt, const std::string& path);
std::size_t save_cache(KLTable& klt, const std::string& path);

Certificate cmd_support(const RunConfig& cfg);

struct VerifySummary {
  long long total = 0;
  long long passed = 0;
  long long failed = 0;
  long long capacity = 0;
};

struct VerifyResult {
  std::vector<Json> per_weight;
  VerifySummary summary;
  Certificate certificate;  // aggregate, outputs = {per_weight, summary}
  int exit_code() const;
};

VerifyResult cmd_verify(const RunConfig& cfg);

Certificate cmd_kl(const RunConfig& cfg, const std::string& y_spec,
                   const std::string& w_spec,
                   const std::optional<std::vector<int>>& parabolic_I);

// Full argv-level entry point (minus argv[0]); wired to main() and tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cli
}  // namespace qsv

#endif  // QSV_CLI_HPP
