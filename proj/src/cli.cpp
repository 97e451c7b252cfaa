#include "qsv/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qsv/gendim.hpp"

namespace qsv {
namespace cli {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kCacheFormatVersion = 1;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<int> one_based(const std::vector<int>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(i + 1);
  return out;
}

Json config_echo(const RunConfig& cfg) {
  Json j;
  j["type"] = std::string(1, cfg.type);
  j["rank"] = cfg.rank;
  j["ell"] = cfg.ell;
  j["mode"] = to_string(cfg.mode);
  j["weight"] = cfg.weight ? Json(*cfg.weight) : Json(nullptr);
  j["bound"] = cfg.sweep_bound ? Json(*cfg.sweep_bound) : Json(nullptr);
  j["max_kl_length"] = cfg.max_kl_length;
  j["jobs"] = cfg.jobs;
  return j;
}

Json verdict_json(bool pass) { return pass ? "pass" : "fail"; }

// All dominant weights with coordinates in [0, bound], lexicographic.
std::vector<Weight> sweep_weights(int rank, Coord bound) {
  std::vector<Weight> out;
  CoordVec cur(rank, 0);
  while (true) {
    out.push_back(Weight{cur});
    int i = rank - 1;
    while (i >= 0 && cur[i] == bound) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

struct WeightOutcome {
  Json record;
  Verdict verdict = Verdict::Pass;
};

WeightOutcome verify_one(KLTable& klt, const Weight& la) {
  const AffineGroup& G = klt.group();
  const RootSystem& rs = G.roots();
  long long ell = G.level();
  WeightOutcome out;
  Json& r = out.record;
  r["weight"] = la.fw;
  bool failed = false;

  // Route one: the derivative identity for D_lambda at zeta (no KL needed).
  DerivativeCertificate cert = verify_derivative_formula(G, la);
  r["s"] = cert.s;
  r["derivative_identity"] = {{"lhs", cert.lhs.to_string()},
                              {"rhs", cert.rhs.to_string()},
                              {"equal", cert.equal},
                              {"nonzero", cert.nonzero},
                              {"verdict", verdict_json(cert.pass())}};
  failed |= !cert.pass();

  // Route two: Psi_ell divides D_lambda exactly |Phi^+_lambda| times.
  int d_mult = psi_multiplicity(d_poly(rs, la), ell);
  bool d_ok = d_mult == cert.s;
  r["d_multiplicity"] = {{"expected", cert.s},
                         {"got", d_mult},
                         {"verdict", verdict_json(d_ok)}};
  failed |= !d_ok;

  // Route three: multiplicity in D_0 * dim_t L, through the character
  // formula; this is the KL-dependent part and may hit the length cap.
  try {
    MultiplicityReport rep = multiplicity_and_complexity(klt, la);
    r["irreducible_multiplicity"] = {
        {"n", rep.n},
        {"s", rep.s},
        {"derivative_nonzero", rep.derivative_nonzero},
        {"borel_bound", rep.borel_bound},
        {"support_dimension", rep.support_dimension},
        {"verdict", verdict_json(rep.ok())}};
    failed |= !rep.ok();
  } catch (const CapacityError& e) {
    r["irreducible_multiplicity"] = {{"verdict", "capacity-exceeded"},
                                     {"note", e.what()}};
    out.verdict = Verdict::CapacityExceeded;
  }

  if (failed) out.verdict = Verdict::Fail;
  r["verdict"] = to_string(out.verdict);
  return out;
}

std::string csv_escape_weight(const CoordVec& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '|';
    s += std::to_string(w[i]);
  }
  return s;
}

CoordVec parse_coords(const std::string& s) {
  CoordVec out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw InvalidInputError("cannot parse integer list: '" + s + "'");
    }
  }
  detail::require(!out.empty(), "empty integer list");
  return out;
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> out;
  for (Coord c : parse_coords(s)) out.push_back(static_cast<int>(c));
  return out;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    default:
      return "capacity-exceeded";
  }
}

void RunConfig::validate_shape() const {
  detail::require(rank >= 1 && rank <= 8, "rank must be between 1 and 8");
  detail::require(max_kl_length >= 0, "max KL length must be >= 0");
  detail::require(jobs >= 1, "jobs must be >= 1");
  if (weight) {
    detail::require(static_cast<int>(weight->size()) == rank,
                    "weight has " + std::to_string(weight->size()) +
                        " coordinates but rank is " + std::to_string(rank));
    for (Coord c : *weight)
      detail::require(c >= 0, "weight coordinates must be dominant (>= 0)");
  }
  if (sweep_bound)
    detail::require(*sweep_bound >= 0, "sweep bound must be >= 0");
}

Json Certificate::to_json() const {
  Json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["verdict"] = to_string(verdict);
  j["timing_ms"] = timing_ms;
  j["cache"] = cache;
  return j;
}

Certificate Certificate::from_json(const Json& j) {
  Certificate c;
  c.command = j.at("command").get<std::string>();
  c.inputs = j.at("inputs");
  c.outputs = j.at("outputs");
  std::string v = j.at("verdict").get<std::string>();
  c.verdict = v == "pass" ? Verdict::Pass
                          : (v == "fail" ? Verdict::Fail
                                         : Verdict::CapacityExceeded);
  c.timing_ms = j.at("timing_ms").get<double>();
  c.cache = j.at("cache");
  return c;
}

Json element_to_json(const AffineGroup& g, const AffineElement& a) {
  Json j;
  j["theta"] = a.theta;
  std::vector<int> word = g.roots().word(a.x);
  j["word"] = one_based(word);
  j["level"] = g.level();
  return j;
}

AffineElement element_from_json(const AffineGroup& g, const Json& j) {
  AffineElement a;
  try {
    a.theta = j.at("theta").get<CoordVec>();
    std::vector<int> word = j.at("word").get<std::vector<int>>();
    std::vector<int> zero_based;
    for (int s : word) {
      detail::require(s >= 1 && s <= g.roots().rank(),
                      "finite word letters must lie in 1..n");
      zero_based.push_back(s - 1);
    }
    a.x = g.roots().from_word(zero_based);
  } catch (const Json::exception& e) {
    throw InvalidInputError(std::string("bad element JSON: ") + e.what());
  }
  detail::require(static_cast<int>(a.theta.size()) == g.roots().rank(),
                  "element theta has wrong rank");
  if (j.contains("level"))
    detail::require(j.at("level").get<long long>() == g.level(),
                    "element level does not match the run configuration");
  a.level = g.level();
  return a;
}

CacheLoad load_cache(KLTable& klt, const std::string& path) {
  CacheLoad result;
  if (path.empty()) return result;
  std::ifstream in(path);
  if (!in.good()) {
    result.note = "no cache file at " + path + "; cold start";
    return result;
  }
  Json j;
  try {
    in >> j;
    const AffineGroup& g = klt.group();
    if (j.at("format_version").get<int>() != kCacheFormatVersion ||
        j.at("type").get<std::string>() !=
            std::string(1, g.roots().type_label()) ||
        j.at("rank").get<int>() != g.roots().rank() ||
        j.at("ell").get<long long>() != g.level()) {
      result.note = "cache header mismatch; ignoring " + path;
      return result;
    }
    for (const Json& e : j.at("entries")) {
      AffineElement y = element_from_json(g, e.at("y"));
      AffineElement w = element_from_json(g, e.at("w"));
      KLPoly p;
      p.coeffs = e.at("p").get<std::vector<long long>>();
      p.normalize();
      klt.import_entry(y, w, std::move(p));
      ++result.entries;
    }
    result.loaded = true;
  } catch (const std::exception& e) {
    result = CacheLoad{};
    result.note = std::string("corrupt cache ignored (") + e.what() + ")";
  }
  return result;
}

std::size_t save_cache(KLTable& klt, const std::string& path) {
  if (path.empty()) return 0;
  const AffineGroup& g = klt.group();
  std::vector<std::pair<std::string, Json>> rows;
  for (const KLTable::Entry& e : klt.export_entries()) {
    Json row;
    row["y"] = element_to_json(g, e.y);
    row["w"] = element_to_json(g, e.w);
    row["p"] = e.p.coeffs;
    rows.emplace_back(row.dump(), std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json out;
  out["format_version"] = kCacheFormatVersion;
  out["type"] = std::string(1, g.roots().type_label());
  out["rank"] = g.roots().rank();
  out["ell"] = g.level();
  Json entries = Json::array();
  for (auto& [_, row] : rows) entries.push_back(std::move(row));
  out["entries"] = std::move(entries);
  std::ofstream of(path);
  detail::require(of.good(), "cache path is not writable: " + path);
  of << out.dump(1) << "\n";
  return rows.size();
}

Certificate cmd_support(const RunConfig& cfg) {
  auto t0 = Clock::now();
  cfg.validate_shape();
  detail::require(cfg.weight.has_value(), "support requires --weight");
  auto rs = RootSystem::build(cfg.type, cfg.rank);
  Weight la{*cfg.weight};
  SupportVarietyDescriptor d = irreducible_support(*rs, la, cfg.ell, cfg.mode);

  Certificate cert;
  cert.command = "support";
  cert.inputs = config_echo(cfg);
  cert.outputs["type"] = std::string(1, cfg.type);
  cert.outputs["rank"] = cfg.rank;
  cert.outputs["ell"] = cfg.ell;
  cert.outputs["mode"] = to_string(cfg.mode);
  cert.outputs["weight"] = la.fw;
  cert.outputs["J"] = one_based(d.J);
  cert.outputs["conjugator_word"] = one_based(d.conjugator_word);
  cert.outputs["dimension"] = d.dimension;
  cert.outputs["conditional_on_LCF"] = d.conditional_on_LCF;
  cert.verdict = Verdict::Pass;
  cert.timing_ms = ms_since(t0);
  return cert;
}

int VerifyResult::exit_code() const {
  if (summary.failed > 0) return 1;
  if (summary.capacity > 0) return 3;
  return 0;
}

VerifyResult cmd_verify(const RunConfig& cfg) {
  auto t0 = Clock::now();
  cfg.validate_shape();
  detail::require(cfg.sweep_bound.has_value(), "verify requires --bound");
  auto rs = RootSystem::build(cfg.type, cfg.rank);
  rs->validate_ell(cfg.ell, cfg.mode);

  auto group = std::make_shared<AffineGroup>(rs, cfg.ell);
  KLTable table(group, cfg.max_kl_length);
  CacheLoad cache_load = load_cache(table, cfg.cache_path);

  std::vector<Weight> weights = sweep_weights(cfg.rank, *cfg.sweep_bound);
  std::vector<WeightOutcome> outcomes(weights.size());

  int jobs = std::min<int>(cfg.jobs, static_cast<int>(weights.size()));
  jobs = std::max(jobs, 1);
  if (jobs == 1) {
    for (std::size_t i = 0; i < weights.size(); ++i)
      outcomes[i] = verify_one(table, weights[i]);
  } else {
    // Sweep weights are pure work units.  Each worker owns a private KL
    // table seeded from the shared cache; tables merge at the join point.
    std::vector<KLTable::Entry> seed = table.export_entries();
    std::vector<std::unique_ptr<KLTable>> tables;
    std::vector<std::thread> threads;
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
      auto g = std::make_shared<AffineGroup>(rs, cfg.ell);
      tables.push_back(std::make_unique<KLTable>(g, cfg.max_kl_length));
      for (const auto& e : seed) tables.back()->import_entry(e.y, e.w, e.p);
    }
    for (int t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t]() {
        try {
          while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= weights.size()) break;
            outcomes[i] = verify_one(*tables[t], weights[i]);
          }
        } catch (const std::exception& e) {
          errors[static_cast<std::size_t>(t)] = e.what();
        }
      });
    }
    for (auto& th : threads) th.join();
    for (const std::string& e : errors)
      detail::ensure(e.empty(), "sweep worker failed: " + e);
    for (const auto& t : tables) table.merge_from(*t);
  }

  VerifyResult result;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    result.per_weight.push_back(outcomes[i].record);
    ++result.summary.total;
    switch (outcomes[i].verdict) {
      case Verdict::Pass:
        ++result.summary.passed;
        break;
      case Verdict::Fail:
        ++result.summary.failed;
        break;
      case Verdict::CapacityExceeded:
        ++result.summary.capacity;
        break;
    }
  }

  std::size_t stored = save_cache(table, cfg.cache_path);

  Certificate& cert = result.certificate;
  cert.command = "verify";
  cert.inputs = config_echo(cfg);
  Json summary;
  summary["total"] = result.summary.total;
  summary["passed"] = result.summary.passed;
  summary["failed"] = result.summary.failed;
  summary["capacity_exceeded"] = result.summary.capacity;
  if (result.summary.capacity > 0)
    summary["note"] =
        "sweep incomplete: some weights exceeded the KL length cap";
  cert.outputs["summary"] = summary;
  cert.outputs["per_weight"] = result.per_weight;
  cert.verdict = result.summary.failed > 0
                     ? Verdict::Fail
                     : (result.summary.capacity > 0
                            ? Verdict::CapacityExceeded
                            : Verdict::Pass);
  cert.cache["loaded_entries"] = cache_load.entries;
  cert.cache["hits"] = table.stats().hits;
  cert.cache["computed"] = table.stats().computed;
  cert.cache["stored_entries"] = stored;
  if (!cache_load.note.empty()) cert.cache["note"] = cache_load.note;
  cert.timing_ms = ms_since(t0);
  return result;
}

Certificate cmd_kl(const RunConfig& cfg, const std::string& y_spec,
                   const std::string& w_spec,
                   const std::optional<std::vector<int>>& parabolic_I) {
  auto t0 = Clock::now();
  cfg.validate_shape();
  auto rs = RootSystem::build(cfg.type, cfg.rank);
  auto group = std::make_shared<AffineGroup>(rs, cfg.ell);
  KLTable table(group, cfg.max_kl_length);
  CacheLoad cache_load = load_cache(table, cfg.cache_path);

  auto parse_element = [&](const std::string& spec) {
    if (spec.find('{') != std::string::npos) {
      Json j;
      try {
        j = Json::parse(spec);
      } catch (const Json::exception& e) {
        throw InvalidInputError(std::string("bad element JSON: ") + e.what());
      }
      return element_from_json(*group, j);
    }
    std::vector<int> word = parse_word(spec);
    for (int s : word)
      detail::require(s >= 0 && s <= cfg.rank,
                      "generator letters must lie in 0..n");
    return group->from_word(word);
  };

  AffineElement y = parse_element(y_spec);
  AffineElement w = parse_element(w_spec);
  KLPoly p = parabolic_I ? table.parabolic(*parabolic_I, y, w)
                         : table.kl(y, w);

  Certificate cert;
  cert.command = "kl";
  cert.inputs = config_echo(cfg);
  cert.inputs["y"] = y_spec;
  cert.inputs["w"] = w_spec;
  cert.outputs["y"] = element_to_json(*group, y);
  cert.outputs["w"] = element_to_json(*group, w);
  cert.outputs["parabolic_I"] = parabolic_I ? Json(*parabolic_I) : Json(nullptr);
  cert.outputs["coeffs"] = p.coeffs;
  cert.outputs["value_at_1"] = p.eval_one();
  cert.verdict = Verdict::Pass;
  cert.cache["loaded_entries"] = cache_load.entries;
  cert.cache["hits"] = table.stats().hits;
  cert.cache["computed"] = table.stats().computed;
  cert.cache["stored_entries"] = save_cache(table, cfg.cache_path);
  cert.timing_ms = ms_since(t0);
  return cert;
}

namespace {

void print_verify(const VerifyResult& r, OutputFormat format,
                  std::ostream& out) {
  switch (format) {
    case OutputFormat::Json:
      out << r.certificate.to_json().dump(1) << "\n";
      break;
    case OutputFormat::Csv: {
      out << "weight,s,derivative_identity,d_multiplicity,"
             "irreducible_multiplicity,verdict\n";
      for (const Json& rec : r.per_weight) {
        CoordVec w = rec.at("weight").get<CoordVec>();
        auto field = [&](const char* key) -> std::string {
          return rec.contains(key)
                     ? rec.at(key).at("verdict").get<std::string>()
                     : "n/a";
        };
        out << csv_escape_weight(w) << "," << rec.at("s").get<int>() << ","
            << field("derivative_identity") << "," << field("d_multiplicity")
            << "," << field("irreducible_multiplicity") << ","
            << rec.at("verdict").get<std::string>() << "\n";
      }
      out << "TOTAL," << r.summary.total << ",passed=" << r.summary.passed
          << ",failed=" << r.summary.failed
          << ",capacity=" << r.summary.capacity << ","
          << to_string(r.certificate.verdict) << "\n";
      break;
    }
    case OutputFormat::Text:
      for (const Json& rec : r.per_weight)
        out << "weight " << rec.at("weight").dump() << ": "
            << rec.at("verdict").get<std::string>() << "\n";
      out << "summary: " << r.summary.passed << "/" << r.summary.total
          << " passed, " << r.summary.failed << " failed, "
          << r.summary.capacity << " capacity-limited\n";
      break;
  }
}

void print_certificate(const Certificate& cert, OutputFormat format,
                       std::ostream& out) {
  if (format == OutputFormat::Text) {
    out << cert.command << ": " << to_string(cert.verdict) << "\n"
        << cert.outputs.dump(1) << "\n";
  } else {
    out << cert.to_json().dump(1) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"support varieties for small quantum group modules"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string type_str = "A";
  std::string mode_str = "quantum";
  std::string weight_str, format_str = "json";
  Coord bound = -1;
  app.add_option("--type", type_str, "simple type A..G");
  app.add_option("--rank", cfg.rank, "rank (1..8)");
  app.add_option("--ell", cfg.ell, "quantum level / prime parameter");
  app.add_option("--mode", mode_str, "quantum|modular");
  app.add_option("--weight", weight_str,
                 "dominant weight, comma-separated fundamental coordinates");
  app.add_option("--bound", bound, "sweep bound: coordinates in [0, bound]");
  app.add_option("--format", format_str, "json|csv|text");
  app.add_option("--cache", cfg.cache_path, "KL cache file")
      ->envname("QSV_CACHE");
  app.add_option("--max-kl-length", cfg.max_kl_length,
                 "capacity cap on l(w) for KL computations");
  app.add_option("--jobs", cfg.jobs, "parallel sweep workers");

  CLI::App* sub_support =
      app.add_subcommand("support", "support variety of an irreducible module");
  CLI::App* sub_verify =
      app.add_subcommand("verify", "run the identity/multiplicity sweep");
  CLI::App* sub_kl =
      app.add_subcommand("kl", "Kazhdan-Lusztig polynomial for a pair");
  std::string y_spec, w_spec, parabolic_str;
  sub_kl->add_option("--y", y_spec,
                     "element: generator word '1,0,2' (0 = affine) or JSON "
                     "{\"theta\":[..],\"word\":[..]}");
  sub_kl->add_option("--w", w_spec, "element, same format as --y");
  sub_kl->add_option("--parabolic", parabolic_str,
                     "generator indices of I for the parabolic polynomial");

  std::vector<const char*> argv;
  argv.push_back("qsv");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    Json j;
    j["error"] = {{"kind", "invalid_input"}, {"message", e.what()}};
    out << j.dump(1) << "\n";
    return 2;
  }

  try {
    detail::require(type_str.size() == 1 && type_str[0] >= 'A' &&
                        type_str[0] <= 'G',
                    "--type must be a single letter A..G");
    cfg.type = type_str[0];
    if (mode_str == "quantum")
      cfg.mode = ParamMode::Quantum;
    else if (mode_str == "modular")
      cfg.mode = ParamMode::Modular;
    else
      throw InvalidInputError("--mode must be quantum or modular");
    if (format_str == "json")
      cfg.format = OutputFormat::Json;
    else if (format_str == "csv")
      cfg.format = OutputFormat::Csv;
    else if (format_str == "text")
      cfg.format = OutputFormat::Text;
    else
      throw InvalidInputError("--format must be json, csv, or text");
    if (!weight_str.empty()) cfg.weight = parse_coords(weight_str);
    if (bound >= 0) cfg.sweep_bound = bound;

    if (sub_support->parsed()) {
      detail::require(cfg.format != OutputFormat::Csv,
                      "csv output is only available for verify sweeps");
      Certificate cert = cmd_support(cfg);
      print_certificate(cert, cfg.format, out);
      return 0;
    }
    if (sub_verify->parsed()) {
      VerifyResult r = cmd_verify(cfg);
      print_verify(r, cfg.format, out);
      return r.exit_code();
    }
    // kl
    detail::require(cfg.format != OutputFormat::Csv,
                    "csv output is only available for verify sweeps");
    detail::require(!y_spec.empty() && !w_spec.empty(),
                    "kl requires --y and --w");
    std::optional<std::vector<int>> I;
    if (!parabolic_str.empty()) I = parse_word(parabolic_str);
    Certificate cert = cmd_kl(cfg, y_spec, w_spec, I);
    print_certificate(cert, cfg.format, out);
    return 0;
  } catch (const InvalidInputError& e) {
    Json j;
    j["error"] = {{"kind", "invalid_input"}, {"message", e.what()}};
    out << j.dump(1) << "\n";
    return 2;
  } catch (const CapacityError& e) {
    Json j;
    j["error"] = {{"kind", "capacity"}, {"message", e.what()}};
    out << j.dump(1) << "\n";
    return 3;
  } catch (const InvariantViolationError& e) {
    Json j;
    j["error"] = {{"kind", "invariant_violation"}, {"message", e.what()}};
    out << j.dump(1) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cli
}  // namespace qsv
