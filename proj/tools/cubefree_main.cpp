// cubefree: command-line front end for the cube-free toolkit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cubefree/cache.hpp"
#include "cubefree/commands.hpp"

using namespace cubefree;

namespace {

// A parameter-misuse error detected after parsing; exits with the usage code.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutputFlags {
  bool json = false;
  bool csv = false;
  std::string out;
};

void add_output_flags(CLI::App* sub, OutputFlags& f) {
  auto* json = sub->add_flag("--json", f.json, "Emit JSON");
  auto* csv = sub->add_flag("--csv", f.csv, "Emit CSV with a header row");
  json->excludes(csv);
  sub->add_option("--out", f.out, "Write output to FILE instead of stdout");
}

class Sink {
 public:
  explicit Sink(const OutputFlags& flags) {
    if (!flags.out.empty()) {
      file_.open(flags.out);
      if (!file_) throw std::runtime_error("cannot open " + flags.out + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct ProblemFlags {
  std::optional<std::int64_t> cyclic;
  std::optional<std::int64_t> interval;
  std::optional<int> cube;
  std::optional<int> pair;
  std::optional<int> diag;
  bool include_zero = false;
};

void add_problem_flags(CLI::App* sub, ProblemFlags& f) {
  auto* cyclic = sub->add_option("--cyclic", f.cyclic, "Work in Z_N");
  auto* interval = sub->add_option("--interval", f.interval, "Work in [N] = {1..N}");
  cyclic->excludes(interval);
  auto* cube = sub->add_option("--d,--cube", f.cube, "Forbid projective d-cubes");
  auto* pair = sub->add_option("--pair", f.pair, "Forbid {x, dx}");
  auto* diag = sub->add_option("--diag", f.diag, "Forbid {x, 2x, ..., (d-1)x}");
  cube->excludes(pair)->excludes(diag);
  pair->excludes(diag);
  sub->add_flag("--include-zero", f.include_zero, "With --diag on Z_N: also forbid x = 0");
}

Problem build_problem(const ProblemFlags& f) {
  if (!f.cyclic && !f.interval) throw UsageError("one of --cyclic N or --interval N is required");
  const auto ambient = f.cyclic ? Ambient::cyclic(*f.cyclic) : Ambient::interval(*f.interval);
  Problem problem{ProblemKind::CubeFree, 0, ambient};
  if (f.cube) {
    problem.d = *f.cube;
  } else if (f.pair) {
    problem.kind = ProblemKind::PairFree;
    problem.d = *f.pair;
  } else if (f.diag) {
    problem.kind = ProblemKind::DiagonalFree;
    problem.d = *f.diag;
  } else {
    throw UsageError("one of --d/--cube, --pair or --diag is required");
  }
  if (f.include_zero) {
    if (problem.kind != ProblemKind::DiagonalFree || !ambient.is_cyclic()) {
      throw UsageError("--include-zero applies to --diag on a cyclic ambient");
    }
    problem.include_zero = true;
  }
  problem.validate();
  return problem;
}

std::string join(const std::vector<Element>& xs, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

std::string join_json(const Json& array) { return join(array.get<std::vector<Element>>()); }

// ---- check ---------------------------------------------------------------

struct CheckArgs {
  ProblemFlags problem;
  OutputFlags output;
  std::string set;
  std::string set_file;
};

int cmd_check(const CheckArgs& args) {
  const auto problem = build_problem(args.problem);
  std::string text = args.set;
  if (!args.set_file.empty()) {
    std::ifstream in(args.set_file);
    if (!in) throw UsageError("cannot read set file " + args.set_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  DenseSet set(problem.ambient);
  try {
    set = parse_set(problem.ambient, text);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  const auto outcome = run_check(problem, set);
  Sink sink(args.output);
  auto& os = sink.stream();
  if (args.output.csv) {
    os << "ambient,N,pattern,d,free,witness\n";
    const auto& r = outcome.report;
    std::string witness;
    if (!outcome.free) {
      const auto& w = r["witness"];
      if (w.contains("generator")) {
        witness = "generator=" + join_json(w["generator"]) + ";cube=" + join_json(w["cube"]);
      } else if (w.contains("pattern")) {
        witness = "x=" + std::to_string(w["x"].get<Element>()) + ";pattern=" + join_json(w["pattern"]);
      } else {
        witness = "x=" + std::to_string(w["x"].get<Element>()) + ";dx=" + std::to_string(w["dx"].get<Element>());
      }
    }
    os << r["ambient"].get<std::string>() << ',' << r["N"] << ',' << r["pattern"].get<std::string>() << ','
       << r["d"] << ',' << (outcome.free ? "true" : "false") << ',' << witness << '\n';
  } else {
    os << outcome.report.dump(2) << '\n';
  }
  return outcome.free ? kExitOk : kExitViolation;
}

// ---- max -----------------------------------------------------------------

struct MaxArgs {
  ProblemFlags problem;
  OutputFlags output;
  std::string method = "auto";
  std::optional<std::int64_t> cap;
  bool force = false;
  int workers = 1;
  std::optional<std::int64_t> time_limit_ms;
  bool cross_check = false;
  bool no_cache = false;
  std::string cache_path;
};

MethodChoice parse_method(const std::string& name) {
  if (name == "auto") return MethodChoice::Auto;
  if (name == "brute") return MethodChoice::BruteForce;
  if (name == "bnb") return MethodChoice::BranchAndBound;
  if (name == "dp") return MethodChoice::DP;
  throw UsageError("unknown method '" + name + "'");
}

std::filesystem::path cache_path(const std::string& flag) {
  return flag.empty() ? default_cache_path() : std::filesystem::path(flag);
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

int cmd_max(const MaxArgs& args, const std::string& command_line) {
  MaxRequest request{build_problem(args.problem)};
  request.method = parse_method(args.method);
  request.cap = args.cap;
  request.force = args.force;
  request.workers = args.workers;
  if (args.time_limit_ms) request.time_limit = std::chrono::milliseconds(*args.time_limit_ms);
  request.cross_check = args.cross_check;

  const auto key = fingerprint(request);
  std::optional<ResultCache> cache;
  if (!args.no_cache) cache.emplace(cache_path(args.cache_path), warn);

  Json payload;
  std::optional<SearchResult> fresh;
  if (cache) {
    if (auto hit = cache->lookup(key)) {
      payload = hit->payload;
      payload["cached"] = true;
    }
  }
  if (payload.is_null()) {
    fresh = run_max(request);
    payload = to_json(*fresh);
    if (cache) {
      RunRecord record;
      record.timestamp = utc_timestamp();
      record.command = command_line;
      record.fingerprint = key;
      record.payload = payload;
      cache->append(record);
    }
    payload["cached"] = false;
  }

  Sink sink(args.output);
  auto& os = sink.stream();
  if (args.output.csv) {
    os << search_csv_header() << '\n';
    if (fresh) {
      os << search_csv_row(*fresh) << '\n';
    } else {
      const auto& p = payload;
      os << p["problem"].get<std::string>() << ',' << p["ambient"].get<std::string>() << ',' << p["N"] << ','
         << p["d"] << ',' << p["max"] << ',' << p["method"].get<std::string>() << ',' << p["explored"] << ','
         << (p["optimal"].get<bool>() ? "true" : "false") << ',' << p["elapsed_ms"] << ','
         << join_json(p["witness"]) << '\n';
    }
  } else {
    os << payload.dump(2) << '\n';
  }
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string claim;
  OutputFlags output;
  std::string n, d, p, l;
  std::string tuples;
  std::int64_t brute_cap = kDefaultBruteForceCap;
  std::int64_t bnb_cap = kDefaultBranchAndBoundCap;
  int workers = 1;
  bool no_cache = false;
  bool list = false;
};

int cmd_list_claims() {
  for (const auto& c : claim_catalogue()) {
    std::cout << c.id << "  (";
    for (std::size_t i = 0; i < c.params.size(); ++i) {
      std::cout << (i ? ", " : "") << c.params[i] << '=' << c.defaults[i];
    }
    std::cout << ")\n    " << c.summary << '\n';
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args) {
  if (args.list) return cmd_list_claims();
  if (args.claim.empty()) throw UsageError("verify needs a claim id (see verify --list)");
  const auto* claim = find_claim(args.claim);
  if (!claim) throw UsageError("unknown claim id '" + args.claim + "' (see verify --list)");

  VerifyRequest request;
  request.claim = args.claim;
  request.workers = args.workers;
  request.context.brute_force_cap = args.brute_cap;
  request.context.branch_and_bound_cap = args.bnb_cap;
  const std::pair<const char*, const std::string*> ranges[] = {
      {"N", &args.n}, {"d", &args.d}, {"p", &args.p}, {"l", &args.l}};
  for (const auto& [name, value] : ranges) {
    if (value->empty()) continue;
    const bool known = std::find(claim->params.begin(), claim->params.end(), name) != claim->params.end();
    if (!known) throw UsageError("claim " + args.claim + " has no parameter " + name);
    request.points.ranges.emplace_back(name, *value);
  }
  if (!args.tuples.empty()) request.points.tuples = parse_tuples(args.tuples);

  Sink sink(args.output);
  auto& os = sink.stream();
  if (args.output.csv) os << verdict_csv_header() << '\n';
  const auto summary = run_verify(request, [&](const Verdict& v) {
    if (args.output.json) {
      os << to_json(v).dump() << '\n';
    } else if (args.output.csv) {
      os << verdict_csv_row(v) << '\n';
    } else {
      os << verdict_text(v) << '\n';
    }
    os.flush();
  });
  if (args.output.json) {
    os << Json{{"summary", {{"claim", summary.claim},
                            {"total", summary.total},
                            {"passed", summary.passed},
                            {"failed", summary.failed},
                            {"pass", summary.ok()}}}}
              .dump()
       << '\n';
  } else if (args.output.csv) {
    std::cerr << summary_line(summary) << '\n';
  } else {
    os << summary_line(summary) << '\n';
  }
  return summary.ok() ? kExitOk : kExitViolation;
}

// ---- construct -----------------------------------------------------------

struct ConstructArgs {
  ConstructRequest request;
  OutputFlags output;
  bool cyclic = false;
};

void construct_csv(std::ostream& os, const Json& j) {
  const auto& name = j["construction"].get<std::string>();
  if (j.contains("elements")) {
    os << "element\n";
    for (const auto& e : j["elements"]) os << e << '\n';
  } else if (name == "chains") {
    os << "chain,elements\n";
    std::size_t i = 0;
    for (const auto& chain : j["chains"]) os << ++i << ',' << join_json(chain) << '\n';
  } else if (name == "layers") {
    os << "layer,elements\n";
    for (const auto& [index, layer] : j["layers"].items()) os << index << ',' << join_json(layer) << '\n';
  } else if (name == "blocks") {
    os << "block,first_layer,last_layer,elements\n";
    std::size_t i = 0;
    for (const auto& b : j["blocks"]) {
      os << ++i << ',' << b["layers"][0] << ',' << b["layers"][1] << ',' << join_json(b["elements"]) << '\n';
    }
  } else if (name == "matrix") {
    os << "m,row,col\n";
    for (const auto& r : j["rows"]) os << r["m"] << ',' << r["row"] << ',' << r["col"] << '\n';
  }
}

int cmd_construct(ConstructArgs args) {
  if (args.cyclic) args.request.ambient = AmbientKind::Cyclic;
  const auto j = run_construct(args.request);
  Sink sink(args.output);
  if (args.output.csv) {
    construct_csv(sink.stream(), j);
  } else {
    sink.stream() << j.dump(2) << '\n';
  }
  return kExitOk;
}

// ---- cache ---------------------------------------------------------------

int cmd_cache(const std::string& action, const std::string& path_flag) {
  ResultCache cache(cache_path(path_flag), warn);
  if (action == "list") {
    for (const auto& r : cache.records()) std::cout << to_json(r).dump() << '\n';
  } else if (action == "clear") {
    cache.clear();
  } else if (action == "path") {
    std::cout << cache.path().string() << '\n';
  } else {
    throw UsageError("unknown cache action '" + action + "' (expected list, clear or path)");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cube-free subsets of Z_N and [N]: checks, exact maxima, claim sweeps and constructions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string command_line;
  for (int i = 1; i < argc; ++i) command_line += (i > 1 ? " " : "") + std::string(argv[i]);

  std::function<int()> action;

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Test a set for a forbidden pattern");
  add_problem_flags(check_cmd, check.problem);
  add_output_flags(check_cmd, check.output);
  auto* set_opt = check_cmd->add_option("--set", check.set, "Inline set, e.g. 1,2,4,5");
  auto* set_file = check_cmd->add_option("--set-file", check.set_file, "File listing the set");
  set_opt->excludes(set_file);
  check_cmd->callback([&] {
    if (check_cmd->count("--set") == 0 && check_cmd->count("--set-file") == 0) {
      throw CLI::RequiredError("--set or --set-file");
    }
    action = [&] { return cmd_check(check); };
  });

  MaxArgs max;
  auto* max_cmd = app.add_subcommand("max", "Exact maximum pattern-free subset");
  add_problem_flags(max_cmd, max.problem);
  add_output_flags(max_cmd, max.output);
  max_cmd->add_option("--method", max.method, "auto, brute, bnb or dp")->capture_default_str();
  max_cmd->add_option("--cap", max.cap, "Largest N the solver accepts");
  max_cmd->add_flag("--force", max.force, "Lift the cap to the solver's hard limit");
  max_cmd->add_option("--workers", max.workers, "Branch and bound worker threads")->check(CLI::PositiveNumber);
  max_cmd->add_option("--time-limit", max.time_limit_ms, "Stop after MS milliseconds (result marked non-optimal)");
  max_cmd->add_flag("--cross-check", max.cross_check, "Confirm the size by brute force");
  max_cmd->add_flag("--no-cache", max.no_cache, "Neither read nor write the result cache");
  max_cmd->add_option("--cache", max.cache_path, "Cache file (default $CUBEFREE_CACHE or ./cubefree-cache.jsonl)");
  max_cmd->callback([&] { action = [&] { return cmd_max(max, command_line); }; });

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Sweep a catalogued claim over parameter points");
  verify_cmd->add_option("claim", verify.claim, "Claim id");
  verify_cmd->add_flag("--list", verify.list, "List claim ids and default ranges");
  add_output_flags(verify_cmd, verify.output);
  verify_cmd->add_option("--N", verify.n, "Range for N, e.g. 3..15 or 25,49");
  verify_cmd->add_option("--d", verify.d, "Range for d");
  verify_cmd->add_option("--p", verify.p, "Range for p");
  verify_cmd->add_option("--l", verify.l, "Range for l");
  verify_cmd->add_option("--pairs,--tuples", verify.tuples, "Explicit points, e.g. (25,5),(49,7)");
  verify_cmd->add_option("--brute-cap", verify.brute_cap, "Brute force cap")->capture_default_str();
  verify_cmd->add_option("--cap", verify.bnb_cap, "Branch and bound cap")->capture_default_str();
  verify_cmd->add_option("--workers", verify.workers, "Parameter points evaluated in parallel")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--no-cache", verify.no_cache, "Accepted for symmetry; verify never caches");
  verify_cmd->callback([&] { action = [&] { return cmd_verify(verify); }; });

  ConstructArgs construct;
  auto* construct_cmd = app.add_subcommand("construct", "Emit a construction");
  construct_cmd->add_option("name", construct.request.name,
                            "residue, interval, alternating, chains, layers, blocks or matrix")
      ->required();
  add_output_flags(construct_cmd, construct.output);
  construct_cmd->add_option("--N", construct.request.n, "Order N");
  construct_cmd->add_option("--d", construct.request.d, "Pattern parameter d");
  construct_cmd->add_option("--p", construct.request.p, "Prime p (prime-power layers, blocks)");
  construct_cmd->add_option("--l", construct.request.l, "Exponent l");
  construct_cmd->add_option("--upto", construct.request.upto, "Matrix listing for m = 1..upto");
  construct_cmd->add_flag("--cyclic", construct.cyclic, "interval: reduce into Z_N instead of [N]");
  construct_cmd->callback([&] { action = [&] { return cmd_construct(construct); }; });

  std::string cache_action;
  std::string cache_flag;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the result cache");
  cache_cmd->add_option("action", cache_action, "list, clear or path")->required();
  cache_cmd->add_option("--cache", cache_flag, "Cache file");
  cache_cmd->callback([&] { action = [&] { return cmd_cache(cache_action, cache_flag); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (use --force or --cap to override)\n";
    return kExitCapExceeded;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}
