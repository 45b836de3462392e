#include <chrono>
#include <fstream>
#include <set>

#include "app/app.hpp"
#include "app/experiments.hpp"
#include "hardylab/errors.hpp"

namespace hardylab::app {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240101;

struct Entry {
  std::string name;
  std::string kind;
  std::optional<int> criterion;
  Job job;                              // module experiments
  std::vector<std::string> replay;      // determinism: entries to repeat
  std::size_t repeats = 2;
};

json run_entry(const Entry& e, Context& ctx) {
  json summary = {{"name", e.name}, {"kind", e.kind}};
  if (e.criterion) summary["criterion"] = *e.criterion;
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const std::size_t written_before = ctx.written.size();
  try {
    e.job(ctx, out);
    summary["pass"] = out.checks.passed();
  } catch (const std::exception& err) {
    summary["pass"] = false;
    summary["error"] = err.what();
  }
  summary["checks"] = out.checks.to_json();
  summary["results"] = out.results;
  summary["files"] = std::vector<std::string>(ctx.written.begin() + static_cast<std::ptrdiff_t>(written_before),
                                              ctx.written.end());
  summary["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

json run_silently(const std::vector<const Entry*>& entries, const Context& parent) {
  Context ctx = parent;
  ctx.write_files = false;
  ctx.written.clear();
  json all = json::array();
  for (const auto* e : entries) {
    ctx.prefix = e->name;
    all.push_back(run_entry(*e, ctx));
  }
  return strip_runtimes(all);
}

Entry prepare_entry(const json& cfg, const std::string& fallback_name) {
  if (!cfg.is_object()) throw Error(ErrorKind::ConfigError, "each experiment must be a JSON object");
  Entry e;
  e.name = text(cfg, "name", fallback_name);
  e.kind = text(cfg, "kind", "");
  if (e.kind.empty()) throw Error(ErrorKind::ConfigError, "experiment '" + e.name + "' has no kind");
  if (cfg.contains("criterion")) e.criterion = static_cast<int>(count(cfg, "criterion", 0));
  const auto& params = object(cfg, "params");
  if (e.kind == "determinism") {
    if (params.contains("experiments")) {
      for (const auto& v : params.at("experiments")) {
        if (!v.is_string()) throw Error(ErrorKind::ConfigError, "determinism.experiments must list names");
        e.replay.push_back(v.get<std::string>());
      }
    }
    e.repeats = count(params, "repeats", 2);
    if (e.repeats < 2) throw Error(ErrorKind::ParameterOutOfRange, "determinism.repeats must be 2 or more");
    return e;
  }
  try {
    e.job = prepare_module(e.kind, params);
  } catch (const Error& err) {
    // Keep the kind, prefix the experiment so the message names it.
    throw Error(err.kind(), err.detail() + " (experiment '" + e.name + "')");
  }
  return e;
}

}  // namespace

json load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::ConfigError, "cannot read config " + path.string());
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, path.string() + ": " + e.what());
  }
}

RunResult run_config(const json& config, const RunOptions& options) {
  if (!config.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");
  const std::string kind = text(config, "kind", "");
  const std::string name = text(config, "name", kind);
  std::uint64_t seed = kDefaultSeed;
  if (config.contains("seed")) {
    if (!config.at("seed").is_number_unsigned()) throw Error(ErrorKind::ConfigError, "config key 'seed' must be a nonnegative integer");
    seed = config.at("seed").get<std::uint64_t>();
  }
  if (options.seed_override) seed = *options.seed_override;
  if (options.threads == 0) throw Error(ErrorKind::ParameterOutOfRange, "threads must be positive");

  // Validation pass: everything is parsed before anything runs.
  std::vector<Entry> entries;
  if (kind == "acceptance-suite") {
    if (!config.contains("experiments") || !config.at("experiments").is_array()) {
      throw Error(ErrorKind::ConfigError, "acceptance-suite needs an 'experiments' array");
    }
    std::set<std::string> names;
    for (const auto& e : config.at("experiments")) {
      entries.push_back(prepare_entry(e, "experiment" + std::to_string(entries.size())));
      if (!names.insert(entries.back().name).second) {
        throw Error(ErrorKind::ConfigError, "duplicate experiment name '" + entries.back().name + "'");
      }
    }
    for (const auto& e : entries) {
      for (const auto& r : e.replay) {
        const bool known = names.count(r) && std::none_of(entries.begin(), entries.end(), [&](const Entry& x) {
                             return x.name == r && x.kind == "determinism";
                           });
        if (!known) throw Error(ErrorKind::ConfigError, "determinism replays unknown experiment '" + r + "'");
      }
    }
  } else if (kind == "determinism") {
    throw Error(ErrorKind::ConfigError, "determinism is only available inside an acceptance-suite");
  } else {
    json single = {{"name", name}, {"kind", kind}, {"params", object(config, "params")}};
    entries.push_back(prepare_entry(single, name));
  }

  if (options.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec || !std::filesystem::is_directory(options.out_dir)) {
      throw Error(ErrorKind::IoError, "cannot create output directory " + options.out_dir.string());
    }
  }

  Context ctx;
  ctx.out_dir = options.out_dir;
  ctx.write_files = options.write_files;
  ctx.threads = options.threads;
  ctx.strict_tails = options.strict_tails;
  ctx.seed = seed;

  const auto start = std::chrono::steady_clock::now();
  json experiments = json::array();
  bool passed = true;
  const bool suite = kind == "acceptance-suite";
  for (const auto& e : entries) {
    ctx.prefix = suite ? e.name : "";
    json s;
    if (e.kind == "determinism") {
      std::vector<const Entry*> replay;
      for (const auto& x : entries) {
        const bool wanted = e.replay.empty() ? x.kind != "determinism"
                                             : std::find(e.replay.begin(), e.replay.end(), x.name) != e.replay.end();
        if (wanted) replay.push_back(&x);
      }
      const auto t0 = std::chrono::steady_clock::now();
      const std::string first = run_silently(replay, ctx).dump();
      std::size_t identical = 1;
      for (std::size_t r = 1; r < e.repeats; ++r) {
        if (run_silently(replay, ctx).dump() == first) ++identical;
      }
      CheckList checks;
      checks.add("identical_repeats", static_cast<double>(identical), Relation::GreaterEqual,
                 static_cast<double>(e.repeats));
      std::vector<std::string> names;
      for (const auto* x : replay) names.push_back(x->name);
      s = {{"name", e.name}, {"kind", e.kind}, {"pass", checks.passed()}, {"checks", checks.to_json()},
           {"results", {{"experiments", names}, {"repeats", e.repeats}, {"summary_bytes", first.size()}}},
           {"files", json::array()},
           {"runtime_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
      if (e.criterion) s["criterion"] = *e.criterion;
    } else {
      s = run_entry(e, ctx);
    }
    passed = passed && s.at("pass").get<bool>();
    experiments.push_back(std::move(s));
  }

  RunResult result;
  result.passed = passed;
  result.summary = {{"name", name},
                    {"kind", kind},
                    {"seed", seed},
                    {"strict_tails", options.strict_tails},
                    {"pass", passed},
                    {"experiments", experiments},
                    {"runtime_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  ctx.prefix.clear();
  ctx.write("summary.json", result.summary.dump(2) + "\n");
  return result;
}

}  // namespace hardylab::app
