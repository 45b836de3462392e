// hardylab run <config.json> [--out DIR] [--threads N] [--strict-tails]
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "app/app.hpp"
#include "hardylab/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kConfig = 2;

void report(const hardylab::app::json& summary, std::ostream& os) {
  for (const auto& e : summary.at("experiments")) {
    const bool pass = e.at("pass").get<bool>();
    os << (pass ? "PASS " : "FAIL ");
    if (e.contains("criterion")) os << "[" << e.at("criterion").get<int>() << "] ";
    os << e.at("name").get<std::string>() << " (" << e.at("kind").get<std::string>() << ")\n";
    if (e.contains("error")) os << "  error: " << e.at("error").get<std::string>() << "\n";
    for (const auto& c : e.at("checks")) {
      if (c.at("pass").get<bool>()) continue;
      os << "  violated: " << e.at("kind").get<std::string>() << "." << c.at("name").get<std::string>() << " = "
         << (c.contains("value") ? c.at("value") : c.at("runtime_s")).dump() << " " << c.at("relation").get<std::string>()
         << " " << c.at("threshold").dump() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardylab: numerical experiments on weighted estimates for Schrodinger evolutions"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run an experiment config");
  std::string config_path;
  std::string out_dir = "out";
  unsigned threads = 1;
  bool strict_tails = false;
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_flag("--strict-tails", strict_tails, "treat unresolved weighted tails as failures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  hardylab::app::RunOptions options;
  options.out_dir = out_dir;
  options.threads = threads;
  options.strict_tails = strict_tails;
  try {
    if (const char* env = std::getenv("HARDYLAB_SEED"); env != nullptr && *env != '\0') {
      std::size_t used = 0;
      unsigned long long seed = 0;
      try {
        seed = std::stoull(env, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != std::string(env).size() || env[0] == '-') {
        throw hardylab::Error(hardylab::ErrorKind::ConfigError, "HARDYLAB_SEED must be a nonnegative integer");
      }
      options.seed_override = seed;
    }
    const auto config = hardylab::app::load_config(config_path);
    const auto result = hardylab::app::run_config(config, options);
    report(result.summary, std::cout);
    std::cout << "summary: " << (std::filesystem::path(out_dir) / "summary.json").string() << "\n";
    return result.passed ? kOk : kAssertion;
  } catch (const hardylab::Error& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertion;
  }
}
