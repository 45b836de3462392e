// common.hpp - pass/fail bookkeeping, config access and file output shared by
// the experiment runners.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hardylab/analytic.hpp"
#include "hardylab/grid.hpp"
#include "json.hpp"

namespace hardylab::app {

using json = nlohmann::json;

enum class Relation { Less, LessEqual, GreaterEqual };

// One asserted invariant: value REL threshold. margin is signed so that
// margin >= 0 (or > 0 for Less) means the assertion holds.
struct Check {
  std::string name;
  double value = 0.0;
  Relation relation = Relation::Less;
  double threshold = 0.0;
  double margin = 0.0;
  bool pass = false;
  bool timing = false;  // value is a runtime; reported as runtime_s only
};

Check make_check(std::string name, double value, Relation relation, double threshold);
Check make_flag(std::string name, bool ok);
Check make_timing(std::string name, double seconds, double limit);
json to_json(const Check& check);

class CheckList {
 public:
  void add(Check check) { checks_.push_back(std::move(check)); }
  void add(std::string name, double value, Relation relation, double threshold) {
    add(make_check(std::move(name), value, relation, threshold));
  }
  void flag(std::string name, bool ok) { add(make_flag(std::move(name), ok)); }
  void timing(std::string name, double seconds, double limit) {
    add(make_timing(std::move(name), seconds, limit));
  }
  bool passed() const;
  json to_json() const;
  const std::vector<Check>& checks() const noexcept { return checks_; }

 private:
  std::vector<Check> checks_;
};

struct Context {
  std::filesystem::path out_dir;
  bool write_files = true;
  unsigned threads = 1;
  bool strict_tails = false;
  std::uint64_t seed = 20240101;
  std::string prefix;                // subdirectory of out_dir for this experiment
  std::vector<std::string> written;  // files written, relative to out_dir

  // Writes `content` to out_dir/prefix/name. Throws IoError naming the path.
  void write(const std::string& name, const std::string& content);
};

// Typed config access; a wrong type or a missing required key throws
// ConfigError naming the key.
double number(const json& j, const char* key, double fallback);
double number(const json& j, const char* key);
std::size_t count(const json& j, const char* key, std::size_t fallback);
bool boolean(const json& j, const char* key, bool fallback);
std::string text(const json& j, const char* key, const std::string& fallback);
std::vector<double> numbers(const json& j, const char* key, const std::vector<double>& fallback);
const json& object(const json& j, const char* key);

// Either a number or a [re, im] pair.
cplx complex_number(const json& j, const char* key, cplx fallback);
// {"L": half width, "N": points}
Grid parse_grid(const json& j, double half_width, std::size_t points);
// {"c": ..., "amplitude": ...}, both possibly complex.
GaussianState parse_gaussian(const json& j, cplx c);
// {"t0", "t1", "steps"}: steps + 1 uniform times.
std::vector<double> parse_times(const json& j, double t0, double t1, std::size_t steps);

// JSON has no NaN or infinity; those are spelled out as strings.
json number_json(double v);

// Drops every "runtime_s" key, recursively.
json strip_runtimes(json j);

}  // namespace hardylab::app
