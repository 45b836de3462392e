#include "app/common.hpp"

#include <cmath>
#include <fstream>

#include "hardylab/errors.hpp"

namespace hardylab::app {

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

[[noreturn]] void bad_key(const char* key, const char* expected) {
  throw Error(ErrorKind::ConfigError, std::string("config key '") + key + "' must be " + expected);
}

}  // namespace

json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Check make_check(std::string name, double value, Relation relation, double threshold) {
  Check c{std::move(name), value, relation, threshold, 0.0, false};
  c.margin = relation == Relation::GreaterEqual ? value - threshold : threshold - value;
  if (std::isnan(value)) {
    c.pass = false;
  } else if (relation == Relation::Less) {
    c.pass = value < threshold;
  } else if (relation == Relation::LessEqual) {
    c.pass = value <= threshold;
  } else {
    c.pass = value >= threshold;
  }
  return c;
}

Check make_flag(std::string name, bool ok) {
  return make_check(std::move(name), ok ? 1.0 : 0.0, Relation::GreaterEqual, 1.0);
}

Check make_timing(std::string name, double seconds, double limit) {
  Check c = make_check(std::move(name), seconds, Relation::Less, limit);
  c.timing = true;
  return c;
}

json to_json(const Check& c) {
  if (c.timing) {
    return {{"name", c.name},
            {"relation", relation_name(c.relation)},
            {"threshold", number_json(c.threshold)},
            {"runtime_s", number_json(c.value)},
            {"pass", c.pass}};
  }
  return {{"name", c.name},
          {"value", number_json(c.value)},
          {"relation", relation_name(c.relation)},
          {"threshold", number_json(c.threshold)},
          {"margin", number_json(c.margin)},
          {"pass", c.pass}};
}

bool CheckList::passed() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

json CheckList::to_json() const {
  json out = json::array();
  for (const auto& c : checks_) out.push_back(app::to_json(c));
  return out;
}

void Context::write(const std::string& name, const std::string& content) {
  if (!write_files) return;
  const std::string rel = prefix.empty() ? name : prefix + "/" + name;
  const auto path = out_dir / rel;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  os << content;
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + path.string());
  written.push_back(rel);
}

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return number(j, key);
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ConfigError, std::string("config key '") + key + "' is required");
  const auto& v = j.at(key);
  if (!v.is_number()) bad_key(key, "a number");
  return v.get<double>();
}

std::size_t count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad_key(key, "a nonnegative integer");
  return v.get<std::size_t>();
}

bool boolean(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_boolean()) bad_key(key, "true or false");
  return v.get<bool>();
}

std::string text(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_string()) bad_key(key, "a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& j, const char* key, const std::vector<double>& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_array()) bad_key(key, "an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad_key(key, "an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

const json& object(const json& j, const char* key) {
  static const json empty = json::object();
  if (!j.contains(key)) return empty;
  const auto& v = j.at(key);
  if (!v.is_object()) bad_key(key, "an object");
  return v;
}

cplx complex_number(const json& j, const char* key, cplx fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  bad_key(key, "a number or a [re, im] pair");
}

Grid parse_grid(const json& j, double half_width, std::size_t points) {
  return Grid(number(j, "L", half_width), count(j, "N", points));
}

GaussianState parse_gaussian(const json& j, cplx c) {
  GaussianState g{complex_number(j, "c", c), complex_number(j, "amplitude", 1.0)};
  if (!(g.c.real() > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "initial.c must have positive real part");
  return g;
}

std::vector<double> parse_times(const json& j, double t0, double t1, std::size_t steps) {
  t0 = number(j, "t0", t0);
  t1 = number(j, "t1", t1);
  steps = count(j, "steps", steps);
  if (!(t1 > t0)) throw Error(ErrorKind::ParameterOutOfRange, "times.t1 must exceed times.t0");
  if (steps < 1) throw Error(ErrorKind::ParameterOutOfRange, "times.steps must be positive");
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    t[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(steps);
  }
  t.back() = t1;
  return t;
}

json strip_runtimes(json j) {
  if (j.is_object()) {
    j.erase("runtime_s");
    for (auto& [k, v] : j.items()) v = strip_runtimes(std::move(v));
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_runtimes(std::move(v));
  }
  return j;
}

}  // namespace hardylab::app
