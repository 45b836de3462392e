#include "app/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "hardylab/analytic.hpp"
#include "hardylab/appell.hpp"
#include "hardylab/carleman.hpp"
#include "hardylab/convexity.hpp"
#include "hardylab/counterexample.hpp"
#include "hardylab/csv.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/propagator.hpp"
#include "hardylab/weight.hpp"

namespace hardylab::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Independent stream per section so adding a section never shifts another.
std::mt19937_64 section_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Sum of one to three Gaussian wave packets.
ComplexField random_packets(const Grid& g, std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  std::normal_distribution<double> normal;
  struct Packet {
    cplx amplitude;
    double c, x0, k;
  };
  std::vector<Packet> packets;
  for (int j = 0; j < n; ++j) {
    const cplx amp(normal(rng), normal(rng));
    const double c = uniform(rng, 0.5, 2.0);
    const double x0 = uniform(rng, -2.0, 2.0);
    const double k = uniform(rng, -2.0, 2.0);
    packets.push_back({amp, c, x0, k});
  }
  return ComplexField::sample(g, [&](double x) {
    cplx sum = 0.0;
    for (const auto& p : packets) sum += p.amplitude * std::exp(cplx(-p.c * (x - p.x0) * (x - p.x0), p.k * x));
    return sum;
  });
}

SpaceTimeField analytic_run(const Grid& g, const GaussianState& init, double A, double B,
                            const std::vector<double>& times) {
  std::vector<ComplexField> slices;
  for (const auto& s : evolve_gaussian_path(init, A, B, times)) slices.push_back(s.sample(g));
  return SpaceTimeField(g, times, std::move(slices));
}

FlowSpec plain_flow(double A, double B, const Grid& g) {
  FlowSpec f;
  f.A = A;
  f.B = B;
  validate(f, g);
  return f;
}

// Rejects weights that beat the decay of the Gaussian anywhere on the run.
void require_weight_finite(const GaussianState& init, double A, double B, const std::vector<double>& times,
                           double gamma, const char* who) {
  for (const auto& s : evolve_gaussian_path(init, A, B, times)) {
    if (!(s.c.real() > gamma)) {
      throw Error(ErrorKind::ParameterOutOfRange,
                  std::string(who) + ".γ is not below the decay rate of u(t) on the requested times");
    }
  }
}

std::vector<json> array(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& v = j.at(key);
  if (!v.is_array()) throw Error(ErrorKind::ConfigError, std::string("config key '") + key + "' must be an array");
  return {v.begin(), v.end()};
}

CarlemanOperator parse_operator(const std::string& name) {
  if (name == "schrodinger") return CarlemanOperator::Schrodinger;
  if (name == "parabolic") return CarlemanOperator::Parabolic;
  throw Error(ErrorKind::ConfigError, "operator must be \"schrodinger\" or \"parabolic\", got \"" + name + "\"");
}

std::vector<CarlemanOperator> parse_operators(const json& j) {
  std::vector<CarlemanOperator> ops;
  if (!j.contains("operators")) return {CarlemanOperator::Schrodinger, CarlemanOperator::Parabolic};
  for (const auto& v : array(j, "operators")) {
    if (!v.is_string()) throw Error(ErrorKind::ConfigError, "operators must be strings");
    ops.push_back(parse_operator(v.get<std::string>()));
  }
  if (ops.empty()) throw Error(ErrorKind::ConfigError, "operators must not be empty");
  return ops;
}

const char* operator_name(CarlemanOperator op) {
  return op == CarlemanOperator::Schrodinger ? "schrodinger" : "parabolic";
}

// ---------------------------------------------------------------- evolve

struct EvolutionSection {
  FlowSpec flow;
  std::vector<double> times;
  double max_step = kDefaultTimeStep;
  double tolerance = 1e-8;
  std::optional<double> max_runtime;
};

struct SemigroupSection {
  std::size_t pairs = 20;
  double re_max = 0.5;
  double im_max = 1.0;
  double tolerance = 1e-12;
};

struct DecayCase {
  FlowSpec flow;
  double gamma = 0.5;
  double T = 1.0;
  std::size_t samples = 101;
  double tolerance = 1e-8;
};

}  // namespace

Job prepare_evolve(const json& p) {
  const Grid grid = parse_grid(object(p, "grid"), 20.0, 1024);
  const GaussianState init = parse_gaussian(object(p, "initial"), 1.0);

  std::optional<EvolutionSection> evolution;
  if (p.contains("evolution")) {
    const auto& e = object(p, "evolution");
    EvolutionSection s;
    s.flow.A = number(e, "A", 0.0);
    s.flow.B = number(e, "B", 1.0);
    if (e.contains("potential")) {
      const auto& v = object(e, "potential");
      const double strength = number(v, "strength");
      const double width = number(v, "width", 1.0);
      require_positive(width, "potential.width");
      std::vector<double> samples(grid.points());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = strength * std::exp(-grid.x(i) * grid.x(i) / (width * width));
      }
      s.flow.static_potential = std::move(samples);
    }
    validate(s.flow, grid);
    s.times = parse_times(object(e, "times"), 0.0, 1.0, 10);
    s.max_step = number(e, "max_step", kDefaultTimeStep);
    require_positive(s.max_step, "evolution.max_step");
    s.tolerance = number(e, "oracle_tolerance", 1e-8);
    if (e.contains("max_runtime_s")) s.max_runtime = number(e, "max_runtime_s");
    evolution = s;
  }

  std::optional<SemigroupSection> semigroup;
  if (p.contains("semigroup")) {
    const auto& e = object(p, "semigroup");
    SemigroupSection s;
    s.pairs = count(e, "pairs", 20);
    s.re_max = number(e, "re_max", 0.5);
    s.im_max = number(e, "im_max", 1.0);
    s.tolerance = number(e, "tolerance", 1e-12);
    if (!(s.re_max >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "semigroup.re_max");
    if (!(s.im_max >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "semigroup.im_max");
    semigroup = s;
  }

  std::vector<DecayCase> decay;
  for (const auto& e : array(p, "decay_bounds")) {
    DecayCase d;
    d.flow.A = number(e, "A", 1.0);
    d.flow.B = number(e, "B", 0.0);
    require_positive(d.flow.A, "decay_bounds.A");
    validate(d.flow, grid);
    d.gamma = number(e, "gamma", 0.5);
    require_positive(d.gamma, "weight.γ");
    d.T = number(e, "T", 1.0);
    require_positive(d.T, "decay_bounds.T");
    d.samples = count(e, "time_samples", 101);
    d.tolerance = number(e, "tolerance", 1e-8);
    decay.push_back(std::move(d));
  }

  return [=](Context& ctx, Outcome& out) {
    const ComplexField u0 = init.sample(grid);
    if (evolution) {
      const auto& s = *evolution;
      const auto start = Clock::now();
      const auto u = split_step_flow(u0, s.flow, s.times, s.max_step);
      const double elapsed = seconds_since(start);
      const bool oracle = !s.flow.has_potential();
      std::vector<GaussianState> exact;
      if (oracle) exact = evolve_gaussian_path(init, s.flow.A, s.flow.B, s.times);
      CsvWriter csv({"t", "l2_norm", "oracle_l2_error"});
      double worst = 0.0;
      double drift = 0.0;
      bool nonincreasing = true;
      const double mass0 = l2_norm(u0);
      for (std::size_t k = 0; k < u.size(); ++k) {
        const double norm = l2_norm(u.slice(k));
        double err = std::nan("");
        if (oracle) {
          err = l2_norm(u.slice(k) - exact[k].sample(grid));
          worst = std::max(worst, err);
        }
        drift = std::max(drift, std::abs(norm - mass0) / mass0);
        if (k > 0 && norm > l2_norm(u.slice(k - 1)) * (1.0 + 1e-12)) nonincreasing = false;
        csv.cell(u.times()[k]).cell(norm).cell(err).end_row();
      }
      ctx.write("evolution.csv", csv.str());
      if (oracle) out.checks.add("oracle_l2_error", worst, Relation::Less, s.tolerance);
      if (s.flow.A == 0.0) {
        out.checks.add("mass_drift", drift, Relation::Less, 1e-10);
      } else if (!s.flow.has_potential()) {
        out.checks.flag("mass_nonincreasing", nonincreasing);
      }
      if (s.max_runtime) out.checks.timing("evolution_runtime", elapsed, *s.max_runtime);
      out.results["evolution"] = {{"slices", u.size()}, {"max_oracle_l2_error", number_json(worst)},
                                  {"max_mass_drift", drift}, {"runtime_s", elapsed}};
    }
    if (semigroup) {
      const auto& s = *semigroup;
      auto rng = section_rng(ctx.seed, 2);
      CsvWriter csv({"z1_re", "z1_im", "z2_re", "z2_im", "residual"});
      double worst = 0.0;
      for (std::size_t i = 0; i < s.pairs; ++i) {
        const cplx z1(uniform(rng, 0.0, s.re_max), uniform(rng, -s.im_max, s.im_max));
        const cplx z2(uniform(rng, 0.0, s.re_max), uniform(rng, -s.im_max, s.im_max));
        const double r = semigroup_identity_check(u0, z1, z2);
        worst = std::max(worst, r);
        csv.cell(z1.real()).cell(z1.imag()).cell(z2.real()).cell(z2.imag()).cell(r).end_row();
      }
      ctx.write("semigroup.csv", csv.str());
      out.checks.add("max_composition_residual", worst, Relation::Less, s.tolerance);
      out.results["semigroup"] = {{"pairs", s.pairs}, {"max_residual", worst}};
    }
    if (!decay.empty()) {
      CsvWriter csv({"A", "B", "gamma", "T", "lhs", "rhs", "margin", "weight_rate", "lhs_tail_ratio"});
      json cases = json::array();
      for (std::size_t i = 0; i < decay.size(); ++i) {
        const auto& d = decay[i];
        const auto r = lemma1_decay_check(u0, d.flow, d.gamma, d.T, d.samples);
        const double a2b2 = d.flow.A * d.flow.A + d.flow.B * d.flow.B;
        const double rate = d.gamma * d.flow.A / (d.flow.A + 4.0 * d.gamma * a2b2 * d.T);
        const std::string tag = "[" + std::to_string(i) + "]";
        out.checks.add("decay_margin" + tag, r.margin, Relation::GreaterEqual, -d.tolerance);
        out.checks.add("weight_rate_deviation" + tag, std::abs(r.weight_rate - rate), Relation::LessEqual, 0.0);
        if (ctx.strict_tails) {
          out.checks.add("lhs_tail_ratio" + tag, r.lhs_tail_ratio, Relation::Less, kTailThreshold);
        }
        csv.cell(d.flow.A).cell(d.flow.B).cell(d.gamma).cell(d.T).cell(r.lhs).cell(r.rhs).cell(r.margin);
        csv.cell(r.weight_rate).cell(r.lhs_tail_ratio).end_row();
        cases.push_back({{"A", d.flow.A}, {"B", d.flow.B}, {"gamma", d.gamma}, {"T", d.T}, {"lhs", r.lhs},
                         {"rhs", r.rhs}, {"margin", r.margin}, {"weight_rate", r.weight_rate},
                         {"lhs_tail_ratio", r.lhs_tail_ratio}, {"tail_resolved", r.lhs_tail_ratio < kTailThreshold}});
      }
      ctx.write("decay_bounds.csv", csv.str());
      out.results["decay_bounds"] = cases;
    }
  };
}

// ---------------------------------------------------------------- convexity

namespace {

struct TraceSection {
  std::vector<double> times;
  double slack = 1e-6;
  double min_second_difference = -1e-7;
  double closed_form_tolerance = 1e-6;
};

struct CommutatorSection {
  std::size_t fields = 20;
  double tolerance = 1e-6;
  double canonical_tolerance = 1e-6;
};

struct HermiteSection {
  std::size_t fields = 50;
  double tolerance = 1e-10;
  double ground_tolerance = 1e-9;
};

struct SecondDerivativeSection {
  Grid grid{40.0, 2048};
  std::vector<double> times;
  double tolerance = 1e-4;
};

}  // namespace

Job prepare_convexity(const json& p) {
  const Grid grid = parse_grid(object(p, "grid"), 20.0, 1024);
  const GaussianState init = parse_gaussian(object(p, "initial"), 1.0);
  const auto& flow_cfg = object(p, "flow");
  const double A = number(flow_cfg, "A", 0.0);
  const double B = number(flow_cfg, "B", 1.0);
  const FlowSpec flow = plain_flow(A, B, grid);
  const double gamma = number(p, "gamma", 0.25);
  validate(WeightProfile{StaticGaussian{gamma}});
  const std::string source = text(p, "source", "analytic");
  if (source != "analytic" && source != "spectral") {
    throw Error(ErrorKind::ConfigError, "convexity.source must be \"analytic\" or \"spectral\"");
  }

  std::optional<TraceSection> trace;
  if (p.contains("trace")) {
    const auto& e = object(p, "trace");
    TraceSection s;
    s.times = parse_times(object(e, "times"), 0.0, 0.4, 40);
    s.slack = number(e, "slack", 1e-6);
    s.min_second_difference = number(e, "min_second_difference", -1e-7);
    s.closed_form_tolerance = number(e, "closed_form_tolerance", 1e-6);
    if (!(s.slack >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "trace.slack");
    if (s.times.size() < 3) throw Error(ErrorKind::ParameterOutOfRange, "trace.times needs two or more steps");
    require_weight_finite(init, A, B, s.times, gamma, "weight");
    trace = s;
  }
  std::optional<CommutatorSection> commutator;
  if (p.contains("commutator")) {
    const auto& e = object(p, "commutator");
    commutator = CommutatorSection{count(e, "fields", 20), number(e, "tolerance", 1e-6),
                                   number(e, "canonical_tolerance", 1e-6)};
  }
  std::optional<HermiteSection> hermite;
  if (p.contains("hermite")) {
    const auto& e = object(p, "hermite");
    hermite = HermiteSection{count(e, "fields", 50), number(e, "tolerance", 1e-10),
                             number(e, "ground_tolerance", 1e-9)};
  }
  std::optional<SecondDerivativeSection> second;
  if (p.contains("second_derivative")) {
    const auto& e = object(p, "second_derivative");
    SecondDerivativeSection s;
    s.grid = parse_grid(object(e, "grid"), 40.0, 2048);
    s.times = parse_times(object(e, "times"), 0.0, 0.4, 400);
    s.tolerance = number(e, "tolerance", 1e-4);
    if (s.times.size() < 9) throw Error(ErrorKind::ParameterOutOfRange, "second_derivative.times needs 8 or more steps");
    require_weight_finite(init, A, B, s.times, gamma, "weight");
    second = s;
  }

  return [=](Context& ctx, Outcome& out) {
    auto run_on = [&](const Grid& g, const std::vector<double>& times) {
      if (source == "analytic") return analytic_run(g, init, A, B, times);
      FlowSpec f = flow;
      return split_step_flow(init.sample(g), f, times);
    };
    if (trace) {
      const auto& s = *trace;
      const auto u = run_on(grid, s.times);
      const double floor = source == "spectral" ? kRoundoffFloor : 0.0;
      const auto tr = build_trace(u, StaticGaussian{gamma}, FlowCoefficients{A, B}, floor);
      const auto report = log_convexity_check(tr, std::log1p(s.slack));
      const auto exact = evolve_gaussian_path(init, A, B, s.times);
      double closed = 0.0;
      for (std::size_t k = 0; k < exact.size(); ++k) {
        const double h = std::pow(*gaussian_weighted_norm(exact[k], gamma), 2);
        closed = std::max(closed, std::abs(tr.H[k] - h) / h);
      }
      out.checks.add("min_second_difference_logH", report.min_second_diff, Relation::GreaterEqual,
                     s.min_second_difference);
      out.checks.add("interpolation_margin", report.worst_interpolation_margin, Relation::GreaterEqual, 0.0);
      out.checks.add("closed_form_relative_error", closed, Relation::Less, s.closed_form_tolerance);
      ctx.write("trace.csv", to_csv(tr));
      CsvWriter plot({"t", "logH"});
      for (std::size_t k = 0; k < tr.times.size(); ++k) plot.cell(tr.times[k]).cell(tr.logH[k]).end_row();
      ctx.write("plot_logH.csv", plot.str());
      out.results["trace"] = {{"slices", tr.times.size()},
                              {"dt", tr.step()},
                              {"min_second_difference", report.min_second_diff},
                              {"worst_violation", report.worst_violation},
                              {"interpolation_margin", report.worst_interpolation_margin},
                              {"closed_form_relative_error", closed}};
    }
    if (commutator) {
      const auto& s = *commutator;
      const auto canonical = commutator_form(GaussianState{1.0}.sample(grid), 1.0, 1.0, 0.0);
      const double target = 16.0 * std::sqrt(std::numbers::pi / 2.0);
      out.checks.add("canonical_value_error", std::abs(canonical.value_of_form - target) / target, Relation::Less,
                     s.canonical_tolerance);
      out.checks.add("canonical_direct_error", std::abs(canonical.direct_value - target) / target, Relation::Less,
                     s.canonical_tolerance);
      auto rng = section_rng(ctx.seed, 5);
      CsvWriter csv({"field", "gamma", "A", "B", "direct", "form", "relative_difference"});
      double worst = 0.0;
      for (std::size_t i = 0; i < s.fields; ++i) {
        const auto f = random_packets(grid, rng);
        const double g = uniform(rng, 0.1, 1.0);
        const double a = uniform(rng, 0.0, 1.0);
        const double b = uniform(rng, -1.0, 1.0);
        const auto c = commutator_form(f, g, a, b);
        const double rel = std::abs(c.direct_value - c.value_of_form) / std::abs(c.value_of_form);
        worst = std::max(worst, rel);
        csv.cell(static_cast<double>(i)).cell(g).cell(a).cell(b).cell(c.direct_value).cell(c.value_of_form);
        csv.cell(rel).end_row();
      }
      ctx.write("commutator.csv", csv.str());
      out.checks.add("max_direct_vs_form", worst, Relation::Less, s.tolerance);
      out.results["commutator"] = {{"canonical_value", canonical.value_of_form},
                                   {"canonical_direct", canonical.direct_value},
                                   {"fields", s.fields},
                                   {"max_relative_difference", worst}};
    }
    if (hermite) {
      const auto& s = *hermite;
      auto rng = section_rng(ctx.seed, 6);
      CsvWriter csv({"field", "gamma", "lhs", "rhs", "margin"});
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < s.fields; ++i) {
        const auto f = random_packets(grid, rng);
        const double g = uniform(rng, 0.25, 2.0);
        const auto h = hermite_lower_bound_check(f, g);
        worst = std::min(worst, h.margin / h.lhs);
        csv.cell(static_cast<double>(i)).cell(g).cell(h.lhs).cell(h.rhs).cell(h.margin).end_row();
      }
      ctx.write("hermite.csv", csv.str());
      const auto ground = hermite_lower_bound_check(GaussianState{1.0}.sample(grid), 1.0);
      const double gap = std::abs(ground.margin) / ground.rhs;
      out.checks.add("min_relative_margin", worst, Relation::GreaterEqual, -s.tolerance);
      out.checks.add("ground_state_gap", gap, Relation::Less, s.ground_tolerance);
      out.results["hermite"] = {{"fields", s.fields}, {"min_relative_margin", worst}, {"ground_state_gap", gap}};
    }
    if (second) {
      const auto& s = *second;
      const auto u = run_on(s.grid, s.times);
      const auto r = second_derivative_identity_check(u, gamma, A, B);
      out.checks.add("identity_residual", r.residual, Relation::Less, s.tolerance);
      CsvWriter csv({"t", "lhs", "rhs"});
      for (std::size_t k = 0; k < r.times.size(); ++k) csv.cell(r.times[k]).cell(r.lhs[k]).cell(r.rhs[k]).end_row();
      ctx.write("second_derivative.csv", csv.str());
      out.results["second_derivative"] = {{"dt", s.times[1] - s.times[0]},
                                          {"residual", r.residual},
                                          {"max_abs_difference", r.max_abs_difference}};
    }
  };
}

// ---------------------------------------------------------------- appell

namespace {

struct AppellRun {
  std::string name;
  Grid grid{40.0, 1024};
  GaussianState init{1.0};
  double A = 0.0;
  double B = 1.0;
  std::size_t slices = 1000;
  std::optional<std::pair<double, double>> identity;  // alpha, tolerance
  struct Norm {
    AppellParams params;
    std::vector<double> gammas;
    bool reciprocal = true;
    double tolerance = 1e-5;
  };
  std::optional<Norm> norm;
  std::optional<std::pair<AppellParams, double>> round_trip;
  std::optional<std::pair<AppellParams, double>> residual;
};

AppellParams parse_appell(const json& e, double A, double B) {
  AppellParams p{number(e, "alpha", 1.0), number(e, "beta", 2.0), A, B};
  validate(p);
  return p;
}

}  // namespace

Job prepare_appell(const json& p) {
  std::vector<AppellRun> runs;
  for (const auto& e : array(p, "runs")) {
    AppellRun r;
    r.name = text(e, "name", "run" + std::to_string(runs.size()));
    r.grid = parse_grid(object(e, "grid"), 40.0, 1024);
    r.init = parse_gaussian(object(e, "initial"), 1.0);
    const auto& f = object(e, "flow");
    r.A = number(f, "A", 0.0);
    r.B = number(f, "B", 1.0);
    plain_flow(r.A, r.B, r.grid);
    r.slices = count(e, "slices", 1000);
    if (r.slices < 8) throw Error(ErrorKind::ParameterOutOfRange, "appell.slices must be 8 or more");
    if (e.contains("identity")) {
      const auto& s = object(e, "identity");
      const double alpha = number(s, "alpha", 1.5);
      validate(AppellParams{alpha, alpha, r.A, r.B});
      r.identity = std::make_pair(alpha, number(s, "tolerance", 1e-10));
    }
    if (e.contains("norm_identity")) {
      const auto& s = object(e, "norm_identity");
      AppellRun::Norm n{parse_appell(s, r.A, r.B), numbers(s, "gamma", {}), boolean(s, "reciprocal", true),
                        number(s, "tolerance", 1e-5)};
      for (double g : n.gammas) require_positive(g, "appell.γ");
      r.norm = n;
    }
    if (e.contains("round_trip")) {
      const auto& s = object(e, "round_trip");
      r.round_trip = std::make_pair(parse_appell(s, r.A, r.B), number(s, "tolerance", 1e-5));
    }
    if (e.contains("pde_residual")) {
      const auto& s = object(e, "pde_residual");
      r.residual = std::make_pair(parse_appell(s, r.A, r.B), number(s, "tolerance", 1e-3));
    }
    runs.push_back(std::move(r));
  }
  if (runs.empty()) throw Error(ErrorKind::ConfigError, "appell needs a non-empty 'runs' array");

  return [=](Context& ctx, Outcome& out) {
    for (const auto& r : runs) {
      std::vector<double> times(r.slices + 1);
      for (std::size_t k = 0; k <= r.slices; ++k) times[k] = static_cast<double>(k) / static_cast<double>(r.slices);
      const auto u = analytic_run(r.grid, r.init, r.A, r.B, times);
      double scale = 0.0;
      for (const auto& s : u.slices()) scale = std::max(scale, l2_norm(s));
      json res = json::object();
      const std::string tag = "[" + r.name + "]";
      if (r.identity) {
        const auto t = appell_transform(u, AppellParams{r.identity->first, r.identity->first, r.A, r.B});
        double worst = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
          worst = std::max(worst, l2_norm(t.transformed.slice(k) - u.slice(k)));
        }
        out.checks.add("identity_error" + tag, worst / scale, Relation::Less, r.identity->second);
        res["identity_error"] = worst / scale;
      }
      if (r.norm) {
        const auto& n = *r.norm;
        std::vector<double> gammas = n.gammas;
        if (n.reciprocal) gammas.insert(gammas.begin(), 1.0 / (n.params.alpha * n.params.beta));
        json rows = json::array();
        for (std::size_t i = 0; i < gammas.size(); ++i) {
          const auto t = appell_transform(u, n.params, gammas[i]);
          const std::string gtag = "[" + r.name + ",γ=" + format_number(gammas[i]) + "]";
          out.checks.add("interpolation_error" + gtag, t.interpolation_error, Relation::Less,
                         kInterpolationTolerance);
          out.checks.add("norm_identity_residual" + gtag, t.norm_identity_residual, Relation::Less, n.tolerance);
          out.checks.add("norm_identity_slices" + gtag, static_cast<double>(t.norm_identity_slices),
                         Relation::GreaterEqual, ctx.strict_tails ? static_cast<double>(u.size()) : 1.0);
          rows.push_back({{"gamma", gammas[i]},
                          {"residual", t.norm_identity_residual},
                          {"slices_compared", t.norm_identity_slices},
                          {"interpolation_error", t.interpolation_error}});
          if (i == 0) {
            CsvWriter csv({"t", "s", "l2_u", "l2_transformed"});
            for (std::size_t k = 0; k < u.size(); ++k) {
              csv.cell(times[k]).cell(t.s_of_t[k]).cell(l2_norm(u.slice(k))).cell(l2_norm(t.transformed.slice(k)));
              csv.end_row();
            }
            ctx.write("appell_" + r.name + ".csv", csv.str());
          }
        }
        res["norm_identity"] = rows;
      }
      if (r.round_trip) {
        const auto& [params, tol] = *r.round_trip;
        const auto forward = appell_transform(u, params);
        const auto back = appell_transform(forward.transformed, AppellParams{params.beta, params.alpha, r.A, r.B});
        double worst = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
          worst = std::max(worst, l2_norm(back.transformed.slice(k) - u.slice(k)));
        }
        out.checks.add("round_trip_error" + tag, worst / scale, Relation::Less, tol);
        res["round_trip_error"] = worst / scale;
      }
      if (r.residual) {
        const auto& [params, tol] = *r.residual;
        const double v = appell_equation_residual(u, params, plain_flow(r.A, r.B, r.grid));
        out.checks.add("pde_residual" + tag, v, Relation::Less, tol);
        res["pde_residual"] = v;
      }
      out.results[r.name] = res;
    }
  };
}

// ---------------------------------------------------------------- carleman

namespace {

struct SweepSection {
  CarlemanSweepSpec spec;
  std::vector<CarlemanOperator> ops;
  std::size_t min_checks = 0;
  double tolerance = 1e-8;
};

struct ExpansionSection {
  std::vector<CarlemanOperator> ops;
  std::size_t bumps = 3;
  std::vector<CarlemanConfig> configs;
  std::size_t points = 1024;
  std::size_t time_nodes = 9;
  double half_width = 8.0;
  double tolerance = 1e-6;
};

struct WindowSection {
  std::vector<double> epsilons;
  double gamma_above = 0.51;
  double gamma_below = 0.49;
  double tolerance = 1e-3;
};

std::vector<CarlemanConfig> config_grid(const json& e, CarlemanOperator op, const std::vector<double>& mu,
                                        const std::vector<double>& eps, const std::vector<double>& R) {
  std::vector<CarlemanConfig> out;
  for (double r : numbers(e, "R", R)) {
    for (double m : numbers(e, "mu", mu)) {
      for (double s : numbers(e, "epsilon", eps)) {
        CarlemanConfig c{m, s, r, op};
        validate(c);
        out.push_back(c);
      }
    }
  }
  return out;
}

// Minimum relative margin per (R, mu, epsilon), in sweep-spec order.
std::string margin_table(const std::vector<CarlemanSweepRow>& rows, const CarlemanSweepSpec& spec) {
  CsvWriter csv({"R", "mu", "epsilon", "min_relative_margin", "checks"});
  for (double R : spec.R) {
    for (double mu : spec.mu) {
      for (double eps : spec.epsilon) {
        double worst = std::numeric_limits<double>::infinity();
        std::size_t n = 0;
        for (const auto& r : rows) {
          if (r.cfg.R != R || r.cfg.mu != mu || r.cfg.epsilon != eps) continue;
          worst = std::min(worst, r.report.margin / r.report.rhs);
          ++n;
        }
        csv.cell(R).cell(mu).cell(eps).cell(worst).cell(static_cast<double>(n)).end_row();
      }
    }
  }
  return csv.str();
}

}  // namespace

Job prepare_carleman(const json& p) {
  std::optional<SweepSection> sweep;
  if (p.contains("sweep")) {
    const auto& e = object(p, "sweep");
    SweepSection s;
    s.ops = parse_operators(e);
    s.spec.bumps = count(e, "bumps", 50);
    s.spec.mu = numbers(e, "mu", s.spec.mu);
    s.spec.epsilon = numbers(e, "epsilon", s.spec.epsilon);
    s.spec.R = numbers(e, "R", s.spec.R);
    s.spec.nodes = count(e, "nodes", 128);
    s.spec.half_width = number(e, "half_width", 8.0);
    s.min_checks = count(e, "min_checks", 0);
    s.tolerance = number(e, "tolerance", 1e-8);
    if (s.spec.bumps == 0) throw Error(ErrorKind::ParameterOutOfRange, "carleman.bumps must be positive");
    require_positive(s.spec.half_width, "carleman.half_width");
    for (auto op : s.ops) config_grid(json::object(), op, s.spec.mu, s.spec.epsilon, s.spec.R);
    sweep = s;
  }
  std::optional<ExpansionSection> expansion;
  if (p.contains("expansion")) {
    const auto& e = object(p, "expansion");
    ExpansionSection s;
    s.ops = parse_operators(e);
    s.bumps = count(e, "bumps", 3);
    s.points = count(e, "points", 1024);
    s.time_nodes = count(e, "time_nodes", 9);
    s.half_width = number(e, "half_width", 8.0);
    s.tolerance = number(e, "tolerance", 1e-6);
    for (auto op : s.ops) {
      for (const auto& c : config_grid(e, op, {1.0}, {0.5}, {1.0, 5.0, 10.0})) s.configs.push_back(c);
    }
    if (s.bumps == 0) throw Error(ErrorKind::ParameterOutOfRange, "expansion.bumps must be positive");
    expansion = s;
  }
  std::optional<WindowSection> window;
  if (p.contains("window")) {
    const auto& e = object(p, "window");
    WindowSection s{numbers(e, "epsilons", {1e-2, 1e-4, 1e-6}), number(e, "gamma_above", 0.51),
                    number(e, "gamma_below", 0.49), number(e, "tolerance", 1e-3)};
    if (s.epsilons.empty()) throw Error(ErrorKind::ConfigError, "window.epsilons must not be empty");
    for (double eps : s.epsilons) {
      if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "weight.ε");
    }
    if (!(s.gamma_above > 0.5)) throw Error(ErrorKind::ParameterOutOfRange, "window.gamma_above must exceed 1/2");
    if (!(s.gamma_below > 0.0 && s.gamma_below <= 0.5)) {
      throw Error(ErrorKind::ParameterOutOfRange, "window.gamma_below must lie in (0, 1/2]");
    }
    window = s;
  }
  std::optional<std::pair<std::vector<double>, std::vector<double>>> core;
  if (p.contains("core_phase")) {
    const auto& e = object(p, "core_phase");
    core = std::make_pair(numbers(e, "mu", {0.5, 1.0, 2.0, 4.0, 8.0}), numbers(e, "epsilon", {0.05, 0.1, 0.2, 0.3}));
  }

  return [=](Context& ctx, Outcome& out) {
    if (sweep) {
      json res = json::object();
      for (auto op : sweep->ops) {
        auto spec = sweep->spec;
        spec.op = op;
        spec.seed = ctx.seed;
        spec.threads = ctx.threads;
        const auto start = Clock::now();
        const auto rows = carleman_sweep(spec);
        const double elapsed = seconds_since(start);
        double worst = std::numeric_limits<double>::infinity();
        std::size_t failures = 0;
        for (const auto& r : rows) {
          worst = std::min(worst, r.report.margin / r.report.rhs);
          if (!r.report.pass) ++failures;
        }
        const std::string name = operator_name(op);
        out.checks.add("min_relative_margin[" + name + "]", worst, Relation::GreaterEqual, -sweep->tolerance);
        out.checks.add("checks[" + name + "]", static_cast<double>(rows.size()), Relation::GreaterEqual,
                       static_cast<double>(sweep->min_checks));
        ctx.write("sweep_" + name + ".csv", to_csv(rows));
        ctx.write("plot_margin_" + name + ".csv", margin_table(rows, spec));
        res[name] = {{"checks", rows.size()}, {"failures", failures}, {"min_relative_margin", worst},
                     {"runtime_s", elapsed}};
      }
      out.results["sweep"] = res;
    }
    if (expansion) {
      const auto& s = *expansion;
      const auto bumps = random_bumps(s.bumps, ctx.seed ^ 0x5bd1e995u, s.half_width);
      CsvWriter csv({"bump", "operator", "mu", "epsilon", "R", "direct", "expanded", "lower_bound", "residual"});
      double worst = 0.0;
      double min_slack = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < bumps.size(); ++b) {
        for (const auto& c : s.configs) {
          const auto e = commutator_expansion_check(bumps[b], c, s.points, s.time_nodes);
          worst = std::max(worst, e.residual);
          min_slack = std::min(min_slack, e.slack / std::abs(e.expanded));
          csv.cell(static_cast<double>(b)).cell(operator_name(c.op)).cell(c.mu).cell(c.epsilon).cell(c.R);
          csv.cell(e.direct).cell(e.expanded).cell(e.lower_bound).cell(e.residual).end_row();
        }
      }
      ctx.write("expansion.csv", csv.str());
      out.checks.add("expansion_residual", worst, Relation::Less, s.tolerance);
      out.results["expansion"] = {{"checks", bumps.size() * s.configs.size()},
                                  {"max_residual", worst},
                                  {"min_relative_slack", min_slack}};
    }
    if (window) {
      const auto& s = *window;
      CsvWriter csv({"epsilon", "lower", "upper_above", "nonempty_above", "nonempty_below"});
      bool below_empty = true;
      bool lower_decreasing = true;
      double prev = std::numeric_limits<double>::infinity();
      double smallest = 1.0;
      for (double eps : s.epsilons) {
        const auto above = parameter_window(s.gamma_above, eps);
        const auto below = parameter_window(s.gamma_below, eps);
        below_empty = below_empty && !below.nonempty;
        if (eps < smallest) {
          lower_decreasing = lower_decreasing && above.lower < prev;
          prev = above.lower;
        }
        smallest = std::min(smallest, eps);
        csv.cell(eps).cell(above.lower).cell(above.upper).cell(above.nonempty).cell(below.nonempty).end_row();
      }
      const auto limit = parameter_window(s.gamma_above, smallest);
      ctx.write("window.csv", csv.str());
      out.checks.add("limit_lower_error", std::abs(limit.lower - 0.5), Relation::Less, s.tolerance);
      out.checks.flag("nonempty_above_half", limit.nonempty);
      out.checks.flag("empty_below_half", below_empty);
      out.checks.flag("lower_decreases_with_epsilon", lower_decreasing);
      out.results["window"] = {{"epsilon", smallest}, {"lower", limit.lower}, {"upper", limit.upper}};
    }
    if (core) {
      const auto rows = core_phase_scan(core->first, core->second);
      CsvWriter csv({"mu", "epsilon", "condition", "min_phase", "displayed_bound"});
      bool implication = true;
      for (const auto& r : rows) {
        if (r.condition && !(r.min_phase > 0.0)) implication = false;
        csv.cell(r.mu).cell(r.epsilon).cell(r.condition).cell(r.min_phase).cell(r.displayed_bound).end_row();
      }
      ctx.write("core_phase.csv", csv.str());
      out.checks.flag("core_phase_positive_when_condition_holds", implication);
    }
  };
}

// ---------------------------------------------------------------- counterexample

namespace {

struct OdeSection {
  double t_max = 50.0;
  double step = kMaxOdeStep;
  double tolerance = 1e-6;
};

struct RatesSection {
  std::vector<double> R;
  double bound_R = 10.0;
  double bound = 0.1;
};

struct DivergenceSection {
  double R = 1.0;
  std::vector<double> half_widths;
  double tolerance = kConvergenceTolerance;
  double min_log_growth = 1.0;
};

}  // namespace

Job prepare_counterexample(const json& p) {
  const auto& o = object(p, "ode");
  OdeSection ode{number(o, "t_max", 50.0), number(o, "step", kMaxOdeStep), number(o, "tolerance", 1e-6)};
  require_positive(ode.t_max, "counterexample.t_max");
  require_positive(ode.step, "counterexample.step");
  if (ode.step > kMaxOdeStep) throw Error(ErrorKind::StepTooLarge, "counterexample.step exceeds 1e-3");
  std::optional<RatesSection> rates;
  if (p.contains("rates")) {
    const auto& e = object(p, "rates");
    RatesSection s{numbers(e, "R", {5.0, 10.0, 20.0, 50.0}), number(e, "bound_R", 10.0), number(e, "bound", 0.1)};
    if (s.R.size() < 2) throw Error(ErrorKind::ConfigError, "rates.R needs two or more values");
    for (std::size_t i = 0; i < s.R.size(); ++i) {
      require_positive(s.R[i], "counterexample.R");
      if (s.R[i] > ode.t_max) throw Error(ErrorKind::ParameterOutOfRange, "counterexample.R exceeds ode.t_max");
      if (i > 0 && !(s.R[i] > s.R[i - 1])) throw Error(ErrorKind::ConfigError, "rates.R must be increasing");
    }
    require_positive(s.bound_R, "rates.bound_R");
    if (s.bound_R > ode.t_max) throw Error(ErrorKind::ParameterOutOfRange, "rates.bound_R exceeds ode.t_max");
    rates = s;
  }
  std::optional<DivergenceSection> divergence;
  if (p.contains("divergence")) {
    const auto& e = object(p, "divergence");
    DivergenceSection s{number(e, "R", 1.0), numbers(e, "half_widths", {5.0, 10.0, 20.0, 40.0}),
                        number(e, "tolerance", kConvergenceTolerance), number(e, "min_log_growth", 1.0)};
    require_positive(s.R, "counterexample.R");
    if (s.R > ode.t_max) throw Error(ErrorKind::ParameterOutOfRange, "counterexample.R exceeds ode.t_max");
    if (s.half_widths.size() < 2) throw Error(ErrorKind::ConfigError, "divergence.half_widths needs two or more values");
    for (std::size_t i = 0; i < s.half_widths.size(); ++i) {
      require_positive(s.half_widths[i], "divergence.half_widths");
      if (i > 0 && !(s.half_widths[i] > s.half_widths[i - 1])) {
        throw Error(ErrorKind::ConfigError, "divergence.half_widths must be increasing");
      }
    }
    divergence = s;
  }

  return [=](Context& ctx, Outcome& out) {
    const auto traj = solve_weight_ode(ode.t_max, ode.step);
    const double fi = first_integral_residual(traj);
    out.checks.add("first_integral_residual", fi, Relation::Less, ode.tolerance);
    const WeightInterpolant a(traj);
    CsvWriter wcsv({"t", "a", "b"});
    const std::size_t stride = std::max<std::size_t>(1, traj.times.size() / 1000);
    for (std::size_t k = 0; k < traj.times.size(); k += stride) {
      wcsv.cell(traj.times[k]).cell(traj.a[k]).cell(traj.b[k]).end_row();
    }
    ctx.write("weight.csv", wcsv.str());
    out.results["ode"] = {{"t_max", ode.t_max}, {"step", traj.step}, {"first_integral_residual", fi}};

    if (rates) {
      CsvWriter csv({"R", "R_a_R"});
      bool decreasing = true;
      double prev = std::numeric_limits<double>::infinity();
      json vals = json::array();
      for (double R : rates->R) {
        const double v = scaled_weight(a, R, 1.0);
        decreasing = decreasing && v < prev;
        prev = v;
        csv.cell(R).cell(v).end_row();
        vals.push_back({{"R", R}, {"R_a_R", v}});
      }
      ctx.write("rates.csv", csv.str());
      out.checks.flag("R_a_R_decreasing", decreasing);
      const double at = scaled_weight(a, rates->bound_R, 1.0);
      out.checks.add("R_a_R_at_bound", at, Relation::Less, rates->bound);
      out.results["rates"] = vals;
    }
    if (divergence) {
      const auto& s = *divergence;
      const auto table = divergence_demonstration(a, s.R, s.half_widths);
      ctx.write("divergence.csv", to_csv(table));
      const auto& rows = table.rows;
      double min_growth = std::numeric_limits<double>::infinity();
      double h0_change = 0.0;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        min_growth = std::min(min_growth, rows[i].log_H0 - rows[i - 1].log_H0);
      }
      const auto& last = rows.back();
      const auto& before = rows[rows.size() - 2];
      const double h1_change = std::max(std::abs(last.H_plus1 - before.H_plus1) / last.H_plus1,
                                        std::abs(last.H_minus1 - before.H_minus1) / last.H_minus1);
      if (table.h0_divergent_regime) {
        out.checks.add("min_log_H0_growth", min_growth, Relation::GreaterEqual, s.min_log_growth);
      } else {
        h0_change = std::abs(last.H0_truncated - before.H0_truncated) / last.H0_truncated;
        out.checks.add("H0_relative_change", h0_change, Relation::Less, s.tolerance);
      }
      out.checks.add("H1_relative_change", h1_change, Relation::Less, s.tolerance);
      out.results["divergence"] = {{"R", s.R},
                                   {"weight_rate_at_one", table.weight_rate_at_one},
                                   {"h0_divergent_regime", table.h0_divergent_regime},
                                   {"regime_note", table.regime_note},
                                   {"min_log_H0_growth", number_json(min_growth)},
                                   {"H1_relative_change", h1_change}};
    }
  };
}

// ---------------------------------------------------------------- hardy

namespace {

struct ScanSection {
  std::size_t count = 20;
  std::vector<double> T{0.5, 1.0};
  double re_lo = 0.5, re_hi = 2.0;
  double im_lo = -0.5, im_hi = 0.5;
  double min_product = 1.0 - 1e-3;
};

struct HeatSection {
  std::vector<double> c;
  double tolerance = 1e-6;
  double limit_c = 1e6;
  double limit_tolerance = 1e-3;
};

}  // namespace

Job prepare_hardy(const json& p) {
  const Grid grid = parse_grid(object(p, "grid"), 30.0, 2048);
  std::vector<std::pair<double, double>> pairs;
  double pair_tolerance = 1e-3;
  if (p.contains("extremal")) {
    const auto& e = object(p, "extremal");
    pair_tolerance = number(e, "tolerance", 1e-3);
    for (const auto& v : array(e, "pairs")) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error(ErrorKind::ConfigError, "extremal.pairs entries must be [beta, T]");
      }
      const double beta = v[0].get<double>();
      const double T = v[1].get<double>();
      require_positive(beta, "hardy.β");
      require_positive(T, "hardy.T");
      pairs.emplace_back(beta, T);
    }
    if (pairs.empty()) pairs = {{2.0, 1.0}, {1.0, 0.5}, {3.0, 2.0}};
  }
  std::optional<ScanSection> scan;
  if (p.contains("gaussian_scan")) {
    const auto& e = object(p, "gaussian_scan");
    ScanSection s;
    s.count = count(e, "count", 20);
    s.T = numbers(e, "T", s.T);
    const auto re = numbers(e, "re", {s.re_lo, s.re_hi});
    const auto im = numbers(e, "im", {s.im_lo, s.im_hi});
    if (re.size() != 2 || !(re[0] > 0.0 && re[1] >= re[0])) throw Error(ErrorKind::ParameterOutOfRange, "gaussian_scan.re");
    if (im.size() != 2 || !(im[1] >= im[0])) throw Error(ErrorKind::ParameterOutOfRange, "gaussian_scan.im");
    s.re_lo = re[0];
    s.re_hi = re[1];
    s.im_lo = im[0];
    s.im_hi = im[1];
    s.min_product = number(e, "min_product", 1.0 - 1e-3);
    if (s.T.empty()) throw Error(ErrorKind::ConfigError, "gaussian_scan.T must not be empty");
    for (double T : s.T) require_positive(T, "hardy.T");
    scan = s;
  }
  std::optional<HeatSection> heat;
  if (p.contains("heat")) {
    const auto& e = object(p, "heat");
    HeatSection s{numbers(e, "c", {0.25, 1.0, 4.0}), number(e, "tolerance", 1e-6), number(e, "limit_c", 1e6),
                  number(e, "limit_tolerance", 1e-3)};
    for (double c : s.c) require_positive(c, "hardy.c");
    require_positive(s.limit_c, "hardy.c");
    heat = s;
  }

  return [=](Context& ctx, Outcome& out) {
    CsvWriter csv({"source", "c_re", "c_im", "T", "alpha", "beta", "normalized"});
    double min_product = std::numeric_limits<double>::infinity();
    if (!pairs.empty()) {
      double worst = 0.0;
      for (const auto& [beta, T] : pairs) {
        const auto pair = hardy_extremal_pair(beta, T);
        const auto u0 = pair.initial.sample(grid);
        const auto hp = hardy_product(u0, free_flow(u0, 0.0, 1.0, T), T);
        worst = std::max(worst, std::abs(hp.normalized - 1.0));
        min_product = std::min(min_product, hp.normalized);
        csv.cell("extremal").cell(pair.initial.c.real()).cell(pair.initial.c.imag()).cell(T).cell(hp.alpha);
        csv.cell(hp.beta).cell(hp.normalized).end_row();
      }
      out.checks.add("extremal_product_error", worst, Relation::Less, pair_tolerance);
      out.results["extremal"] = {{"pairs", pairs.size()}, {"max_error", worst}};
    }
    if (scan) {
      const auto& s = *scan;
      auto rng = section_rng(ctx.seed, 11);
      double scan_min = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < s.count; ++i) {
        const cplx c(uniform(rng, s.re_lo, s.re_hi), uniform(rng, s.im_lo, s.im_hi));
        const double T = s.T[i % s.T.size()];
        const auto u0 = GaussianState{c}.sample(grid);
        const auto hp = hardy_product(u0, free_flow(u0, 0.0, 1.0, T), T);
        scan_min = std::min(scan_min, hp.normalized);
        csv.cell("scan").cell(c.real()).cell(c.imag()).cell(T).cell(hp.alpha).cell(hp.beta).cell(hp.normalized);
        csv.end_row();
      }
      min_product = std::min(min_product, scan_min);
      out.checks.add("min_normalized_product", min_product, Relation::GreaterEqual, s.min_product);
      out.results["gaussian_scan"] = {{"experiments", s.count}, {"min_normalized_product", scan_min}};
    }
    if (!pairs.empty() || scan) ctx.write("products.csv", csv.str());
    if (heat) {
      const auto& s = *heat;
      CsvWriter hcsv({"c", "boundary_formula", "boundary_scan", "re_c1"});
      double worst = 0.0;
      for (double c : s.c) {
        const double formula = heat_boundary(c);
        const auto t = heat_threshold_experiment(GaussianState{c}, formula);
        worst = std::max(worst, std::abs(t.scanned_boundary - formula));
        hcsv.cell(c).cell(formula).cell(t.scanned_boundary).cell(t.re_c1).end_row();
      }
      ctx.write("heat_boundary.csv", hcsv.str());
      const double limit = heat_boundary(s.limit_c);
      out.checks.add("heat_scan_error", worst, Relation::Less, s.tolerance);
      out.checks.add("heat_limit_error", std::abs(limit - 2.0), Relation::Less, s.limit_tolerance);
      out.results["heat"] = {{"max_scan_error", worst}, {"limit_c", s.limit_c}, {"limit_boundary", limit}};
    }
  };
}

Job prepare_module(const std::string& kind, const json& params) {
  if (kind == "evolve") return prepare_evolve(params);
  if (kind == "convexity") return prepare_convexity(params);
  if (kind == "appell") return prepare_appell(params);
  if (kind == "carleman") return prepare_carleman(params);
  if (kind == "counterexample") return prepare_counterexample(params);
  if (kind == "hardy") return prepare_hardy(params);
  throw Error(ErrorKind::ConfigError, "unknown experiment kind \"" + kind + "\"");
}

}  // namespace hardylab::app
