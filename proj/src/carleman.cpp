#include "hardylab/carleman.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "hardylab/csv.hpp"
#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

constexpr cplx kI{0.0, 1.0};

// Smooth 0 -> 1 transition on [0, 1]: 1 / (1 + exp(1/tau - 1/(1-tau))).
double smoothstep(double tau) {
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  const double h = 1.0 / tau - 1.0 / (1.0 - tau);
  return 1.0 / (1.0 + std::exp(h));
}

// S (1 - S) with both factors computed stably.
double smoothstep_product(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  const double h = 1.0 / tau - 1.0 / (1.0 - tau);
  return 1.0 / ((1.0 + std::exp(h)) * (1.0 + std::exp(-h)));
}

double smoothstep_d1(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  const double k = 1.0 / (tau * tau) + 1.0 / ((1.0 - tau) * (1.0 - tau));
  return smoothstep_product(tau) * k;
}

double smoothstep_d2(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  const double k = 1.0 / (tau * tau) + 1.0 / ((1.0 - tau) * (1.0 - tau));
  const double dk = -2.0 / (tau * tau * tau) + 2.0 / std::pow(1.0 - tau, 3);
  const double s = smoothstep(tau);
  return smoothstep_d1(tau) * (1.0 - 2.0 * s) * k + smoothstep_product(tau) * dk;
}

// Time-dependent pieces of the moving phase: c(t), c', c'', p'(t), p''(t)
// where phase = mu (x + c)^2 + p(t).
struct PhaseTime {
  double c, c1, c2, p1, p2;
};

PhaseTime phase_time(const CarlemanConfig& cfg, double t) {
  const double R = cfg.R;
  const double mu = cfg.mu;
  PhaseTime pt{R * t * (1.0 - t), R * (1.0 - 2.0 * t), -2.0 * R,
               -(1.0 + cfg.epsilon) * R * R * (1.0 - 2.0 * t) / (16.0 * mu),
               2.0 * (1.0 + cfg.epsilon) * R * R / (16.0 * mu)};
  if (cfg.op == CarlemanOperator::Parabolic) {
    pt.p1 += R * R * (t * t - t + 1.0 / 6.0);
    pt.p2 += R * R * (2.0 * t - 1.0);
  }
  return pt;
}

// kappa dxx + a(x) dx + b(x), x = shift + grid coordinate.
struct SecondOrderOp {
  cplx kappa = 0.0;
  std::function<cplx(double)> a;
  std::function<cplx(double)> b;
};

ComplexField apply(const SecondOrderOp& op, const ComplexField& f, double shift) {
  auto out = ComplexField::zeros(f.grid());
  if (op.kappa != 0.0) out += op.kappa * spectral_laplacian(f);
  if (op.a) out += multiply(spectral_derivative(f), [&](double x) { return op.a(x + shift); });
  if (op.b) out += multiply(f, [&](double x) { return op.b(x + shift); });
  return out;
}

double sum_abs2(const std::vector<cplx>& v, double h) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s * h;
}

}  // namespace

double CarlemanConfig::constant() const { return R * std::sqrt(epsilon / (8.0 * mu)); }

void validate(const CarlemanConfig& cfg) {
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) throw Error(ErrorKind::ParameterOutOfRange, "carleman.μ");
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) throw Error(ErrorKind::ParameterOutOfRange, "carleman.ε");
  if (!(cfg.R > 0.0) || !std::isfinite(cfg.R)) throw Error(ErrorKind::ParameterOutOfRange, "carleman.R");
}

double bump_profile(double s) {
  if (!(std::abs(s) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_profile_d1(double s) {
  if (!(std::abs(s) < 1.0)) return 0.0;
  const double q = 1.0 - s * s;
  return -2.0 * s / (q * q) * bump_profile(s);
}

double bump_profile_d2(double s) {
  if (!(std::abs(s) < 1.0)) return 0.0;
  const double q = 1.0 - s * s;
  return bump_profile(s) * (4.0 * s * s / (q * q * q * q) - 2.0 / (q * q) - 8.0 * s * s / (q * q * q));
}

cplx BumpField::value(double x, double t) const {
  return amplitude * bump_profile((x - center_x) / width_x) * bump_profile((t - center_t) / width_t);
}

cplx BumpField::dt(double x, double t) const {
  return amplitude * bump_profile((x - center_x) / width_x) * bump_profile_d1((t - center_t) / width_t) / width_t;
}

cplx BumpField::dx(double x, double t) const {
  return amplitude * bump_profile_d1((x - center_x) / width_x) / width_x * bump_profile((t - center_t) / width_t);
}

cplx BumpField::dxx(double x, double t) const {
  return amplitude * bump_profile_d2((x - center_x) / width_x) / (width_x * width_x) *
         bump_profile((t - center_t) / width_t);
}

BumpField make_bump(double center_x, double width_x, double center_t, double width_t, cplx amplitude,
                    double half_width) {
  if (!(width_x > 0.0) || !(width_t > 0.0)) throw Error(ErrorKind::SupportOutOfDomain, "bump widths must be positive");
  if (!(center_x - width_x > -half_width) || !(center_x + width_x < half_width)) {
    throw Error(ErrorKind::SupportOutOfDomain, "bump leaves the spatial domain");
  }
  if (!(center_t - width_t > 0.0) || !(center_t + width_t < 1.0)) {
    throw Error(ErrorKind::SupportOutOfDomain, "bump leaves the time interval (0, 1)");
  }
  return BumpField{center_x, width_x, center_t, width_t, amplitude};
}

CarlemanReport carleman_check(const BumpField& g, const CarlemanConfig& cfg, std::size_t nodes) {
  validate(cfg);
  if (nodes < 8) throw Error(ErrorKind::ParameterOutOfRange, "carleman.nodes");
  const auto weight = cfg.weight();
  const double hx = 2.0 * g.width_x / static_cast<double>(nodes);
  const double ht = 2.0 * g.width_t / static_cast<double>(nodes);
  auto xs = [&](std::size_t j) { return g.center_x - g.width_x + (static_cast<double>(j) + 0.5) * hx; };
  auto ts = [&](std::size_t k) { return g.center_t - g.width_t + (static_cast<double>(k) + 0.5) * ht; };

  // Scale by the largest phase so huge weights stay representable.
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes; ++k) {
    for (std::size_t j = 0; j < nodes; ++j) top = std::max(top, evaluate_phase(weight, xs(j), ts(k)));
  }
  double lhs2 = 0.0;
  double rhs2 = 0.0;
  const cplx diffusion = cfg.op == CarlemanOperator::Schrodinger ? kI : cplx(1.0);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double t = ts(k);
    for (std::size_t j = 0; j < nodes; ++j) {
      const double x = xs(j);
      const double w = std::exp(2.0 * (evaluate_phase(weight, x, t) - top));
      lhs2 += w * std::norm(g.value(x, t));
      rhs2 += w * std::norm(g.dt(x, t) - diffusion * g.dxx(x, t));
    }
  }
  const double scale = std::exp(top) * std::sqrt(hx * ht);
  CarlemanReport report;
  report.constant = cfg.constant();
  report.lhs = report.constant * std::sqrt(lhs2) * scale;
  report.rhs = std::sqrt(rhs2) * scale;
  report.margin = report.rhs - report.lhs;
  report.pass = report.margin >= -1e-8 * report.rhs;
  return report;
}

std::vector<BumpField> random_bumps(std::size_t count, std::uint64_t seed, double half_width) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BumpField> out;
  out.reserve(count);
  const double reach = std::min(3.0, half_width / 2.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double wx = 0.5 + 1.5 * unit(rng);
    const double cx = (2.0 * unit(rng) - 1.0) * std::max(0.0, std::min(reach, half_width - wx - 0.5));
    const double wt = 0.05 + 0.4 * unit(rng);
    const double ct = wt + 0.02 + (1.0 - 2.0 * wt - 0.04) * unit(rng);
    const double modulus = 0.5 + 1.5 * unit(rng);
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    out.push_back(make_bump(cx, wx, ct, wt, std::polar(modulus, angle), half_width));
  }
  return out;
}

std::vector<CarlemanSweepRow> carleman_sweep(const CarlemanSweepSpec& spec) {
  const auto bumps = random_bumps(spec.bumps, spec.seed, spec.half_width);
  std::vector<CarlemanSweepRow> rows;
  for (std::size_t b = 0; b < bumps.size(); ++b) {
    for (double mu : spec.mu) {
      for (double eps : spec.epsilon) {
        for (double R : spec.R) {
          CarlemanConfig cfg{mu, eps, R, spec.op};
          validate(cfg);
          rows.push_back({b, cfg, {}});
        }
      }
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i].report = carleman_check(bumps[rows[i].bump_index], rows[i].cfg, spec.nodes);
    }
  };
  const unsigned threads = std::max(1u, spec.threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

std::string to_csv(const std::vector<CarlemanSweepRow>& rows) {
  CsvWriter csv({"mu", "epsilon", "R", "operator", "lhs", "rhs", "margin", "pass"});
  for (const auto& row : rows) {
    csv.cell(row.cfg.mu).cell(row.cfg.epsilon).cell(row.cfg.R);
    csv.cell(std::string_view(row.cfg.op == CarlemanOperator::Schrodinger ? "schrodinger" : "parabolic"));
    csv.cell(row.report.lhs).cell(row.report.rhs).cell(row.report.margin).cell(row.report.pass);
    csv.end_row();
  }
  return csv.str();
}

ExpansionCheck commutator_expansion_check(const BumpField& g, const CarlemanConfig& cfg, std::size_t points,
                                          std::size_t time_nodes) {
  validate(cfg);
  if (time_nodes == 0) throw Error(ErrorKind::ParameterOutOfRange, "carleman.time_nodes");
  const Grid grid(1.25 * g.width_x, points);
  const double shift = g.center_x;
  const double h = grid.spacing();
  const double mu = cfg.mu;
  const double R = cfg.R;
  const auto weight = cfg.weight();
  const bool schrodinger = cfg.op == CarlemanOperator::Schrodinger;

  ExpansionCheck out;
  if (schrodinger) {
    out.active_terms = {"moment", "mass", "twisted_gradient"};
  } else {
    out.active_terms = {"moment", "gradient", "mass"};
  }
  out.lower_bound = 0.0;
  for (std::size_t m = 0; m < time_nodes; ++m) {
    const double t = g.center_t - g.width_t +
                     2.0 * g.width_t * static_cast<double>(m + 1) / static_cast<double>(time_nodes + 1);
    const PhaseTime pt = phase_time(cfg, t);
    std::vector<cplx> fv(grid.points());
    std::vector<cplx> dfv(grid.points());
    for (std::size_t i = 0; i < fv.size(); ++i) {
      const double x = grid.x(i) + shift;
      const double e = std::exp(evaluate_phase(weight, x, t));
      const double phi_x = 2.0 * mu * (x + pt.c);
      fv[i] = e * g.value(x, t);
      dfv[i] = e * (g.dx(x, t) + phi_x * g.value(x, t));
    }
    const ComplexField f(grid, fv);

    auto phi_t = [=](double x) { return 2.0 * mu * (x + pt.c) * pt.c1 + pt.p1; };
    auto phi_tt = [=](double x) { return 2.0 * mu * pt.c1 * pt.c1 + 2.0 * mu * (x + pt.c) * pt.c2 + pt.p2; };
    SecondOrderOp S, A, St;
    if (schrodinger) {
      S.a = [=](double x) { return -4.0 * kI * mu * (x + pt.c); };
      S.b = [=](double x) { return -2.0 * kI * mu + phi_t(x); };
      A.kappa = kI;
      A.b = [=](double x) { return 4.0 * kI * mu * mu * (x + pt.c) * (x + pt.c); };
      St.a = [=](double) { return -4.0 * kI * mu * pt.c1; };
      St.b = [=](double x) { return cplx(phi_tt(x)); };
    } else {
      S.kappa = 1.0;
      S.b = [=](double x) { return cplx(4.0 * mu * mu * (x + pt.c) * (x + pt.c) + phi_t(x)); };
      A.a = [=](double x) { return cplx(-4.0 * mu * (x + pt.c)); };
      A.b = [=](double) { return cplx(-2.0 * mu); };
      St.b = [=](double x) { return cplx(8.0 * mu * mu * (x + pt.c) * pt.c1 + phi_tt(x)); };
    }
    auto form = apply(St, f, shift);
    form += apply(S, apply(A, f, shift), shift);
    form -= apply(A, apply(S, f, shift), shift);
    const double direct = inner_product(form, f).real();

    const double mass = sum_abs2(fv, h);
    double expanded = cfg.epsilon * R * R / (8.0 * mu) * mass;
    const double offset = schrodinger ? -R / (16.0 * mu * mu) : (4.0 * mu * pt.c1 - R) / (16.0 * mu * mu);
    for (std::size_t i = 0; i < fv.size(); ++i) {
      const double x = grid.x(i) + shift;
      const double y = x + pt.c + offset;
      expanded += 32.0 * mu * mu * mu * y * y * std::norm(fv[i]) * h;
      if (schrodinger) {
        expanded += 8.0 * mu * std::norm(kI * dfv[i] - 0.5 * pt.c1 * fv[i]) * h;
      } else {
        expanded += 8.0 * mu * std::norm(dfv[i]) * h;
      }
    }
    const double lower = cfg.epsilon * R * R / (8.0 * mu) * mass;
    out.direct += direct;
    out.expanded += expanded;
    out.lower_bound += lower;
    if (expanded != 0.0) out.residual = std::max(out.residual, std::abs(direct - expanded) / std::abs(expanded));
  }
  out.slack = out.expanded - out.lower_bound;
  return out;
}

ParameterWindow parameter_window(double gamma, double epsilon) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "carleman.γ");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "carleman.ε");
  ParameterWindow w;
  w.lower = std::pow(1.0 + epsilon, 1.5) / (2.0 * std::pow(1.0 - epsilon, 3));
  w.upper = gamma / (1.0 + epsilon);
  w.nonempty = w.lower < w.upper;
  return w;
}

double cutoff_theta(double x, double M) { return 1.0 - smoothstep((std::abs(x) - M) / M); }

double cutoff_theta_d1(double x, double M) {
  const double sign = x < 0.0 ? -1.0 : 1.0;
  return -smoothstep_d1((std::abs(x) - M) / M) * sign / M;
}

double cutoff_theta_d2(double x, double M) { return -smoothstep_d2((std::abs(x) - M) / M) / (M * M); }

double cutoff_eta(double t, double R_cut) {
  const double r = 1.0 / (2.0 * R_cut);
  return smoothstep((t - r) / r) * smoothstep((1.0 - t - r) / r);
}

double cutoff_eta_d1(double t, double R_cut) {
  const double r = 1.0 / (2.0 * R_cut);
  const double a = (t - r) / r;
  const double b = (1.0 - t - r) / r;
  return (smoothstep_d1(a) * smoothstep(b) - smoothstep(a) * smoothstep_d1(b)) / r;
}

CutoffResult cutoff_apply(const SpaceTimeField& u, double M, double R_cut) {
  const double L = u.grid().half_width();
  if (!(M > 0.0) || !(2.0 * M < L)) throw Error(ErrorKind::SupportOutOfDomain, "cutoff needs 0 < 2M < L");
  if (!(R_cut > 2.0)) throw Error(ErrorKind::SupportOutOfDomain, "cutoff needs R > 2");
  if (u.times().front() < 0.0 || u.times().back() > 1.0) {
    throw Error(ErrorKind::SupportOutOfDomain, "cutoff needs times inside [0, 1]");
  }
  std::vector<ComplexField> g, dtime, dspace;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = u.times()[k];
    const double eta = cutoff_eta(t, R_cut);
    const double eta1 = cutoff_eta_d1(t, R_cut);
    const auto& slice = u.slice(k);
    const auto ux = spectral_derivative(slice);
    g.push_back(multiply(slice, [&](double x) { return cplx(cutoff_theta(x, M) * eta); }));
    dtime.push_back(multiply(slice, [&](double x) { return cplx(cutoff_theta(x, M) * eta1); }));
    auto space = multiply(ux, [&](double x) { return -kI * 2.0 * cutoff_theta_d1(x, M) * eta; });
    space += multiply(slice, [&](double x) { return -kI * cutoff_theta_d2(x, M) * eta; });
    dspace.push_back(std::move(space));
  }
  return CutoffResult{SpaceTimeField(u.grid(), u.times(), std::move(g)),
                      SpaceTimeField(u.grid(), u.times(), std::move(dtime)),
                      SpaceTimeField(u.grid(), u.times(), std::move(dspace))};
}

std::vector<CorePhaseRow> core_phase_scan(const std::vector<double>& mu, const std::vector<double>& epsilon,
                                          std::size_t samples) {
  if (samples < 2) throw Error(ErrorKind::ParameterOutOfRange, "carleman.samples");
  std::vector<CorePhaseRow> rows;
  for (double m : mu) {
    for (double e : epsilon) {
      validate(CarlemanConfig{m, e, 1.0});
      if (!(e < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "carleman.ε");
      const MovingCarleman weight{m, 1.0, e, CarlemanOperator::Schrodinger};
      const double xmax = e * (1.0 - e) * (1.0 - e) / 4.0;
      const double t0 = (1.0 - e) / 2.0;
      double lowest = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = -xmax + 2.0 * xmax * static_cast<double>(i) / static_cast<double>(samples - 1);
        for (std::size_t k = 0; k < samples; ++k) {
          const double t = t0 + e * static_cast<double>(k) / static_cast<double>(samples - 1);
          lowest = std::min(lowest, evaluate_phase(weight, x, t));
        }
      }
      const double q = 4.0 * m * m * std::pow(1.0 - e, 6) - std::pow(1.0 + e, 3);
      rows.push_back({m, e, q > 0.0, lowest, q / (16.0 * m)});
    }
  }
  return rows;
}

}  // namespace hardylab
