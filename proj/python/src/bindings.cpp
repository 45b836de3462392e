#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "app/app.hpp"
#include "hardylab/analytic.hpp"
#include "hardylab/appell.hpp"
#include "hardylab/carleman.hpp"
#include "hardylab/convexity.hpp"
#include "hardylab/counterexample.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/propagator.hpp"
#include "hardylab/weight.hpp"

namespace py = pybind11;
using namespace hardylab;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

ComplexField to_field(const CArray& values, double half_width) {
  if (values.ndim() != 1) throw Error(ErrorKind::InvalidField, "expected a one-dimensional array");
  const Grid grid(half_width, static_cast<std::size_t>(values.shape(0)));
  return ComplexField(grid, std::vector<cplx>(values.data(), values.data() + values.shape(0)));
}

CArray to_array(const ComplexField& f) {
  CArray out(static_cast<py::ssize_t>(f.size()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

SpaceTimeField to_space_time(const CArray& slices, const std::vector<double>& times, double half_width) {
  if (slices.ndim() != 2) throw Error(ErrorKind::InvalidField, "expected a (times, points) array");
  const auto nt = static_cast<std::size_t>(slices.shape(0));
  const auto nx = static_cast<std::size_t>(slices.shape(1));
  const Grid grid(half_width, nx);
  std::vector<ComplexField> out;
  for (std::size_t k = 0; k < nt; ++k) {
    const cplx* row = slices.data() + k * nx;
    out.emplace_back(grid, std::vector<cplx>(row, row + nx));
  }
  return SpaceTimeField(grid, times, std::move(out));
}

CArray to_array(const SpaceTimeField& u) {
  const auto nx = u.grid().points();
  CArray out({static_cast<py::ssize_t>(u.size()), static_cast<py::ssize_t>(nx)});
  for (std::size_t k = 0; k < u.size(); ++k) {
    std::copy(u.slice(k).values().begin(), u.slice(k).values().end(), out.mutable_data() + k * nx);
  }
  return out;
}

FlowSpec make_flow(double A, double B, const std::optional<RArray>& potential) {
  FlowSpec f;
  f.A = A;
  f.B = B;
  if (potential) f.static_potential = std::vector<double>(potential->data(), potential->data() + potential->size());
  return f;
}

CarlemanOperator parse_op(const std::string& name) {
  if (name == "schrodinger") return CarlemanOperator::Schrodinger;
  if (name == "parabolic") return CarlemanOperator::Parabolic;
  throw Error(ErrorKind::ParameterOutOfRange, "operator must be 'schrodinger' or 'parabolic'");
}

}  // namespace

PYBIND11_MODULE(_hardylab, m) {
  m.doc() = "Spectral experiments on Gaussian-weighted estimates for Schrodinger evolutions";
  static py::exception<Error> error(m, "HardylabError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("grid_coordinates", [](double L, std::size_t n) { return Grid(L, n).coordinates(); }, py::arg("L"),
        py::arg("N"));

  m.def(
      "gaussian",
      [](double L, std::size_t n, cplx c, cplx amplitude) { return to_array(GaussianState{c, amplitude}.sample(Grid(L, n))); },
      py::arg("L"), py::arg("N"), py::arg("c") = cplx(1.0), py::arg("amplitude") = cplx(1.0),
      "amplitude * exp(-c x^2) sampled on the grid");
  m.def(
      "evolve_gaussian",
      [](cplx c, cplx amplitude, double A, double B, double t) {
        const auto s = evolve_gaussian(GaussianState{c, amplitude}, A, B, t);
        return py::make_tuple(s.c, s.amplitude);
      },
      py::arg("c"), py::arg("amplitude"), py::arg("A"), py::arg("B"), py::arg("t"),
      "closed-form (c, amplitude) after time t of dt u = (A + iB) u_xx");

  m.def(
      "free_flow", [](const CArray& u0, double L, double A, double B, double t) { return to_array(free_flow(to_field(u0, L), A, B, t)); },
      py::arg("u0"), py::arg("L"), py::arg("A"), py::arg("B"), py::arg("t"));
  m.def(
      "propagate",
      [](const CArray& u0, double L, double A, double B, double t0, double t1, std::optional<RArray> potential,
         double max_step) { return to_array(propagate(to_field(u0, L), make_flow(A, B, potential), t0, t1, max_step)); },
      py::arg("u0"), py::arg("L"), py::arg("A"), py::arg("B"), py::arg("t0"), py::arg("t1"),
      py::arg("potential") = py::none(), py::arg("max_step") = kDefaultTimeStep,
      "Strang split-step evolution with an optional real static potential");
  m.def(
      "semigroup_identity_check",
      [](const CArray& u0, double L, cplx z1, cplx z2) { return semigroup_identity_check(to_field(u0, L), z1, z2); },
      py::arg("u0"), py::arg("L"), py::arg("z1"), py::arg("z2"));
  m.def(
      "lemma1_decay_check",
      [](const CArray& u0, double L, double A, double B, double gamma, double T) {
        const auto r = lemma1_decay_check(to_field(u0, L), make_flow(A, B, std::nullopt), gamma, T);
        return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("margin") = r.margin,
                        py::arg("weight_rate") = r.weight_rate, py::arg("lhs_tail_ratio") = r.lhs_tail_ratio);
      },
      py::arg("u0"), py::arg("L"), py::arg("A"), py::arg("B"), py::arg("gamma"), py::arg("T"));

  m.def(
      "weighted_l2_norm",
      [](const CArray& f, double L, double gamma, bool strict, double noise_floor) {
        const auto r = weighted_l2_norm(to_field(f, L), StaticGaussian{gamma}, 0.0, strict, noise_floor);
        return py::make_tuple(r.value, r.tail_ratio, r.converged);
      },
      py::arg("f"), py::arg("L"), py::arg("gamma"), py::arg("strict") = false, py::arg("noise_floor") = 0.0,
      "(||e^{gamma x^2} f||, tail_ratio, converged)");

  m.def(
      "log_convexity_check",
      [](std::vector<double> times, std::vector<double> H, double slack) {
        const auto r = log_convexity_check(trace_from_values(std::move(times), std::move(H)), slack);
        return py::dict(py::arg("worst_violation") = r.worst_violation, py::arg("min_second_diff") = r.min_second_diff,
                        py::arg("worst_interpolation_margin") = r.worst_interpolation_margin);
      },
      py::arg("times"), py::arg("H"), py::arg("slack") = 0.0);
  m.def(
      "commutator_form",
      [](const CArray& f, double L, double gamma, double A, double B) {
        const auto c = commutator_form(to_field(f, L), gamma, A, B);
        return py::dict(py::arg("value_of_form") = c.value_of_form, py::arg("direct_value") = c.direct_value,
                        py::arg("gradient_part") = c.gradient_part, py::arg("moment_part") = c.moment_part);
      },
      py::arg("f"), py::arg("L"), py::arg("gamma"), py::arg("A"), py::arg("B"));
  m.def(
      "hermite_lower_bound_check",
      [](const CArray& f, double L, double gamma) {
        const auto h = hermite_lower_bound_check(to_field(f, L), gamma);
        return py::make_tuple(h.lhs, h.rhs, h.margin);
      },
      py::arg("f"), py::arg("L"), py::arg("gamma"), "(lhs, rhs, margin)");

  m.def("s_map", [](double alpha, double beta, double t) { return s_map(AppellParams{alpha, beta}, t); },
        py::arg("alpha"), py::arg("beta"), py::arg("t"));
  m.def(
      "appell_transform",
      [](const CArray& slices, std::vector<double> times, double L, double alpha, double beta, double A, double B,
         std::optional<double> gamma) {
        const auto r = appell_transform(to_space_time(slices, times, L), AppellParams{alpha, beta, A, B}, gamma);
        return py::dict(py::arg("transformed") = to_array(r.transformed), py::arg("s_of_t") = r.s_of_t,
                        py::arg("norm_identity_residual") = r.norm_identity_residual,
                        py::arg("norm_identity_slices") = r.norm_identity_slices,
                        py::arg("interpolation_error") = r.interpolation_error);
      },
      py::arg("slices"), py::arg("times"), py::arg("L"), py::arg("alpha"), py::arg("beta"), py::arg("A") = 0.0,
      py::arg("B") = 1.0, py::arg("gamma") = py::none());

  m.def(
      "carleman_sweep",
      [](std::size_t bumps, std::vector<double> mu, std::vector<double> epsilon, std::vector<double> R,
         const std::string& op, std::uint64_t seed, std::size_t nodes, unsigned threads) {
        CarlemanSweepSpec spec;
        spec.bumps = bumps;
        spec.mu = std::move(mu);
        spec.epsilon = std::move(epsilon);
        spec.R = std::move(R);
        spec.op = parse_op(op);
        spec.seed = seed;
        spec.nodes = nodes;
        spec.threads = threads;
        py::list rows;
        for (const auto& r : carleman_sweep(spec)) {
          rows.append(py::dict(py::arg("bump") = r.bump_index, py::arg("mu") = r.cfg.mu,
                               py::arg("epsilon") = r.cfg.epsilon, py::arg("R") = r.cfg.R,
                               py::arg("lhs") = r.report.lhs, py::arg("rhs") = r.report.rhs,
                               py::arg("margin") = r.report.margin, py::arg("pass") = r.report.pass));
        }
        return rows;
      },
      py::arg("bumps") = 50, py::arg("mu") = std::vector<double>{0.5, 1.0, 2.0},
      py::arg("epsilon") = std::vector<double>{0.1, 0.5, 1.0}, py::arg("R") = std::vector<double>{1.0, 5.0, 10.0},
      py::arg("op") = "schrodinger", py::arg("seed") = 20240101, py::arg("nodes") = 128, py::arg("threads") = 1);
  m.def(
      "parameter_window",
      [](double gamma, double epsilon) {
        const auto w = parameter_window(gamma, epsilon);
        return py::make_tuple(w.lower, w.upper, w.nonempty);
      },
      py::arg("gamma"), py::arg("epsilon"), "(lower, upper, nonempty)");

  m.def(
      "solve_weight_ode",
      [](double t_max, double step) {
        const auto traj = solve_weight_ode(t_max, step);
        return py::dict(py::arg("t") = traj.times, py::arg("a") = traj.a, py::arg("b") = traj.b,
                        py::arg("first_integral_residual") = first_integral_residual(traj));
      },
      py::arg("t_max") = 50.0, py::arg("step") = kMaxOdeStep);
  m.def(
      "scaled_weight",
      [](double R, double t, double t_max) { return scaled_weight(WeightInterpolant(solve_weight_ode(t_max)), R, t); },
      py::arg("R"), py::arg("t"), py::arg("t_max") = 50.0, "a_R(t) = R a(R t)");
  m.def(
      "divergence_demonstration",
      [](double R, std::vector<double> half_widths, double t_max) {
        const auto table = divergence_demonstration(WeightInterpolant(solve_weight_ode(t_max)), R, half_widths);
        py::list rows;
        for (const auto& r : table.rows) {
          rows.append(py::dict(py::arg("L") = r.L, py::arg("log_H0") = r.log_H0, py::arg("H_minus1") = r.H_minus1,
                               py::arg("H_plus1") = r.H_plus1, py::arg("h0_converged") = r.h0_converged,
                               py::arg("h1_converged") = r.h1_converged));
        }
        return py::dict(py::arg("R") = table.R, py::arg("weight_rate_at_one") = table.weight_rate_at_one,
                        py::arg("h0_divergent_regime") = table.h0_divergent_regime, py::arg("rows") = rows);
      },
      py::arg("R"), py::arg("half_widths"), py::arg("t_max") = 50.0);

  m.def(
      "hardy_product",
      [](const CArray& u0, const CArray& uT, double L, double T) {
        const auto p = hardy_product(to_field(u0, L), to_field(uT, L), T);
        return py::dict(py::arg("alpha") = p.alpha, py::arg("beta") = p.beta, py::arg("normalized") = p.normalized,
                        py::arg("forbidden") = p.forbidden);
      },
      py::arg("u0"), py::arg("uT"), py::arg("L"), py::arg("T"));
  m.def("heat_boundary", &heat_boundary, py::arg("c"));

  m.def(
      "_run_config",
      [](const std::string& config, const std::string& out_dir, bool write_files, unsigned threads, bool strict_tails,
         std::optional<std::uint64_t> seed) {
        app::RunOptions options;
        options.out_dir = out_dir;
        options.write_files = write_files;
        options.threads = threads;
        options.strict_tails = strict_tails;
        options.seed_override = seed;
        app::json parsed;
        try {
          parsed = app::json::parse(config);
        } catch (const app::json::parse_error& e) {
          throw Error(ErrorKind::ConfigError, e.what());
        }
        app::RunResult result;
        {
          py::gil_scoped_release release;
          result = app::run_config(parsed, options);
        }
        return result.summary.dump();
      },
      py::arg("config"), py::arg("out_dir"), py::arg("write_files"), py::arg("threads"), py::arg("strict_tails"),
      py::arg("seed"));
}
