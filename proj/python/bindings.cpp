#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kdv/analysis.hpp"
#include "kdv/cn_scheme.hpp"
#include "kdv/commands.hpp"
#include "kdv/config.hpp"
#include "kdv/explicit_scheme.hpp"
#include "kdv/linalg.hpp"
#include "kdv/model.hpp"

namespace py = pybind11;
using namespace kdv;

namespace {

py::array_t<double> to_array(std::span<const double> s) { return py::array_t<double>(s.size(), s.data()); }

template <class Command>
py::tuple run_command(Command command, const cli::RunConfig& cfg) {
  std::ostringstream log;
  const int code = command(cfg, log);
  return py::make_tuple(code, log.str());
}

void bind_model(py::module_& m) {
  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init<double, double, std::size_t>(), py::arg("x_min"), py::arg("x_max"), py::arg("nx"))
      .def_property_readonly("x_min", &Grid1D::x_min)
      .def_property_readonly("x_max", &Grid1D::x_max)
      .def_property_readonly("nx", &Grid1D::nx)
      .def_property_readonly("dx", &Grid1D::dx)
      .def("points", [](const Grid1D& g) { return to_array(g.points()); })
      .def("__eq__", [](const Grid1D& a, const Grid1D& b) { return a == b; });

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double>(), py::arg("t_end"), py::arg("dt"))
      .def_property_readonly("t_end", &TimeGrid::t_end)
      .def_property_readonly("dt", &TimeGrid::dt)
      .def_property_readonly("nt", &TimeGrid::nt);

  py::class_<SchemeParams>(m, "SchemeParams")
      .def(py::init<double, double>(), py::arg("dx"), py::arg("dt"))
      .def_property_readonly("dx", &SchemeParams::dx)
      .def_property_readonly("dt", &SchemeParams::dt)
      .def_property_readonly("alpha", &SchemeParams::alpha)
      .def_property_readonly("beta", &SchemeParams::beta);

  py::class_<WaveField>(m, "WaveField")
      .def(py::init<Grid1D, double, std::vector<double>>(), py::arg("grid"), py::arg("time"), py::arg("values"))
      .def_static("zeros", &WaveField::zeros, py::arg("grid"), py::arg("time") = 0.0)
      .def_property_readonly("grid", &WaveField::grid)
      .def_property_readonly("time", &WaveField::time)
      .def_property_readonly("values", [](const WaveField& f) { return to_array(f.values()); })
      .def("max_abs", &WaveField::max_abs)
      .def("peak_x", &WaveField::peak_x)
      .def("__len__", &WaveField::size);

  py::class_<SolitonSpec>(m, "SolitonSpec")
      .def(py::init<double, double, double>(), py::arg("amplitude"), py::arg("width"), py::arg("speed") = 0.0)
      .def_readwrite("amplitude", &SolitonSpec::amplitude)
      .def_readwrite("width", &SolitonSpec::width)
      .def_readwrite("speed", &SolitonSpec::speed)
      .def_static("from_celerity", &SolitonSpec::from_celerity)
      .def_static("appendix", &SolitonSpec::appendix);

  py::enum_<TravelingWaveForm>(m, "TravelingWaveForm")
      .value("Verified", TravelingWaveForm::Verified)
      .value("Claimed", TravelingWaveForm::Claimed);

  m.def("initial_condition", &initial_condition, py::arg("grid"), py::arg("c"));
  m.def("soliton_profile", &soliton_profile, py::arg("grid"), py::arg("spec"), py::arg("t") = 0.0);
  m.def("traveling_wave", &traveling_wave, py::arg("grid"), py::arg("v"), py::arg("t"),
        py::arg("form") = TravelingWaveForm::Verified);
  m.def(
      "traveling_wave_residual",
      [](double v, TravelingWaveForm form, const std::vector<double>& xs, double t, double step) {
        return pde_residual(traveling_wave_function(v, form), xs, t, step);
      },
      py::arg("v"), py::arg("form"), py::arg("x"), py::arg("t"), py::arg("step") = 1e-3);
  m.def(
      "pde_residual",
      [](const std::function<double(double, double)>& u, const std::vector<double>& xs, double t, double step) {
        const SpaceTimeFunction f = [&](long double x, long double tt) {
          return static_cast<long double>(u(static_cast<double>(x), static_cast<double>(tt)));
        };
        return pde_residual(f, xs, t, step);
      },
      py::arg("u"), py::arg("x"), py::arg("t"), py::arg("step") = 1e-3);
  m.def("mass", &mass, py::arg("field"));
}

void bind_linalg(py::module_& m) {
  using namespace linalg;
  py::class_<Pentadiagonal>(m, "Pentadiagonal")
      .def(py::init<std::vector<double>, std::vector<double>, std::vector<double>, std::vector<double>,
                    std::vector<double>>(),
           py::arg("sub2"), py::arg("sub1"), py::arg("diag"), py::arg("sup1"), py::arg("sup2"))
      .def_static("identity", &Pentadiagonal::identity)
      .def_static("from_row", &Pentadiagonal::from_row, py::arg("n"), py::arg("row"))
      .def_property_readonly("n", &Pentadiagonal::n)
      .def("at", &Pentadiagonal::at)
      .def("row", &Pentadiagonal::row)
      .def("to_dense", [](const Pentadiagonal& p) {
        const auto d = to_dense(p);
        py::array_t<double> out({d.n, d.n});
        std::copy(d.data.begin(), d.data.end(), out.mutable_data());
        return out;
      });

  py::class_<PowerIterationReport>(m, "PowerIterationReport")
      .def_readonly("estimate", &PowerIterationReport::estimate)
      .def_readonly("iterations", &PowerIterationReport::iterations)
      .def_readonly("converged", &PowerIterationReport::converged)
      .def_readonly("residual", &PowerIterationReport::residual);

  py::class_<InvertibilityReport>(m, "InvertibilityReport")
      .def_readonly("method", &InvertibilityReport::method)
      .def_readonly("certified", &InvertibilityReport::certified)
      .def_readonly("detail", &InvertibilityReport::detail);

  m.def("matvec", [](const Pentadiagonal& p, const std::vector<double>& x) { return matvec(p, x); });
  m.def("solve_banded", [](const Pentadiagonal& p, const std::vector<double>& b) { return solve_banded(p, b); });
  m.def(
      "power_iteration",
      [](const Pentadiagonal& p, const std::vector<double>& b0, double tol, int max_iters) {
        return power_iteration(p, b0, tol, max_iters);
      },
      py::arg("p"), py::arg("b0"), py::arg("tol") = 1e-10, py::arg("max_iters") = 10000);
  m.def("gram_power_iteration", &gram_power_iteration, py::arg("p"), py::arg("tol") = 1e-10,
        py::arg("max_iters") = 10000);
  m.def("invertibility_certificate", &invertibility_certificate);
  m.def("symmetric_part_defect", &symmetric_part_defect);
}

void bind_schemes(py::module_& m) {
  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("requested_time", &Snapshot::requested_time)
      .def_readonly("step", &Snapshot::step)
      .def_readonly("field", &Snapshot::field)
      .def_property_readonly("mass", [](const Snapshot& s) { return s.diagnostics.mass; })
      .def_property_readonly("max_abs", [](const Snapshot& s) { return s.diagnostics.max_abs; })
      .def_property_readonly("peak_x", [](const Snapshot& s) { return s.diagnostics.peak_x; });

  py::enum_<Outcome>(m, "Outcome").value("Completed", Outcome::Completed).value("BlowUp", Outcome::BlowUp);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("snapshots", &RunResult::snapshots)
      .def_readonly("outcome", &RunResult::outcome)
      .def_readonly("blowup_step", &RunResult::blowup_step)
      .def_readonly("steps_taken", &RunResult::steps_taken)
      .def_readonly("initial_mass", &RunResult::initial_mass)
      .def_readonly("growth_ratio", &RunResult::growth_ratio)
      .def_readonly("final_field", &RunResult::final_field);

  py::class_<ExplicitConfig>(m, "ExplicitConfig")
      .def(py::init([](SchemeParams p, double max_amplitude) { return ExplicitConfig{p, max_amplitude, true}; }),
           py::arg("params"), py::arg("max_amplitude") = 1e6)
      .def_readwrite("max_amplitude", &ExplicitConfig::max_amplitude);

  py::enum_<LinearizationKind>(m, "LinearizationKind")
      .value("LaggedCoefficient", LinearizationKind::LaggedCoefficient)
      .value("ImplicitCoefficient", LinearizationKind::ImplicitCoefficient);
  py::enum_<GammaMode>(m, "GammaMode")
      .value("RowVarying", GammaMode::RowVarying)
      .value("FrozenMidpoint", GammaMode::FrozenMidpoint);

  py::class_<CnConfig>(m, "CnConfig")
      .def(py::init([](SchemeParams p, LinearizationKind lin, GammaMode gamma, double picard_tol, int picard_max_iters,
                       bool paper_normalization, double max_amplitude) {
             return CnConfig{p, lin, gamma, picard_tol, picard_max_iters, paper_normalization, max_amplitude};
           }),
           py::arg("params"), py::arg("linearization") = LinearizationKind::LaggedCoefficient,
           py::arg("gamma_mode") = GammaMode::RowVarying, py::arg("picard_tol") = 1e-10,
           py::arg("picard_max_iters") = 50, py::arg("paper_normalization") = false,
           py::arg("max_amplitude") = 1e6)
      .def_readwrite("linearization", &CnConfig::linearization)
      .def_readwrite("gamma_mode", &CnConfig::gamma_mode)
      .def_readwrite("paper_normalization", &CnConfig::paper_normalization);

  py::class_<CnSystem>(m, "CnSystem").def_readonly("a", &CnSystem::a).def_readonly("b", &CnSystem::b);

  m.def("explicit_step", &explicit_step);
  m.def("run_explicit", [](const WaveField& ic, const ExplicitConfig& cfg, const TimeGrid& time,
                           const std::vector<double>& snaps) { return run_explicit(ic, cfg, time, snaps); });
  m.def("assemble_lagged", &assemble_lagged);
  m.def("assemble_implicit", &assemble_implicit);
  m.def("cn_step_lagged", &cn_step_lagged);
  m.def("cn_step_implicit", [](const WaveField& u, const CnConfig& cfg) {
    auto r = cn_step_implicit(u, cfg);
    return py::make_tuple(r.field, r.iterations);
  });
  m.def("run_cn", [](const WaveField& ic, const CnConfig& cfg, const TimeGrid& time,
                     const std::vector<double>& snaps) { return run_cn(ic, cfg, time, snaps); });
}

void bind_analysis(py::module_& m) {
  using namespace analysis;
  py::enum_<StencilKind>(m, "StencilKind")
      .value("FirstDerivCentered", StencilKind::FirstDerivCentered)
      .value("SecondDerivCentered", StencilKind::SecondDerivCentered)
      .value("ThirdDerivCentered", StencilKind::ThirdDerivCentered)
      .value("NonlinearProduct", StencilKind::NonlinearProduct);
  py::enum_<SchemeKind>(m, "SchemeKind")
      .value("CrankNicolson", SchemeKind::CrankNicolson)
      .value("Explicit", SchemeKind::Explicit);

  py::class_<AmplificationPoint>(m, "AmplificationPoint")
      .def_readonly("theta", &AmplificationPoint::theta)
      .def_readonly("magnitude", &AmplificationPoint::magnitude)
      .def_property_readonly("lam", [](const AmplificationPoint& p) { return std::complex<double>(p.lambda_re, p.lambda_im); });

  py::class_<StabilityRow>(m, "StabilityRow")
      .def_readonly("params", &StabilityRow::params)
      .def_readonly("u0", &StabilityRow::u0)
      .def_readonly("max_magnitude", &StabilityRow::max_magnitude);

  m.def("apply_stencil", [](StencilKind kind, const std::vector<double>& u, double dx, std::size_t i) {
    return apply_stencil(kind, u, dx, i);
  });
  m.def("cn_amplification", &cn_amplification, py::arg("theta"), py::arg("params"), py::arg("u0"));
  m.def("explicit_amplification", &explicit_amplification, py::arg("theta"), py::arg("params"), py::arg("u0"));
  m.def("theta_grid", &theta_grid);
  m.def("stability_scan", [](SchemeKind kind, const std::vector<SchemeParams>& params, const std::vector<double>& u0,
                             const std::vector<double>& theta) { return stability_scan(kind, params, u0, theta); });
  m.def("observed_order", [](const std::vector<std::pair<double, double>>& e) { return observed_order(e); });
}

void bind_cli(py::module_& m) {
  using namespace cli;
  py::class_<RunConfig>(m, "RunConfig")
      .def_readonly("nx", &RunConfig::nx)
      .def_readonly("dt", &RunConfig::dt)
      .def_readonly("t_end", &RunConfig::t_end)
      .def_readonly("x_min", &RunConfig::x_min)
      .def_readonly("x_max", &RunConfig::x_max)
      .def_readonly("snapshot_times", &RunConfig::snapshot_times)
      .def_readonly("output_dir", &RunConfig::output_dir)
      .def_property_readonly("scheme", [](const RunConfig& c) { return to_string(c.scheme); })
      .def_property_readonly("gamma_mode", [](const RunConfig& c) { return to_string(c.gamma_mode); })
      .def_property_readonly("ic", [](const RunConfig& c) { return to_string(c.ic); })
      .def("echo", &echo_config);

  m.def("parse_config", &parse_config, py::arg("text") = "", py::arg("overrides") = std::vector<Override>{});
  m.def("cmd_run", [](const RunConfig& c) { return run_command(cmd_run, c); });
  m.def("cmd_scan", [](const RunConfig& c) { return run_command(cmd_scan, c); });
  m.def("cmd_eigen", [](const RunConfig& c) { return run_command(cmd_eigen, c); });
  m.def("cmd_converge", [](const RunConfig& c) { return run_command(cmd_converge, c); });
  m.def("scan_csv", &scan_csv);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicit and Crank-Nicolson solvers for the KdV equation";

  auto base = py::register_exception<Error>(m, "KdvError", PyExc_RuntimeError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base);
  py::register_exception<BlowUp>(m, "BlowUp", base);
  py::register_exception<FixedPointFailure>(m, "FixedPointFailure", base);
  py::register_exception<OracleFailure>(m, "OracleFailure", base);
  py::register_exception<NonFiniteValue>(m, "NonFiniteValue", base);

  bind_model(m);
  bind_linalg(m);
  bind_schemes(m);
  bind_analysis(m);
  bind_cli(m);
}
