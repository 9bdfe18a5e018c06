#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rissop/acceptance.hpp"
#include "rissop/analytics.hpp"
#include "rissop/model.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/optimize.hpp"
#include "rissop/rng.hpp"
#include "rissop/scenario.hpp"

namespace py = pybind11;
using namespace rissop;

namespace {

ChannelSet channels_from_arrays(const CMatrix& h_b, const CMatrix& h_ris,
                                const CMatrix& g_r) {
  return ChannelSet{h_b, h_ris, g_r};
}

PhaseSolverKind solver_from_string(const std::string& name) {
  if (name == "sdr") return PhaseSolverKind::kSdr;
  if (name == "manifold") return PhaseSolverKind::kManifold;
  if (name == "closed_form") return PhaseSolverKind::kClosedForm;
  throw std::invalid_argument("unknown phase solver '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(rissop, m) {
  m.doc() = "Secrecy-outage analysis and optimization for RIS-assisted MIMO "
            "wiretap channels";

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("n_t", &SystemConfig::n_t)
      .def_readwrite("n_r", &SystemConfig::n_r)
      .def_readwrite("n_e", &SystemConfig::n_e)
      .def_readwrite("n_s", &SystemConfig::n_s)
      .def_readwrite("alpha", &SystemConfig::alpha)
      .def_readwrite("beta", &SystemConfig::beta)
      .def_readwrite("rho", &SystemConfig::rho)
      .def_readwrite("sigma2", &SystemConfig::sigma2)
      .def_readwrite("sigma_e2", &SystemConfig::sigma_e2)
      .def_readwrite("r_s", &SystemConfig::r_s)
      .def("validate", &SystemConfig::validate)
      .def("snr_db", &SystemConfig::snr_db);

  py::class_<ChannelSet>(m, "ChannelSet")
      .def(py::init(&channels_from_arrays), py::arg("h_b"), py::arg("h_ris"),
           py::arg("g_r"))
      .def_readwrite("h_b", &ChannelSet::h_b)
      .def_readwrite("h_ris", &ChannelSet::h_ris)
      .def_readwrite("g_r", &ChannelSet::g_r);

  py::class_<PhaseVector>(m, "PhaseVector")
      .def_static("ones", &PhaseVector::ones, py::arg("n"))
      .def_static("from_angles", &PhaseVector::from_angles, py::arg("theta"))
      .def_static("unit", &PhaseVector::unit, py::arg("q"))
      .def_property_readonly("coeffs", &PhaseVector::coeffs)
      .def("angles", &PhaseVector::angles)
      .def("__len__", &PhaseVector::size);

  py::class_<Beamformer>(m, "Beamformer")
      .def_static("make", &Beamformer::make, py::arg("v"), py::arg("p"))
      .def_readonly("b", &Beamformer::b)
      .def_readonly("p", &Beamformer::p)
      .def("w", &Beamformer::w);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("bandwidth_hz", &NoiseModel::bandwidth_hz)
      .def_readwrite("noise_figure_db", &NoiseModel::noise_figure_db)
      .def_readwrite("gain_alice_bob", &NoiseModel::gain_alice_bob)
      .def_readwrite("gain_alice_ris", &NoiseModel::gain_alice_ris)
      .def_readwrite("gain_ris_bob", &NoiseModel::gain_ris_bob);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("p_hat", &McEstimate::p_hat)
      .def_readonly("trials", &McEstimate::trials)
      .def_readonly("std_err", &McEstimate::std_err)
      .def_readonly("seed", &McEstimate::seed);

  py::class_<AOStep>(m, "AOStep")
      .def_readonly("iteration", &AOStep::iteration)
      .def_readonly("p_out", &AOStep::p_out)
      .def_readonly("objective", &AOStep::objective);

  py::class_<AOReport>(m, "AOReport")
      .def_readonly("trace", &AOReport::trace)
      .def_readonly("final_q", &AOReport::final_q)
      .def_readonly("final_b", &AOReport::final_b)
      .def_readonly("converged", &AOReport::converged)
      .def_readonly("iterations_used", &AOReport::iterations_used);

  m.def("sample_rayleigh", &sample_rayleigh, py::arg("rows"), py::arg("cols"),
        py::arg("seed"), py::arg("stream") = 0);
  m.def("random_phase_vector", &random_phase_vector, py::arg("n"),
        py::arg("seed"), py::arg("stream") = 0);
  m.def("random_unit_vector", &random_unit_vector, py::arg("n"),
        py::arg("seed"), py::arg("stream") = 0);
  m.def("generate_channels", &generate_channels, py::arg("cfg"),
        py::arg("seed"), py::arg("noise") = NoiseModel{});

  m.def("main_capacity", &main_capacity);
  m.def("noise_floor_dbm", &noise_floor_dbm);
  m.def("dbm_to_watts", &dbm_to_watts);
  m.def("watts_to_dbm", &watts_to_dbm);

  m.def("reg_upper_gamma", &reg_upper_gamma, py::arg("m"), py::arg("z"));
  m.def("gain_cdf", &gain_cdf, py::arg("beta"), py::arg("m"),
        py::arg("u_norm2"), py::arg("x"));
  m.def("sop_theory", &sop_theory);
  m.def("sop_high_snr_bound", &sop_high_snr_bound);
  m.def("sop_single_alice", &sop_single_alice);
  m.def("sop_single_eve", &sop_single_eve);

  m.def("empirical_sop", &empirical_sop, py::arg("cfg"), py::arg("ch"),
        py::arg("phase"), py::arg("bf"), py::arg("trials"), py::arg("seed"),
        py::arg("n_threads") = 1);
  m.def("empirical_gain_moments", &empirical_gain_moments, py::arg("beta"),
        py::arg("m"), py::arg("u"), py::arg("trials"), py::arg("seed"),
        py::arg("n_threads") = 1);
  m.def("empirical_cdf_distance", &empirical_cdf_distance, py::arg("beta"),
        py::arg("m"), py::arg("u"), py::arg("trials"), py::arg("seed"),
        py::arg("scale_override") = 0.0);

  m.def(
      "mrt_baseline",
      [](const SystemConfig& cfg, const ChannelSet& ch, bool with_ris,
         const std::optional<PhaseVector>& phase) {
        return mrt_baseline(cfg, ch, with_ris, phase);
      },
      py::arg("cfg"), py::arg("ch"), py::arg("with_ris"),
      py::arg("phase") = std::nullopt);
  m.def(
      "manifold_phase_opt",
      [](const SystemConfig& cfg, const ChannelSet& ch, const Beamformer& bf,
         const PhaseVector& q0) {
        const PhaseOptResult r = manifold_phase_opt(cfg, ch, bf, q0);
        return py::make_tuple(r.q, r.objective, r.iterations, r.converged);
      },
      py::arg("cfg"), py::arg("ch"), py::arg("bf"), py::arg("q0"));
  m.def(
      "sdr_phase_opt",
      [](const SystemConfig& cfg, const ChannelSet& ch, const Beamformer& bf) {
        const SdrResult r = sdr_phase_opt(cfg, ch, bf);
        return py::make_tuple(r.q, r.sdp_value, r.stagnated);
      },
      py::arg("cfg"), py::arg("ch"), py::arg("bf"));
  m.def("closed_form_phase_single_bob", &closed_form_phase_single_bob,
        py::arg("ch"), py::arg("bf"), py::arg("alpha"));
  m.def(
      "alternating_optimize",
      [](const SystemConfig& cfg, const ChannelSet& ch,
         const std::string& solver, std::uint64_t seed, double xi,
         int iter_max) {
        AOOptions opt;
        opt.xi = xi;
        opt.iter_max = iter_max;
        return alternating_optimize(cfg, ch, solver_from_string(solver), seed,
                                    opt);
      },
      py::arg("cfg"), py::arg("ch"), py::arg("solver"), py::arg("seed"),
      py::arg("xi") = 1e-5, py::arg("iter_max") = 50);

  m.def(
      "run_scenario_csv",
      [](const std::string& json_text, int n_threads) {
        return to_csv(run_scenario(scenario_from_json_text(json_text), false,
                                   n_threads));
      },
      py::arg("json_text"), py::arg("n_threads") = 1);

  m.def(
      "run_acceptance",
      [](std::uint64_t seed, int n_threads) {
        AcceptanceOptions opt;
        opt.seed = seed;
        opt.n_threads = n_threads;
        const auto results = run_acceptance(opt);
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["measured"] = r.measured;
          d["tolerance"] = r.tolerance;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 1, py::arg("n_threads") = 0);
}
