#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infospec/classical.hpp"
#include "infospec/divergences.hpp"
#include "infospec/expansion.hpp"
#include "infospec/protocols.hpp"
#include "infospec/verify.hpp"

namespace py = pybind11;
using namespace infospec;

namespace {

Direction parse_direction(const std::string& s) {
  if (s == "underline") return Direction::Underline;
  if (s == "overline") return Direction::Overline;
  throw InputError("direction must be 'underline' or 'overline'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "information-spectrum relative entropies, one-shot bounds and "
            "second-order expansions on finite-dimensional states";
  m.attr("__version__") = kVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CertificateError>(m, "CertificateError", PyExc_RuntimeError);
  py::register_exception<ProtocolFailure>(m, "ProtocolFailure", PyExc_RuntimeError);

  py::class_<DivergenceResult>(m, "DivergenceResult")
      .def_readonly("gamma", &DivergenceResult::gamma)
      .def_readonly("achieved_gap", &DivergenceResult::achieved_gap)
      .def_readonly("bracket", &DivergenceResult::bracket)
      .def_readonly("tol", &DivergenceResult::tol)
      .def_readonly("infinite", &DivergenceResult::infinite)
      .def("__repr__", [](const DivergenceResult& r) {
        return "DivergenceResult(gamma=" + std::to_string(r.gamma) + ")";
      });

  py::class_<RelEntStats>(m, "RelEntStats")
      .def_readonly("D", &RelEntStats::D)
      .def_readonly("V", &RelEntStats::V)
      .def_readonly("s", &RelEntStats::s)
      .def_readonly("infinite", &RelEntStats::infinite);

  py::class_<ExpansionCoefficients>(m, "ExpansionCoefficients")
      .def_readonly("a", &ExpansionCoefficients::a)
      .def_readonly("b", &ExpansionCoefficients::b)
      .def_readonly("dispersion", &ExpansionCoefficients::dispersion)
      .def_readonly("eps", &ExpansionCoefficients::eps)
      .def_readonly("degenerate", &ExpansionCoefficients::degenerate)
      .def("rate", &ExpansionCoefficients::rate, py::arg("n"));

  py::class_<CodeRecord>(m, "CodeRecord")
      .def_readonly("m", &CodeRecord::m)
      .def_readonly("gamma", &CodeRecord::gamma)
      .def_readonly("value", &CodeRecord::value)
      .def_readonly("fidelity_sq", &CodeRecord::fidelity_sq)
      .def_readonly("p_fail", &CodeRecord::p_fail)
      .def_readonly("delta_rounding", &CodeRecord::delta_rounding);

  m.def("trace_gap", &trace_gap, py::arg("rho"), py::arg("sigma"), py::arg("gamma"));

  m.def(
      "info_spectrum_divergence",
      [](const Matrix& rho, const Matrix& sigma, double eps, const std::string& direction) {
        return info_spectrum_divergence(rho, sigma, eps, parse_direction(direction));
      },
      py::arg("rho"), py::arg("sigma"), py::arg("eps"), py::arg("direction") = "underline");

  m.def(
      "ds_tomamichel_hayashi",
      [](const Matrix& rho, const Matrix& sigma, double eps) {
        const ThDivergence r = ds_tomamichel_hayashi(rho, sigma, eps);
        return py::make_tuple(r.value, r.left_limit);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("eps"));

  m.def(
      "hypothesis_testing_divergence",
      [](const Matrix& rho, const Matrix& sigma, double eps) {
        const HypothesisTest r = hypothesis_testing_divergence(rho, sigma, eps);
        return py::make_tuple(r.value, r.optimal_test);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("eps"));

  m.def(
      "max_divergence",
      [](const Matrix& rho, const Matrix& sigma, double eps) {
        const MaxDivergence r = max_divergence(rho, sigma, eps);
        return py::make_tuple(r.lower, r.upper);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("eps") = 0.0);

  m.def("relative_entropy_stats", &relative_entropy_stats, py::arg("rho"), py::arg("sigma"));

  m.def(
      "nussbaum_szkola",
      [](const Matrix& rho, const Matrix& sigma) {
        const ClassicalPair pair = nussbaum_szkola(rho, sigma);
        return py::make_tuple(pair.p, pair.q);
      },
      py::arg("rho"), py::arg("sigma"));

  m.def("normal_quantile", &normal_quantile, py::arg("eps"));
  m.def("normal_cdf", &normal_cdf, py::arg("z"));

  m.def(
      "source_coding_expansion",
      [](const Matrix& rho, double eps) { return source_coding_expansion(rho, eps); },
      py::arg("rho"), py::arg("eps"));

  m.def(
      "entanglement_expansion",
      [](const std::vector<double>& schmidt, double eps, const std::string& task) {
        RealVector lam(schmidt.size());
        for (std::size_t i = 0; i < schmidt.size(); ++i) lam(static_cast<Eigen::Index>(i)) = schmidt[i];
        const BipartitePureState psi = BipartitePureState::from_schmidt(lam);
        return entanglement_expansion(psi, eps, task == "dilute" ? Task::Dilute : Task::Distill);
      },
      py::arg("schmidt"), py::arg("eps"), py::arg("task") = "distill");

  m.def(
      "irreversibility_gap",
      [](const std::vector<double>& schmidt, double eps, double delta, long n) {
        RealVector lam(schmidt.size());
        for (std::size_t i = 0; i < schmidt.size(); ++i) lam(static_cast<Eigen::Index>(i)) = schmidt[i];
        const IrreversibilityGap g =
            irreversibility_gap(BipartitePureState::from_schmidt(lam), eps, delta, n);
        return py::make_tuple(g.gap_bits, g.crossover_n, g.degenerate);
      },
      py::arg("schmidt"), py::arg("eps"), py::arg("delta"), py::arg("n") = 1);

  m.def(
      "cq_capacity",
      [](const std::vector<Matrix>& outputs, std::uint64_t seed) {
        CqChannel w;
        w.outputs = outputs;
        CapacityOptions opts;
        opts.seed = seed;
        const DispersionSet ds = cq_capacity(w, opts);
        return py::make_tuple(ds.capacity, ds.v_min, ds.v_max);
      },
      py::arg("outputs"), py::arg("seed") = 7);

  m.def(
      "visible_code",
      [](const std::vector<double>& probs, const std::vector<Vector>& states, double eps) {
        RealVector p(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) p(static_cast<Eigen::Index>(i)) = probs[i];
        return visible_code(PureStateEnsemble(p, states), eps);
      },
      py::arg("probs"), py::arg("states"), py::arg("eps"));

  m.def(
      "blind_code",
      [](const Matrix& rho, double eps) {
        return blind_code(DensityOperator(rho, TraceClass::Normalized), eps);
      },
      py::arg("rho"), py::arg("eps"));

  m.def(
      "concentrate",
      [](const std::vector<double>& schmidt, double eps, double eta) {
        RealVector lam(schmidt.size());
        for (std::size_t i = 0; i < schmidt.size(); ++i) lam(static_cast<Eigen::Index>(i)) = schmidt[i];
        const ConcentrationOutcome o =
            concentrate(BipartitePureState::from_schmidt(lam), eps, eta);
        return py::make_tuple(o.record, o.certificate.valid);
      },
      py::arg("schmidt"), py::arg("eps"), py::arg("eta"));

  m.def(
      "dilute",
      [](const std::vector<double>& schmidt, long m_rank) {
        RealVector lam(schmidt.size());
        for (std::size_t i = 0; i < schmidt.size(); ++i) lam(static_cast<Eigen::Index>(i)) = schmidt[i];
        return dilute(BipartitePureState::from_schmidt(lam), m_rank);
      },
      py::arg("schmidt"), py::arg("m"));

  m.def("weyl_set", &weyl_set, py::arg("d"));

  m.def(
      "random_state",
      [](int dim, std::uint64_t seed) {
        Rng rng(seed);
        return random_state(dim, rng).matrix();
      },
      py::arg("dim"), py::arg("seed"));

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, int trials) {
        VerifyConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        const VerificationReport rep = run_verification(suite, cfg);
        return py::make_tuple(rep.all_passed(), rep.to_json().dump(2));
      },
      py::arg("suite"), py::arg("seed") = 7, py::arg("trials") = 50);
}
