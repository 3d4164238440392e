#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "supwave/snapshot.hpp"
#include "supwave/stats.hpp"

namespace py = pybind11;
using namespace supwave;

namespace {

py::array_t<double> coeff_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<int> index_array(const CanonicalBasis& basis) {
  py::array_t<int> out({static_cast<py::ssize_t>(basis.num_modes()),
                        static_cast<py::ssize_t>(basis.dim())});
  auto* p = out.mutable_data();
  for (std::int64_t r = 0; r < basis.num_modes(); ++r)
    for (int j = 0; j < basis.dim(); ++j) *p++ = basis.mode(r)[j];
  return out;
}

}  // namespace

PYBIND11_MODULE(_supwave, m) {
  m.doc() = "spectrally truncated cubic wave flow with randomized data";

  py::class_<FourierField>(m, "FourierField")
      .def(py::init<int, int>(), py::arg("dim"), py::arg("cutoff"))
      .def_property_readonly("dim", &FourierField::dim)
      .def_property_readonly("cutoff", &FourierField::cutoff)
      .def_property(
          "mean", [](const FourierField& f) { return f.mean(); },
          [](FourierField& f, double v) { f.mean() = v; })
      .def("cos_coeffs", [](const FourierField& f) { return coeff_array(f.cosc()); })
      .def("sin_coeffs", [](const FourierField& f) { return coeff_array(f.sinc()); })
      .def("indices", [](const FourierField& f) { return index_array(f.basis()); })
      .def("coefficient", &FourierField::coefficient, py::arg("n"))
      .def("set_coefficient", &FourierField::set_coefficient, py::arg("n"), py::arg("b"),
           py::arg("c"))
      .def("__add__", [](const FourierField& a, const FourierField& b) { return a + b; })
      .def("__sub__", [](const FourierField& a, const FourierField& b) { return a - b; })
      .def("__rmul__", [](const FourierField& f, double a) { return a * f; });

  py::class_<PhaseState>(m, "PhaseState")
      .def(py::init<FourierField, FourierField>(), py::arg("u"), py::arg("ut"))
      .def_static("zero", &PhaseState::zero, py::arg("dim"), py::arg("cutoff"))
      .def_readwrite("u", &PhaseState::u)
      .def_readwrite("ut", &PhaseState::ut);

  py::class_<FilterSpec>(m, "FilterSpec")
      .def(py::init<double>(), py::arg("N"))
      .def_readonly("N", &FilterSpec::N)
      .def("retained_band", &FilterSpec::retained_band);

  m.def("chi_profile", &chi_profile, py::arg("r"));
  m.def("canonical_index", &canonical_index, py::arg("n"));
  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("sigma"));
  m.def("pair_norm", &pair_norm, py::arg("state"), py::arg("s"));
  m.def(
      "lp_norm",
      [](const FourierField& f, double p, int oversample) { return lp_norm(f, p, oversample); },
      py::arg("field"), py::arg("p"), py::arg("oversample") = 4);
  m.def("project_low", py::overload_cast<const FourierField&, double>(&project_low),
        py::arg("field"), py::arg("M"));
  m.def("project_high", py::overload_cast<const FourierField&, double>(&project_high),
        py::arg("field"), py::arg("M"));
  m.def("smooth_filter", py::overload_cast<const FourierField&, const FilterSpec&>(&smooth_filter),
        py::arg("field"), py::arg("spec"));
  m.def(
      "cubic_term",
      [](const FourierField& f, const FilterSpec& spec, int oversample) {
        return cubic_term(f, spec, oversample);
      },
      py::arg("field"), py::arg("spec"), py::arg("oversample") = 2);
  m.def(
      "to_physical",
      [](const FourierField& f, int points) {
        const auto g = to_physical(f, points);
        std::vector<py::ssize_t> shape(static_cast<std::size_t>(g.dim), points);
        py::array_t<double> out(shape);
        std::copy(g.values.begin(), g.values.end(), out.mutable_data());
        return out;
      },
      py::arg("field"), py::arg("points"));
  m.def(
      "from_physical",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> values, int cutoff) {
        PhysicalGrid g;
        g.dim = static_cast<int>(values.ndim());
        g.points = static_cast<int>(values.shape(0));
        for (py::ssize_t j = 0; j < values.ndim(); ++j)
          if (values.shape(j) != g.points)
            throw std::invalid_argument("from_physical: expected a cubic array");
        g.values.assign(values.data(), values.data() + values.size());
        return from_physical(g, cutoff);
      },
      py::arg("values"), py::arg("cutoff"));

  m.def("free_evolve", &free_evolve, py::arg("state"), py::arg("t"));
  m.def(
      "energy",
      [](const PhaseState& st, const FilterSpec& f, int oversample) {
        return energy(st, f, oversample);
      },
      py::arg("state"), py::arg("filter"), py::arg("oversample") = 2);

  py::enum_<DistKind>(m, "DistKind")
      .value("gaussian", DistKind::gaussian)
      .value("rademacher", DistKind::rademacher)
      .value("uniform", DistKind::uniform);

  py::class_<DistributionSpec>(m, "DistributionSpec")
      .def_static("make", &DistributionSpec::make, py::arg("kind"))
      .def_static("parse", &DistributionSpec::parse, py::arg("name"))
      .def_readonly("subgaussian_c", &DistributionSpec::subgaussian_c)
      .def("mgf", &DistributionSpec::mgf, py::arg("gamma"))
      .def_property_readonly("name", &DistributionSpec::name);

  py::class_<EnsembleSpec>(m, "EnsembleSpec")
      .def(py::init<PhaseState, DistributionSpec, std::uint64_t>(), py::arg("base"),
           py::arg("dist"), py::arg("master_seed"))
      .def_readonly("base", &EnsembleSpec::base)
      .def_readonly("master_seed", &EnsembleSpec::master_seed);

  m.def("make_base_pair", &make_base_pair, py::arg("s"), py::arg("dim"), py::arg("eta"),
        py::arg("L"));
  m.def("sample_pair", &sample_pair, py::arg("spec"), py::arg("k"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("filter", &SolverConfig::filter)
      .def_readwrite("dt", &SolverConfig::dt)
      .def_readwrite("t_end", &SolverConfig::t_end)
      .def_readwrite("sample_times", &SolverConfig::sample_times)
      .def_readwrite("oversample", &SolverConfig::oversample)
      .def_readwrite("lean", &SolverConfig::lean)
      .def_readwrite("record_neighbors", &SolverConfig::record_neighbors)
      .def_readwrite("decomposition_M", &SolverConfig::decomposition_M)
      .def_readwrite("eps_norm", &SolverConfig::eps_norm);

  py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
      .def_readonly("times", &TrajectoryRecord::times)
      .def_readonly("energies", &TrajectoryRecord::energies)
      .def_readonly("h1_w", &TrajectoryRecord::h1_w)
      .def_readonly("h1me_w", &TrajectoryRecord::h1me_w)
      .def_readonly("l4_SNu", &TrajectoryRecord::l4_SNu)
      .def_readonly("states", &TrajectoryRecord::states)
      .def_property_readonly("has_states", &TrajectoryRecord::has_states);

  m.def(
      "evolve", [](const PhaseState& init, const SolverConfig& cfg) { return evolve(init, cfg); },
      py::arg("init"), py::arg("config"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "nonlinear_component",
      [](const TrajectoryRecord& t, const PhaseState& b, double M) {
        return nonlinear_component(t, b, M);
      },
      py::arg("trajectory"), py::arg("base"), py::arg("M"));
  m.def(
      "residual_untruncated",
      [](const TrajectoryRecord& t, double tau) { return residual_untruncated(t, tau); },
      py::arg("trajectory"), py::arg("tau"));

  py::class_<ExponentBundle>(m, "ExponentBundle")
      .def_readonly("s", &ExponentBundle::s)
      .def_readonly("epsilon", &ExponentBundle::epsilon)
      .def_readonly("epsilon1", &ExponentBundle::epsilon1)
      .def_readonly("delta", &ExponentBundle::delta)
      .def_readonly("delta_tilde", &ExponentBundle::delta_tilde)
      .def_readonly("delta_check", &ExponentBundle::delta_check);

  m.def("validate_exponents", &validate_exponents, py::arg("s"), py::arg("epsilon"));

  py::class_<SetMembershipRecord>(m, "SetMembershipRecord")
      .def_readonly("M", &SetMembershipRecord::M)
      .def_readonly("q_F", &SetMembershipRecord::q_F)
      .def_readonly("q_G", &SetMembershipRecord::q_G)
      .def_readonly("q_H", &SetMembershipRecord::q_H)
      .def_readonly("q_K", &SetMembershipRecord::q_K)
      .def_readonly("q_R", &SetMembershipRecord::q_R)
      .def_readonly("thr_F", &SetMembershipRecord::thr_F)
      .def_readonly("thr_G", &SetMembershipRecord::thr_G)
      .def_readonly("thr_HKR", &SetMembershipRecord::thr_HKR)
      .def_readonly("in_E_M", &SetMembershipRecord::in_E_M);

  m.def(
      "set_quantities",
      [](const PhaseState& sample, double M, const ExponentBundle& b, double t_max,
         double dt_quad, bool time_norms) {
        SetQuantityOptions opts;
        opts.t_max = t_max;
        opts.dt_quad = dt_quad;
        opts.include_time_norms = time_norms;
        return set_quantities(sample, M, b, opts);
      },
      py::arg("sample"), py::arg("M"), py::arg("bundle"), py::arg("t_max") = 200.0,
      py::arg("dt_quad") = 0.05, py::arg("include_time_norms") = true);

  m.def("write_snapshot",
        py::overload_cast<const FourierField&, const std::string&>(&write_snapshot),
        py::arg("field"), py::arg("path"));
  m.def("read_snapshot", py::overload_cast<const std::string&>(&read_snapshot), py::arg("path"));
}
