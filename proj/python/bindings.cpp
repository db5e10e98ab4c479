#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "occkit/chain.hpp"
#include "occkit/coverage.hpp"
#include "occkit/errors.hpp"
#include "occkit/identities.hpp"
#include "occkit/negative_occupancy.hpp"
#include "occkit/occupancy.hpp"
#include "occkit/sampling.hpp"
#include "occkit/spillage.hpp"
#include "occkit/stirling.hpp"

namespace py = pybind11;
using namespace occkit;

namespace {

// Accepts an int, float('inf') or the string "inf".
BinCount to_bins(const py::object& m) {
  if (py::isinstance<py::str>(m)) return BinCount::parse(m.cast<std::string>());
  if (py::isinstance<py::float_>(m)) {
    const double v = m.cast<double>();
    if (std::isinf(v) && v > 0) return BinCount::infinite();
    if (v != std::floor(v)) throw DomainError("number of bins must be an integer or inf");
    return BinCount::parse(std::to_string(static_cast<long long>(v)));
  }
  const auto v = m.cast<long long>();
  if (v < 1) throw DomainError("number of bins m must be >= 1");
  return BinCount(static_cast<std::uint64_t>(v));
}

ExactReal to_exact(const py::object& x) {
  if (py::isinstance<py::str>(x)) return ExactReal::parse(x.cast<std::string>());
  if (py::hasattr(x, "numerator") && py::hasattr(x, "denominator") && !py::isinstance<py::float_>(x)) {
    return ExactReal::parse(py::str(x.attr("numerator")).cast<std::string>() + "/" +
                            py::str(x.attr("denominator")).cast<std::string>());
  }
  return ExactReal::from_double(x.cast<double>());
}

py::object fraction(const ExactReal& x) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::int_(py::str(x.numerator().get_str())), py::int_(py::str(x.denominator().get_str())));
}

py::dict exact_dict(const ExactPmf& pmf) {
  py::dict out;
  for (std::size_t i = 0; i < pmf.probabilities.size(); ++i) {
    if (pmf.probabilities[i].is_zero()) continue;
    out[py::int_(pmf.support_min + static_cast<std::int64_t>(i))] = fraction(pmf.probabilities[i]);
  }
  return out;
}

py::dict report_dict(const IdentityReport& r) {
  py::dict worst;
  for (const auto& [name, value] : r.worst_case.values) worst[py::str(name)] = value;
  py::dict out;
  out["name"] = r.name;
  out["max_abs_discrepancy"] = r.max_abs_discrepancy;
  out["tolerance"] = r.tolerance;
  out["grid_size"] = r.grid.size();
  out["strict_failures"] = r.strict_failures;
  out["worst_case"] = worst;
  out["passed"] = r.passed();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Occupancy, negative occupancy and spillage distributions";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  py::class_<Pmf>(m, "Pmf")
      .def_property_readonly("support_min", &Pmf::support_min)
      .def_property_readonly("support_max", &Pmf::support_max)
      .def_property_readonly("probabilities", &Pmf::probabilities)
      .def_property_readonly("backend", [](const Pmf& p) { return p.meta().backend; })
      .def_property_readonly("error_bound", [](const Pmf& p) { return p.meta().error_bound; })
      .def_property_readonly("tail_mass", [](const Pmf& p) { return p.meta().tail_mass; })
      .def("__call__", &Pmf::operator(), py::arg("k"))
      .def("__len__", &Pmf::size)
      .def("cdf", &Pmf::cdf, py::arg("k"))
      .def("total", &Pmf::total)
      .def("mean", &Pmf::mean)
      .def("variance", &Pmf::variance)
      .def("to_dict",
           [](const Pmf& p) {
             py::dict out;
             for (std::int64_t k = p.support_min(); k <= p.support_max(); ++k) out[py::int_(k)] = p(k);
             return out;
           })
      .def("__repr__", [](const Pmf& p) {
        return "<Pmf support=[" + std::to_string(p.support_min()) + ", " + std::to_string(p.support_max()) +
               "] backend=" + p.meta().backend + ">";
      });

  py::class_<MomentSet>(m, "MomentSet")
      .def_readonly("mean", &MomentSet::mean)
      .def_readonly("variance", &MomentSet::variance)
      .def_readonly("skewness", &MomentSet::skewness)
      .def_readonly("kurtosis", &MomentSet::kurtosis)
      .def_readonly("e_terms", &MomentSet::e_terms);

  py::class_<CoveragePlan>(m, "CoveragePlan")
      .def_readonly("m", &CoveragePlan::m)
      .def_readonly("k", &CoveragePlan::k)
      .def_readonly("phi_target", &CoveragePlan::phi_target)
      .def_readonly("n_required", &CoveragePlan::n_required)
      .def_readonly("achieved_probability", &CoveragePlan::achieved_probability)
      .def_readonly("previous_probability", &CoveragePlan::previous_probability)
      .def_readonly("backend", &CoveragePlan::backend);

  py::class_<CoverageMoments>(m, "CoverageMoments")
      .def_readonly("mean_proportion", &CoverageMoments::mean_proportion)
      .def_readonly("variance_proportion", &CoverageMoments::variance_proportion)
      .def_readonly("asymptotic_mean", &CoverageMoments::asymptotic_mean)
      .def_readonly("asymptotic_variance", &CoverageMoments::asymptotic_variance)
      .def_readonly("lambda_", &CoverageMoments::lambda);

  m.def("occ_pmf", [](std::uint64_t n, const py::object& bins, double theta) { return occ_pmf(OccParams(n, to_bins(bins), theta)); },
        py::arg("n"), py::arg("m"), py::arg("theta") = 1.0);
  m.def("occ_pmf_exact",
        [](std::uint64_t n, std::uint64_t bins, const py::object& theta) { return exact_dict(occ_pmf_exact(n, bins, to_exact(theta))); },
        py::arg("n"), py::arg("m"), py::arg("theta") = "1");
  m.def("occ_conditional_pmf", &occ_conditional_pmf, py::arg("n_new"), py::arg("m"), py::arg("theta"), py::arg("t"));
  m.def("occ_moments", [](std::uint64_t n, const py::object& bins, double theta) { return occ_moments(OccParams(n, to_bins(bins), theta)); },
        py::arg("n"), py::arg("m"), py::arg("theta") = 1.0);
  m.def(
      "occ_moments_asymptotic",
      [](std::uint64_t n, const py::object& bins, double theta, const std::string& regime) {
        if (regime != "large_n" && regime != "large_m") throw DomainError("regime must be large_n or large_m");
        return occ_moments_asymptotic(OccParams(n, to_bins(bins), theta),
                                      regime == "large_n" ? MomentRegime::large_n : MomentRegime::large_m);
      },
      py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("regime"));
  m.def(
      "occ_factorial_moment",
      [](std::uint64_t n, const py::object& bins, double theta, std::uint64_t r) {
        return occ_factorial_moment(OccParams(n, to_bins(bins), theta), r);
      },
      py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("r"));
  m.def(
      "occ_normal_approx",
      [](std::uint64_t n, const py::object& bins, double theta, std::int64_t k) {
        return occ_normal_approx(OccParams(n, to_bins(bins), theta), k);
      },
      py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("k"));

  m.def(
      "negocc_pmf",
      [](const py::object& bins, std::uint64_t k, double theta, std::optional<std::uint64_t> t_max, double tail) {
        const NegOccParams p(to_bins(bins), k, theta);
        return t_max ? negocc_pmf(p, *t_max) : negocc_pmf_to_tail(p, tail);
      },
      py::arg("m"), py::arg("k"), py::arg("theta") = 1.0, py::arg("t_max") = py::none(), py::arg("tail") = 1e-12);
  m.def(
      "negocc_pmf_exact",
      [](std::uint64_t bins, std::uint64_t k, const py::object& theta, std::uint64_t t_max) {
        return exact_dict(negocc_pmf_exact(bins, k, to_exact(theta), t_max));
      },
      py::arg("m"), py::arg("k"), py::arg("theta"), py::arg("t_max"));
  m.def(
      "negocc_cdf",
      [](const py::object& bins, std::uint64_t k, double theta, std::uint64_t t) {
        return negocc_cdf(NegOccParams(to_bins(bins), k, theta), t);
      },
      py::arg("m"), py::arg("k"), py::arg("theta"), py::arg("t"));
  m.def(
      "coupon_collector_pmf",
      [](const py::object& bins, double theta, std::uint64_t t_max, bool total) {
        return total ? coupon_collector_total_pmf(to_bins(bins), theta, t_max) : coupon_collector_pmf(to_bins(bins), theta, t_max);
      },
      py::arg("m"), py::arg("theta"), py::arg("t_max"), py::arg("total") = false);

  m.def("spillage_pmf", [](std::uint64_t n, std::uint64_t k, double phi) { return spillage_pmf(SpillageParams(n, k, phi)); },
        py::arg("n"), py::arg("k"), py::arg("phi"));
  m.def(
      "spillage_pmf_exact",
      [](std::uint64_t n, std::uint64_t k, const py::object& phi) { return exact_dict(spillage_pmf_exact(n, k, to_exact(phi))); },
      py::arg("n"), py::arg("k"), py::arg("phi"));
  m.def(
      "effective_balls_given_occupancy",
      [](std::uint64_t n, const py::object& bins, double theta, std::uint64_t k) {
        return effective_balls_given_occupancy(n, to_bins(bins), theta, k);
      },
      py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("k"));

  m.def(
      "stirling",
      [](std::size_t n, std::size_t k, const py::object& phi, bool exact) -> py::object {
        if (exact) return fraction(stirling_noncentral_exact(n, k, to_exact(phi)));
        const ScaledFloat v = stirling_noncentral_scaled(n, k, phi.cast<double>());
        return py::float_(v.to_double());
      },
      py::arg("n"), py::arg("k"), py::arg("phi") = 0.0, py::arg("exact") = false);
  m.def(
      "stirling_log2",
      [](std::size_t n, std::size_t k, double phi) { return stirling_noncentral_scaled(n, k, phi).log2_abs(); },
      py::arg("n"), py::arg("k"), py::arg("phi") = 0.0);
  m.def(
      "scaled_stirling_pi", [](std::size_t n, std::size_t k, double phi) { return scaled_stirling_pi(n, k, phi).to_double(); },
      py::arg("n"), py::arg("k"), py::arg("phi"));

  m.def("transition_matrix", [](std::uint64_t bins, double theta) { return build_transition(bins, theta).dense(); },
        py::arg("m"), py::arg("theta"));
  m.def("occupancy_by_power", &occupancy_by_power, py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("start_t") = 0);
  m.def(
      "spectral_row",
      [](std::uint64_t n, std::uint64_t bins, double theta, std::uint64_t t) { return spectral(bins, theta).row(n, t); },
      py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("start_t") = 0);
  m.def(
      "simulate_process",
      [](std::uint64_t n, std::uint64_t bins, double theta, std::uint64_t seed) {
        const ProcessSample s = simulate_process(n, bins, theta, StreamSeed(seed));
        py::dict out;
        out["assignments"] = s.assignments;
        out["bin_counts"] = s.bin_counts;
        out["occupancy"] = s.occupancy;
        out["effective"] = s.effective;
        return out;
      },
      py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("seed") = 0);

  m.def(
      "occ_sample",
      [](std::uint64_t n, const py::object& bins, double theta, std::size_t count, std::uint64_t seed) {
        return occ_sample(OccParams(n, to_bins(bins), theta), count, StreamSeed(seed));
      },
      py::arg("n"), py::arg("m"), py::arg("theta"), py::arg("count"), py::arg("seed") = 0);
  m.def(
      "negocc_sample",
      [](const py::object& bins, std::uint64_t k, double theta, std::size_t count, std::uint64_t seed) {
        return negocc_sample(NegOccParams(to_bins(bins), k, theta), count, StreamSeed(seed));
      },
      py::arg("m"), py::arg("k"), py::arg("theta"), py::arg("count"), py::arg("seed") = 0);
  m.def(
      "spillage_sample",
      [](std::uint64_t n, std::uint64_t k, double phi, std::size_t count, std::uint64_t seed) {
        return spillage_sample(SpillageParams(n, k, phi), count, StreamSeed(seed));
      },
      py::arg("n"), py::arg("k"), py::arg("phi"), py::arg("count"), py::arg("seed") = 0);

  m.def("coverage_pmf", &coverage_pmf, py::arg("n"), py::arg("m"));
  m.def("required_resample_size", &required_resample_size, py::arg("m"), py::arg("k"), py::arg("prob"),
        py::arg("n_limit") = 100'000'000);
  m.def("coverage_moments", &coverage_moments, py::arg("n"), py::arg("m"));
  m.def("coverage_mean_exact", [](std::uint64_t n, std::uint64_t bins) { return fraction(coverage_mean_exact(n, bins)); },
        py::arg("n"), py::arg("m"));
  m.def(
      "simulate_coverage",
      [](std::uint64_t n, std::uint64_t bins, std::uint64_t reps, std::uint64_t seed) {
        const CoverageSimulation s = simulate_coverage(n, bins, reps, StreamSeed(seed));
        py::dict out;
        out["occupancy"] = s.occupancy;
        out["sup_distance"] = s.sup_distance;
        out["mean_proportion"] = s.mean_proportion;
        return out;
      },
      py::arg("n"), py::arg("m"), py::arg("replications"), py::arg("seed") = 0);
  m.def("excess_resamples_pmf", &excess_resamples_pmf, py::arg("m"), py::arg("k"), py::arg("t_max"));

  m.def(
      "run_checks",
      [](const std::string& grid, bool exact) {
        if (grid != "small" && grid != "full") throw DomainError("grid must be small or full");
        const auto reports = exact ? run_exact_checks() : run_all_checks(grid == "full" ? CheckGrid::full : CheckGrid::small);
        py::list out;
        for (const auto& r : reports) out.append(report_dict(r));
        return out;
      },
      py::arg("grid") = "small", py::arg("exact") = false);
}
