// Python bindings for the core distribution, simulation, and fitting API.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "egl/competitors.hpp"
#include "egl/datasets.hpp"
#include "egl/distribution.hpp"
#include "egl/errors.hpp"
#include "egl/estimation.hpp"
#include "egl/gof.hpp"

namespace py = pybind11;

namespace {

const char* shape_name(egl::HazardShape s) {
  switch (s) {
    case egl::HazardShape::Decreasing: return "decreasing";
    case egl::HazardShape::Increasing: return "increasing";
    case egl::HazardShape::UpsideDown: return "upside_down";
  }
  return "?";
}

py::dict fit_to_dict(const egl::FitResult& r) {
  py::dict out;
  out["family"] = egl::family_tag(r.model.family);
  py::dict est;
  auto names = egl::family_param_names(r.model.family);
  for (std::size_t i = 0; i < names.size(); ++i) {
    est[names[i].c_str()] = r.model.params[i];
  }
  out["estimates"] = est;
  out["params"] = r.model.params;
  out["neg_loglik"] = r.neg_loglik;
  out["converged"] = r.converged;
  out["score_norm"] = r.score_norm;
  if (r.has_covariance) {
    out["covariance"] = r.covariance;
    out["conf_intervals"] = r.conf_intervals;
  } else {
    out["covariance"] = py::none();
    out["conf_intervals"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Extended generalized Lindley distribution toolkit";
  m.attr("__version__") = EGL_VERSION;

  py::register_exception<egl::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<egl::InvalidDataError>(m, "InvalidDataError",
                                                PyExc_ValueError);
  py::register_exception<egl::NonConvergenceError>(m, "NonConvergenceError",
                                                   PyExc_RuntimeError);

  py::class_<egl::EglParams>(m, "Params")
      .def(py::init<double, double, double>(), py::arg("lambda_"),
           py::arg("theta"), py::arg("alpha"))
      .def_readonly("lambda_", &egl::EglParams::lambda)
      .def_readonly("theta", &egl::EglParams::theta)
      .def_readonly("alpha", &egl::EglParams::alpha)
      .def("__repr__", [](const egl::EglParams& p) {
        return "Params(lambda_=" + std::to_string(p.lambda) +
               ", theta=" + std::to_string(p.theta) +
               ", alpha=" + std::to_string(p.alpha) + ")";
      });

  m.def("pdf", &egl::pdf, py::arg("params"), py::arg("x"));
  m.def("log_pdf", &egl::log_pdf, py::arg("params"), py::arg("x"));
  m.def("cdf", &egl::cdf, py::arg("params"), py::arg("x"));
  m.def("survival", &egl::survival, py::arg("params"), py::arg("x"));
  m.def("hazard", &egl::hazard, py::arg("params"), py::arg("x"));
  m.def("quantile", &egl::quantile, py::arg("params"), py::arg("gamma"));
  m.def("median", &egl::median, py::arg("params"));
  m.def(
      "mode",
      [](const egl::EglParams& p) -> py::object {
        auto v = egl::mode(p);
        if (v.has_value()) return py::float_(*v);
        return py::none();
      },
      py::arg("params"),
      "Interior mode, or None when the density peaks at x = 0.");
  m.def(
      "hazard_shape",
      [](const egl::EglParams& p) {
        return std::string(shape_name(egl::classify_hazard_shape(p)));
      },
      py::arg("params"));

  m.def(
      "sample",
      [](const egl::EglParams& p, std::size_t n, std::uint64_t seed,
         const std::string& method) {
        egl::SampleMethod sm = egl::SampleMethod::InverseTransform;
        if (method == "transform") {
          sm = egl::SampleMethod::LindleyTransform;
        } else if (method != "inverse") {
          throw egl::DomainError("sample: method must be inverse or transform");
        }
        return egl::sample(p, n, seed, sm);
      },
      py::arg("params"), py::arg("n"), py::arg("seed"),
      py::arg("method") = "inverse");

  m.def("raw_moment", &egl::raw_moment, py::arg("params"), py::arg("k"));
  m.def("conditional_moment", &egl::conditional_moment, py::arg("params"),
        py::arg("k"), py::arg("t"));
  m.def("mean_residual_life", &egl::mean_residual_life, py::arg("params"),
        py::arg("t"));
  m.def("renyi_entropy", &egl::renyi_entropy, py::arg("params"), py::arg("zeta"));
  m.def("shannon_entropy", &egl::shannon_entropy, py::arg("params"));
  m.def("order_stat_pdf", &egl::order_stat_pdf, py::arg("params"), py::arg("i"),
        py::arg("n"), py::arg("x"));
  m.def("order_stat_moment", &egl::order_stat_moment, py::arg("params"),
        py::arg("i"), py::arg("n"), py::arg("q"));
  m.def(
      "extreme_norming",
      [](const egl::EglParams& p, std::size_t n) {
        auto e = egl::extreme_norming(p, n);
        return py::make_tuple(e.a_n, e.b_n);
      },
      py::arg("params"), py::arg("n"),
      "Norming pair (a_n, b_n) standardizing the n-sample maximum.");

  m.def(
      "builtin_dataset",
      [](const std::string& name) {
        const auto& d = egl::builtin_dataset(name);
        py::dict out;
        out["name"] = d.name;
        out["values"] = d.values;
        out["source"] = d.source;
        return out;
      },
      py::arg("name"), "Built-in datasets: 'bladder' or 'bank'.");

  m.def(
      "fit",
      [](const std::string& family, const std::vector<double>& data,
         std::uint64_t seed, double level) {
        egl::FitOptions opts;
        opts.seed = seed;
        opts.level = level;
        return fit_to_dict(egl::fit(egl::family_from_tag(family), data, opts));
      },
      py::arg("family"), py::arg("data"), py::arg("seed") = 0,
      py::arg("level") = 0.95);

  m.def(
      "compare",
      [](const std::vector<std::string>& families,
         const std::vector<double>& data, std::uint64_t seed) {
        std::vector<egl::Family> fams;
        fams.reserve(families.size());
        for (const auto& tag : families) fams.push_back(egl::family_from_tag(tag));
        egl::FitOptions opts;
        opts.seed = seed;
        py::list rows;
        for (const auto& rep : egl::compare(fams, data, opts)) {
          py::dict row;
          row["family"] = egl::family_tag(rep.model.family);
          row["params"] = rep.model.params;
          row["neg_loglik"] = rep.neg_loglik;
          row["aic"] = rep.aic;
          row["bic"] = rep.bic;
          row["ks"] = rep.ks;
          row["converged"] = rep.converged;
          if (!rep.error.empty()) row["error"] = rep.error;
          rows.append(row);
        }
        return rows;
      },
      py::arg("families"), py::arg("data"), py::arg("seed") = 0,
      "Fit each family and rank by AIC ascending.");

  m.def(
      "ks_statistic",
      [](const std::string& family, const std::vector<double>& params,
         const std::vector<double>& data) {
        return egl::ks_statistic(
            egl::ModelSpec(egl::family_from_tag(family), params), data);
      },
      py::arg("family"), py::arg("params"), py::arg("data"));
}
