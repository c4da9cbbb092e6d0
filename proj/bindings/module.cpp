// Thin python bindings over the C++ core. Structured results cross the
// boundary as parsed JSON (dicts/lists), complex scalars as python complex.

#include "logvvmf/classical.hpp"
#include "logvvmf/estimates.hpp"
#include "logvvmf/io.hpp"
#include "logvvmf/mlde.hpp"
#include "logvvmf/poincare.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

namespace py = pybind11;
using namespace logvvmf;

namespace {

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json py_to_json(const py::object& obj) {
  std::string s = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return Json::parse(s);
}

Cplx to_cplx(std::complex<double> z) { return Cplx(Real(z.real()), Real(z.imag())); }

std::complex<double> to_std(const Cplx& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

Representation rep_from_py(const py::object& rep) {
  return rep_from_json(py_to_json(rep));
}

}  // namespace

PYBIND11_MODULE(_logvvmf, m) {
  m.doc() = "logarithmic vector-valued modular forms: q-series arithmetic, "
            "Eichler words, Poincare series, MLDE discovery";

  m.def("set_precision", [](unsigned digits) { set_working_digits(digits); },
        py::arg("digits"), "set the working precision in decimal digits");
  m.def("precision", []() { return working_digits(); });

  m.def("decompose",
        [](long a, long b, long c, long d) {
          GammaElement g(a, b, c, d);
          EichlerWord w = eichler_decompose(g);
          py::list word;
          for (const auto& l : w.exponents) word.append(py::int_(py::str(l.get_str())));
          py::dict out;
          out["word"] = word;
          out["length"] = py::int_(py::str(eichler_length(w).get_str()));
          out["strict"] = w.strict();
          out["reconstruction_ok"] = (reconstruct(w) == g);
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));

  m.def("mobius",
        [](long a, long b, long c, long d, std::complex<double> tau) {
          return to_std(GammaElement(a, b, c, d).mobius(to_cplx(tau)));
        });

  m.def("coset_count",
        [](long N, bool mod_minus) { return coset_reps(N, mod_minus).size(); },
        py::arg("N"), py::arg("mod_minus") = true);

  m.def("trivial_rep", []() { return json_to_py(rep_to_json(Representation::trivial())); });
  m.def("standard_rep", []() { return json_to_py(rep_to_json(Representation::standard())); });

  m.def("eval_rep",
        [](const py::object& rep, long a, long b, long c, long d) {
          Representation rho = rep_from_py(rep);
          CMatrix v = rho.evaluate(GammaElement(a, b, c, d));
          std::vector<std::vector<std::complex<double>>> out(v.rows());
          for (std::size_t i = 0; i < v.rows(); ++i)
            for (std::size_t j = 0; j < v.cols(); ++j) out[i].push_back(to_std(v(i, j)));
          return out;
        });

  m.def("eisenstein",
        [](const std::string& name, long order) {
          ClassicalSeries which;
          if (name == "E4") which = ClassicalSeries::E4;
          else if (name == "E6") which = ClassicalSeries::E6;
          else if (name == "Delta") which = ClassicalSeries::Delta;
          else if (name == "P") which = ClassicalSeries::P;
          else throw std::invalid_argument("eisenstein: name must be E4, E6, Delta or P");
          QSeries s = eisenstein<GaussRat>(which, order);
          py::dict out;
          for (const auto& [k, v] : s.terms())
            out[py::int_(k.first)] = py::module_::import("fractions")
                                         .attr("Fraction")(v.re.get_str());
          return out;
        },
        py::arg("name"), py::arg("order"));

  m.def("poincare_eval",
        [](const py::object& rep, std::vector<long> nu, std::vector<int> k, long N,
           std::complex<double> tau, int threads) {
          Representation rho = rep_from_py(rep);
          PoincareParams params{std::move(nu), std::move(k), N, 0};
          PoincareEvaluator ev(rho, params, FoldMode::Auto, threads);
          MatrixSample s = ev.eval(to_cplx(tau));
          std::vector<std::vector<std::complex<double>>> mat(s.value.rows());
          for (std::size_t i = 0; i < s.value.rows(); ++i)
            for (std::size_t j = 0; j < s.value.cols(); ++j)
              mat[i].push_back(to_std(s.value(i, j)));
          py::dict out;
          out["matrix"] = py::cast(mat);
          out["tail_bound"] = s.tail_bound.convert_to<double>();
          out["folded"] = ev.folded();
          return out;
        },
        py::arg("rep"), py::arg("nu"), py::arg("k"), py::arg("N"), py::arg("tau"),
        py::arg("threads") = 1);

  m.def("poincare_qexp",
        [](const py::object& rep, std::vector<long> nu, std::vector<int> k, long N, long Nq,
           int threads) {
          Representation rho = rep_from_py(rep);
          PoincareParams params{std::move(nu), std::move(k), N, 0};
          ExtractionOptions opts;
          opts.Nq = Nq;
          opts.threads = threads;
          Extraction ex = extract_coefficients(rho, params, opts);
          Json rows = Json::array();
          for (int i = 0; i < rho.dim(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < rho.dim(); ++j) row.push_back(series_to_json(ex.entries[i][j]));
            rows.push_back(std::move(row));
          }
          return json_to_py(rows);
        },
        py::arg("rep"), py::arg("nu"), py::arg("k"), py::arg("N"), py::arg("Nq"),
        py::arg("threads") = 1);

  m.def("verify_modularity",
        [](const py::object& rep, std::vector<long> nu, std::vector<int> k, long N, long a,
           long b, long c, long d, std::complex<double> tau, int threads) {
          Representation rho = rep_from_py(rep);
          PoincareParams params{std::move(nu), std::move(k), N, 0};
          return modularity_residual(rho, params, GammaElement(a, b, c, d), to_cplx(tau),
                                     FoldMode::Auto, threads)
              .convert_to<double>();
        },
        py::arg("rep"), py::arg("nu"), py::arg("k"), py::arg("N"), py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("d"), py::arg("tau"), py::arg("threads") = 1);

  m.def("minimal_mlde",
        [](const py::object& components, long weight) {
          Json cj = py_to_json(components);
          bool rational = true;
          for (const auto& c : cj) rational = rational && json_series_is_rational(c);
          if (rational) {
            std::vector<QSeries> comps;
            for (const auto& c : cj) comps.push_back(qseries_from_json(c));
            return json_to_py(mlde_to_json(minimal_mlde(comps, weight)));
          }
          std::vector<CSeries> comps;
          for (const auto& c : cj) comps.push_back(series_from_json(c));
          return json_to_py(mlde_to_json(minimal_mlde(comps, weight)));
        },
        py::arg("components"), py::arg("weight"));

  m.def("growth_fit",
        [](const py::object& series, int weight, bool cuspidal, long N) {
          CSeries f = series_from_json(py_to_json(series));
          GrowthFit fit = fit_fourier_growth(f, weight, cuspidal, N ? N : f.order());
          py::dict out;
          out["exponent"] = fit.exponent.convert_to<double>();
          out["intercept"] = fit.intercept.convert_to<double>();
          out["residual"] = fit.residual.convert_to<double>();
          out["points"] = fit.points;
          return out;
        },
        py::arg("series"), py::arg("weight"), py::arg("cuspidal") = false, py::arg("N") = 0);

  m.def("classical_check",
        [](const std::string& which, long N, long Nq, int threads) {
          ClassicalCheck res = (which == "e8") ? classical_check_e8(N, Nq ? Nq : 4, threads)
                                               : classical_check_delta(N, Nq ? Nq : 5, threads);
          py::dict out;
          out["case"] = res.name;
          out["observed"] = res.observed;
          out["expected"] = res.expected;
          out["max_rel_err"] = res.max_rel_err.convert_to<double>();
          out["pass"] = res.pass;
          return out;
        },
        py::arg("which"), py::arg("N") = 100, py::arg("Nq") = 0, py::arg("threads") = 1);
}
