// Python bindings. Results that have a report serializer come back as JSON
// text and are decoded on the Python side.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riflab/parallel.hpp"
#include "riflab/report.hpp"

namespace py = pybind11;
using namespace riflab;

namespace {

/// {(k1, ..., kn): coeff} with an explicit variable count.
MultiPoly poly_from_dict(std::size_t nvars, const std::map<std::vector<int>, cplx>& terms) {
  MultiPoly::TermMap t;
  for (const auto& [e, c] : terms) {
    require(e.size() == nvars, ErrorKind::DimensionMismatch, "exponent length does not match nvars");
    t[MultiIndex(e)] = c;
  }
  require(!t.empty(), ErrorKind::InvalidArgument, "polynomial has no terms");
  return MultiPoly(nvars, std::move(t));
}

/// Same shape as the constructor input, with tuple keys.
py::dict poly_to_dict(const MultiPoly& p) {
  py::dict out;
  for (const auto& [e, c] : p.terms()) {
    py::tuple key(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) key[i] = e[i];
    out[key] = c;
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_riflab, m) {
  m.doc() = "rational inner functions and Dirichlet-type spaces";

  // Messages start with the error kind, e.g. "interior_zero: ...".
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&] { return py::object(py::exception<Error>(m, "RiflabError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error.get_stored(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<MultiPoly>(m, "Poly")
      .def(py::init(&poly_from_dict), py::arg("nvars"), py::arg("terms"))
      .def_static("from_json", [](const std::string& text) { return parse_poly_text(text); })
      .def_property_readonly("nvars", &MultiPoly::nvars)
      .def_property_readonly("multidegree",
                             [](const MultiPoly& p) {
                               const auto v = p.multidegree().values();
                               return std::vector<int>(v.begin(), v.end());
                             })
      .def("terms", &poly_to_dict)
      .def("__call__", [](const MultiPoly& p, const std::vector<cplx>& z) { return p.eval(z); })
      .def("to_json", [](const MultiPoly& p) { return dump(poly_to_json(p)); })
      .def("__repr__", [](const MultiPoly& p) { return "Poly(" + p.str() + ")"; });

  m.def("reflect", [](const MultiPoly& p) { return reflect(p); }, "z^d conj(p(1/conj z)) at the multidegree");
  m.def("partial_derivative", &partial_derivative, py::arg("p"), py::arg("i"));

  py::class_<RIF>(m, "RIF")
      .def_property_readonly("p", &RIF::p)
      .def_property_readonly("ptilde", &RIF::ptilde)
      .def_property_readonly("nvars", &RIF::nvars)
      .def("__call__", [](const RIF& f, const std::vector<cplx>& z) { return f.eval(z); })
      .def("partial", [](const RIF& f, std::size_t k, const std::vector<cplx>& z) { return f.eval_partial(k, z); })
      .def("certificate", [](const RIF& f) { return dump(to_json(f.certificate())); });

  m.def(
      "build_rif",
      [](const MultiPoly& p, std::uint64_t seed) {
        ProbeConfig cfg;
        cfg.seed = seed;
        return build_rif(p, cfg);
      },
      py::arg("p"), py::arg("seed") = ProbeConfig{}.seed);

  m.def(
      "expand",
      [](const MultiPoly& q, const MultiPoly& p, const std::vector<int>& orders) {
        const CoeffBox box = expand_ratio(q, p, MultiIndex(orders));
        std::vector<py::ssize_t> shape;
        for (int o : orders) shape.push_back(o + 1);
        py::array_t<cplx> out(shape);
        std::copy(box.data().begin(), box.data().end(), out.mutable_data());
        return out;
      },
      py::arg("q"), py::arg("p"), py::arg("orders"), "Taylor coefficients of q/p as a dense array");

  m.def(
      "classify",
      [](const RIF& f, const std::vector<double>& alpha, std::vector<int> schedule, bool inverse) {
        if (schedule.empty()) schedule = default_schedule(f.nvars());
        const MultiPoly num = inverse ? MultiPoly::constant(f.nvars(), 1.0) : f.ptilde();
        const SeriesSource src = [&](const MultiIndex& o) { return expand_ratio(num, f.p(), o); };
        py::gil_scoped_release release;
        return dump(to_json(classify_membership(src, WeightVector(alpha), schedule)));
      },
      py::arg("f"), py::arg("alpha"), py::arg("schedule") = std::vector<int>{}, py::arg("inverse") = false);

  m.def(
      "hp_norm",
      [](const RIF& f, std::size_t k, double p) {
        py::gil_scoped_release release;
        return dump(to_json(hp_norm_partial(f, k, p)));
      },
      py::arg("f"), py::arg("k"), py::arg("p"), "H^p means of d phi / d z_k (k 0-based)");

  m.def(
      "omega",
      [](const RIF& f, std::size_t k, std::size_t samples, std::uint64_t seed) {
        OmegaConfig cfg;
        cfg.samples = samples;
        cfg.seed = seed;
        py::gil_scoped_release release;
        return dump(to_json(omega_measure(f, k, cfg)));
      },
      py::arg("f"), py::arg("k"), py::arg("samples") = OmegaConfig{}.samples, py::arg("seed") = OmegaConfig{}.seed);

  m.def(
      "hp_threshold",
      [](const RIF& f, std::size_t k, bool direct, std::size_t samples) {
        ThresholdConfig cfg;
        cfg.direct = direct;
        cfg.omega.samples = samples;
        py::gil_scoped_release release;
        return dump(to_json(hp_threshold(f, k, cfg)));
      },
      py::arg("f"), py::arg("k"), py::arg("direct") = true, py::arg("samples") = OmegaConfig{}.samples);

  m.def(
      "hp_embed_feasible",
      [](const std::vector<double>& alphas, const std::vector<double>& thresholds, const std::vector<bool>& closed) {
        require(closed.empty() || closed.size() == thresholds.size(), ErrorKind::DimensionMismatch,
                "endpoint list length mismatch");
        IntegrabilityProfile prof;
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
          ThresholdEntry e;
          e.bounded = std::isinf(thresholds[i]);
          e.value = e.bounded ? kBoundedThreshold : thresholds[i];
          e.endpoint = (e.bounded || (!closed.empty() && closed[i])) ? Endpoint::Closed : Endpoint::Open;
          prof.entries.push_back(e);
        }
        return dump(to_json(hp_embed_feasible(WeightVector(alphas), prof)));
      },
      py::arg("alphas"), py::arg("thresholds"), py::arg("closed") = std::vector<bool>{});

  m.def("cs_from_ps", [](const std::vector<double>& ps) { return cs_from_ps(ps); });
  m.def("ps_from_cs", [](const std::vector<double>& cs) { return ps_from_cs(cs); });

  m.def(
      "loja",
      [](const MultiPoly& p, const std::vector<cplx>& point, std::uint64_t seed) {
        LojaConfig cfg;
        cfg.seed = seed;
        py::gil_scoped_release release;
        return dump(to_json(loja_probe(p, point, cfg)));
      },
      py::arg("p"), py::arg("point"), py::arg("seed") = LojaConfig{}.seed);

  m.def(
      "lojasiewicz_threshold",
      [](long long q_num, long long q_den, int n) {
        const Rational t = lojasiewicz_threshold(Rational(q_num, q_den), n);
        return std::pair<long long, long long>(t.numerator(), t.denominator());
      },
      py::arg("q_num"), py::arg("q_den"), py::arg("n"), "claimed exponent as (numerator, denominator)");

  m.def(
      "blaschke_norm",
      [](const std::vector<cplx>& zeros, double p, int order) {
        const BlaschkeProduct b(zeros);
        return d_alpha_norm_1d(b, p, order > 0 ? order : auto_truncation(b)).value;
      },
      py::arg("zeros"), py::arg("p"), py::arg("order") = 0);
  m.def(
      "onedim_ratio", [](const std::vector<cplx>& zeros, double p) { return onedim_ratio(BlaschkeProduct(zeros), p); },
      py::arg("zeros"), py::arg("p"));

  m.def(
      "report",
      [](const MultiPoly& p, const std::vector<std::vector<double>>& alphas, bool hardy, bool embed,
         const std::vector<cplx>& point, std::uint64_t seed) {
        ReportOptions opt;
        opt.alphas = alphas;
        opt.hardy = hardy;
        opt.embed = embed;
        opt.loja = !point.empty();
        opt.point = point;
        opt.seed = seed;
        py::gil_scoped_release release;
        const ReportOutcome out = run_report(p, opt);
        return std::pair<std::string, int>(dump(out.report), out.exit_code);
      },
      py::arg("p"), py::arg("alphas") = std::vector<std::vector<double>>{}, py::arg("hardy") = false,
      py::arg("embed") = false, py::arg("point") = std::vector<cplx>{}, py::arg("seed") = ReportOptions{}.seed);

  m.def("set_threads", &set_worker_threads, py::arg("n"), "0 means hardware concurrency");
  m.attr("__version__") = std::string(kToolVersion);
}
