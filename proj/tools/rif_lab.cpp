// rif-lab: command-line front end for the riflab library.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>

#include "riflab/parallel.hpp"
#include "riflab/report.hpp"

using namespace riflab;

namespace {

struct Globals {
  std::uint64_t seed = 20240521;
  std::size_t max_coeffs = kDefaultMaxCoeffs;
  double tol = 1e-6;
  std::vector<int> schedule;
  std::string json_path = "-";
  std::string csv_path;
  unsigned threads = 0;
  bool timings = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf" || item == "+inf" || item == "∞") {
      out.push_back(INFINITY);
      continue;
    }
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "' in '" + s + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<cplx> parse_point(const std::string& s) {
  const std::vector<double> v = parse_list(s);
  if (v.size() % 2 != 0) throw UsageError("--point expects re,im pairs");
  std::vector<cplx> z;
  for (std::size_t i = 0; i < v.size(); i += 2) z.emplace_back(v[i], v[i + 1]);
  return z;
}

std::size_t variable_index(int k, std::size_t n) {
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw UsageError("variable index must be in 1.." + std::to_string(n));
  return static_cast<std::size_t>(k - 1);
}

Json envelope(const Globals& g, const Json& input) {
  Json rep;
  rep["version"] = {{"tool", kToolVersion}, {"schema", kReportSchemaVersion}};
  Json in = input;
  in["options"]["seed"] = g.seed;
  in["options"]["max_coeffs"] = g.max_coeffs;
  in["options"]["tol"] = g.tol;
  rep["input"] = in;
  rep["stages"] = Json::object();
  rep["timings"] = Json::object();
  return rep;
}

void write_outputs(const Globals& g, const Json& rep, const std::string& csv) {
  const std::string text = rep.dump(2) + "\n";
  if (g.json_path == "-" || g.json_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(g.json_path);
    if (!o) throw UsageError("cannot write " + g.json_path);
    o << text;
  }
  if (!g.csv_path.empty()) {
    std::ofstream o(g.csv_path);
    if (!o) throw UsageError("cannot write " + g.csv_path);
    o << csv;
  }
}

// Runs one stage body, embedding a library error in the report.
int run_stage(Json& rep, const std::string& name, const std::function<Json()>& body) {
  try {
    rep["stages"][name] = body();
    return kExitOk;
  } catch (const Error& e) {
    rep["stages"][name] = {{"error", error_json(name, e)}};
    rep["error"] = error_json(name, e);
    return exit_code(e.kind());
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rif-lab: rational inner functions and Dirichlet-type spaces"};
  app.require_subcommand(1);
  Globals g;
  std::string schedule_text;
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--max-coeffs", g.max_coeffs, "cap on stored series coefficients");
  app.add_option("--tol", g.tol, "relative quadrature tolerance");
  app.add_option("--schedule", schedule_text, "comma separated box orders, e.g. 16,32,64,128");
  app.add_option("--json", g.json_path, "report path ('-' for stdout)");
  app.add_option("--csv", g.csv_path, "CSV path for curves (partial sums, Omega_x, H^p means)");
  app.add_option("--threads", g.threads, "worker threads (0: hardware concurrency)");
  app.add_flag("--timings", g.timings, "record stage timings in the report");

  std::string poly_path;
  auto add_poly = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--poly", poly_path, "polynomial JSON document");
    if (required) o->required();
    sub->fallthrough();
  };

  auto* c_reflect = app.add_subcommand("reflect", "reflection polynomial p~");
  add_poly(c_reflect);
  std::string degree_text;
  c_reflect->add_option("--degree", degree_text, "reflection degree d (default multidegree)");

  auto* c_validate = app.add_subcommand("validate", "check that p~/p is a rational inner function");
  add_poly(c_validate);

  auto* c_expand = app.add_subcommand("expand", "Taylor coefficients on a box");
  add_poly(c_expand);
  int order = 16;
  bool inverse = false;
  c_expand->add_option("--order", order, "box order N in every variable")->check(CLI::Range(0, 1 << 20));
  c_expand->add_flag("--inverse", inverse, "expand 1/p instead of p~/p");

  auto* c_classify = app.add_subcommand("classify", "D_alpha membership from partial sums");
  add_poly(c_classify);
  std::vector<std::string> alpha_texts;
  c_classify->add_option("--alpha", alpha_texts, "weight vector a1,...,an (repeatable)")->required();
  c_classify->add_flag("--inverse", inverse, "classify 1/p instead of p~/p");

  auto* c_hp = app.add_subcommand("hp", "H^p means of a partial derivative");
  add_poly(c_hp);
  int k_var = 1;
  double p_exp = 1.0;
  bool threshold = false;
  bool no_direct = false;
  std::size_t omega_samples = 100000;
  c_hp->add_option("--k", k_var, "derivative variable (1-based)");
  c_hp->add_option("--p", p_exp, "exponent p > 0");
  c_hp->add_flag("--threshold", threshold, "estimate the H^p threshold instead");
  c_hp->add_flag("--no-direct", no_direct, "threshold from the level-set route only");
  c_hp->add_option("--samples", omega_samples, "level-set samples for --threshold");

  auto* c_omega = app.add_subcommand("omega", "level-set measure of slice deltas");
  add_poly(c_omega);
  c_omega->add_option("--k", k_var, "slice variable (1-based)");
  c_omega->add_option("--samples", omega_samples, "slice samples")->check(CLI::Range(1000, 100000000));

  auto* c_embed = app.add_subcommand("embed", "D_alpha from H^p thresholds");
  add_poly(c_embed, false);
  std::string thresholds_text, endpoints_text;
  c_embed->add_option("--alpha", alpha_texts, "weight vector (repeatable)")->required();
  c_embed->add_option("--thresholds", thresholds_text, "thresholds t1,...,tn (inf allowed) instead of --poly");
  c_embed->add_option("--endpoints", endpoints_text, "open|closed per threshold (default open)");
  c_embed->add_option("--samples", omega_samples, "level-set samples when profiling --poly");
  c_embed->add_flag("--no-direct", no_direct, "thresholds from the level-set route only");

  auto* c_loja = app.add_subcommand("loja", "decay exponent at a boundary zero");
  add_poly(c_loja);
  std::string point_text, loja_alpha_text;
  c_loja->add_option("--point", point_text, "torus point as re,im pairs")->required();
  c_loja->add_option("--alpha", loja_alpha_text, "negative alphas to test, comma separated");

  auto* c_report = app.add_subcommand("report", "full analysis pipeline");
  add_poly(c_report);
  bool hardy = false, embed = false, loja = false;
  c_report->add_option("--alpha", alpha_texts, "weight vector (repeatable)");
  c_report->add_flag("--inverse", inverse, "classify 1/p instead of p~/p");
  c_report->add_flag("--hardy", hardy, "integrability profile");
  c_report->add_flag("--embed", embed, "feasibility of each alpha (implies --hardy)");
  c_report->add_flag("--loja", loja, "decay exponent at --point");
  c_report->add_option("--point", point_text, "torus point as re,im pairs");
  c_report->add_option("--loja-alpha", loja_alpha_text, "alphas for the decay-exponent verdict");
  c_report->add_option("--samples", omega_samples, "level-set samples");
  c_report->add_flag("--no-direct", no_direct, "thresholds from the level-set route only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    set_worker_threads(g.threads);
    if (!schedule_text.empty())
      for (double x : parse_list(schedule_text)) {
        if (x != std::floor(x) || x < 1) throw UsageError("--schedule entries must be positive integers");
        g.schedule.push_back(static_cast<int>(x));
      }
    std::vector<std::vector<double>> alphas;
    for (const auto& t : alpha_texts) alphas.push_back(parse_list(t));

    std::optional<MultiPoly> poly;
    if (!poly_path.empty()) {
      try {
        poly = parse_poly_text(read_file(poly_path));
      } catch (const Error& e) {
        std::cerr << "rif-lab: " << e.what() << "\n";
        return exit_code(e.kind());
      }
    }
    Json input = Json::object();
    if (poly) input["poly"] = poly_to_json(*poly);
    std::string csv;
    int rc = kExitOk;

    if (c_report->parsed()) {
      ReportOptions opt;
      opt.alphas = alphas;
      opt.schedule = g.schedule;
      opt.inverse = inverse;
      opt.hardy = hardy || embed;
      opt.embed = embed;
      opt.loja = loja;
      if (loja) {
        if (point_text.empty()) throw UsageError("--loja needs --point");
        opt.point = parse_point(point_text);
      }
      if (!loja_alpha_text.empty()) opt.loja_alphas = parse_list(loja_alpha_text);
      opt.seed = g.seed;
      opt.max_coeffs = g.max_coeffs;
      opt.tol = g.tol;
      opt.omega_samples = omega_samples;
      opt.hp_direct = !no_direct;
      opt.timings = g.timings;
      ReportOutcome res = run_report(*poly, opt);
      if (res.report["stages"].contains("classify")) {
        csv = "alpha_index,order,partial_sum\n";
        const Json& vs = res.report["stages"]["classify"];
        if (vs.contains("verdicts"))
          for (std::size_t i = 0; i < vs["verdicts"].size(); ++i)
            for (const Json& s : vs["verdicts"][i]["partial_sums"])
              csv += std::to_string(i) + "," + s["order"].dump() + "," + s["value"].dump() + "\n";
      }
      write_outputs(g, res.report, csv);
      return res.exit_code;
    }

    Json rep = envelope(g, input);
    const auto t0 = std::chrono::steady_clock::now();
    std::string name;

    if (c_reflect->parsed()) {
      name = "reflect";
      rc = run_stage(rep, name, [&] {
        MultiIndex d = poly->multidegree();
        if (!degree_text.empty()) {
          std::vector<int> dv;
          for (double x : parse_list(degree_text)) dv.push_back(static_cast<int>(x));
          d = MultiIndex(dv);
        }
        return Json{{"degree", std::vector<int>(d.values().begin(), d.values().end())},
                    {"ptilde", poly_to_json(reflect(*poly, d))}};
      });
    } else if (c_validate->parsed()) {
      name = "validate";
      rc = run_stage(rep, name, [&] {
        ProbeConfig probe;
        probe.seed = g.seed;
        const RIF f = build_rif(*poly, probe);
        return Json{{"status", "inner"}, {"certificate", to_json(f.certificate())}};
      });
    } else if (c_expand->parsed()) {
      name = "expand";
      rc = run_stage(rep, name, [&] {
        const MultiPoly num = inverse ? MultiPoly::constant(poly->nvars(), 1.0) : reflect(*poly);
        const CoeffBox box = expand_ratio(num, *poly, MultiIndex::filled(poly->nvars(), order), g.max_coeffs);
        Json coeffs = Json::array();
        csv = "";
        for (std::size_t i = 0; i < poly->nvars(); ++i) csv += "k" + std::to_string(i + 1) + ",";
        csv += "re,im\n";
        for_each_index(box.orders(), [&](std::span<const int> k, std::size_t lin) {
          const cplx c = box[lin];
          if (c == 0.0) return;
          coeffs.push_back({{"exp", std::vector<int>(k.begin(), k.end())}, {"re", c.real()}, {"im", c.imag()}});
          for (int ki : k) csv += std::to_string(ki) + ",";
          csv += fmt(c.real()) + "," + fmt(c.imag()) + "\n";
        });
        return Json{{"function", inverse ? "1/p" : "p~/p"}, {"order", order}, {"coefficients", coeffs}};
      });
    } else if (c_classify->parsed()) {
      name = "classify";
      rc = run_stage(rep, name, [&] {
        const std::size_t n = poly->nvars();
        const std::vector<int> schedule = g.schedule.empty() ? default_schedule(n) : g.schedule;
        const MultiPoly num = inverse ? MultiPoly::constant(n, 1.0) : reflect(*poly);
        std::optional<CoeffBox> cache;
        const SeriesSource src = [&](const MultiIndex& o) {
          if (!cache || cache->orders() != o) cache.emplace(expand_ratio(num, *poly, o, g.max_coeffs));
          return *cache;
        };
        // Validation first: classification of a non-inner quotient is meaningless.
        ProbeConfig probe;
        probe.seed = g.seed;
        build_rif(*poly, probe);
        Json list = Json::array();
        csv = "alpha_index,order,partial_sum\n";
        for (std::size_t i = 0; i < alphas.size(); ++i) {
          require(alphas[i].size() == n, ErrorKind::DimensionMismatch, "alpha length does not match vars");
          const MembershipVerdict v = classify_membership(src, WeightVector(alphas[i]), schedule);
          Json e = to_json(v);
          e["alpha"] = alphas[i];
          bool uniform_negative = true;
          for (double x : alphas[i]) uniform_negative = uniform_negative && x == alphas[i].front() && x < 0.0;
          if (inverse && uniform_negative)
            e["implication"] = to_json(inverse_denominator_verdict(alphas[i].front(), static_cast<int>(n), v));
          list.push_back(e);
          for (const PartialSum& s : v.partial_sums)
            csv += std::to_string(i) + "," + std::to_string(s.order) + "," + fmt(s.value) + "\n";
        }
        return Json{{"function", inverse ? "1/p" : "p~/p"}, {"schedule", schedule}, {"verdicts", list}};
      });
    } else if (c_hp->parsed()) {
      name = "hardy";
      rc = run_stage(rep, name, [&] {
        ProbeConfig probe;
        probe.seed = g.seed;
        const RIF f = build_rif(*poly, probe);
        const std::size_t k = variable_index(k_var, f.nvars());
        if (threshold) {
          ThresholdConfig tc;
          tc.omega.samples = omega_samples;
          tc.omega.seed = g.seed;
          tc.direct = !no_direct;
          return Json{{"k", k_var}, {"threshold", to_json(hp_threshold(f, k, tc))}};
        }
        HpConfig hc;
        hc.rel_tol = std::min(g.tol, 1e-6);
        const HpEstimate e = hp_norm_partial(f, k, p_exp, hc);
        csv = "radius,mean\n";
        for (std::size_t j = 0; j < e.radii.size(); ++j) csv += fmt(e.radii[j]) + "," + fmt(e.means[j]) + "\n";
        Json j = to_json(e);
        j["k"] = k_var;
        return j;
      });
    } else if (c_omega->parsed()) {
      name = "omega";
      rc = run_stage(rep, name, [&] {
        ProbeConfig probe;
        probe.seed = g.seed;
        const RIF f = build_rif(*poly, probe);
        OmegaConfig oc;
        oc.samples = omega_samples;
        oc.seed = g.seed;
        const OmegaProfile o = omega_measure(f, variable_index(k_var, f.nvars()), oc);
        csv = "x,measure,standard_error\n";
        for (std::size_t i = 0; i < o.xs.size(); ++i)
          csv += fmt(o.xs[i]) + "," + fmt(o.measure[i]) + "," + fmt(o.standard_error[i]) + "\n";
        Json j = to_json(o);
        j["k"] = k_var;
        return j;
      });
    } else if (c_embed->parsed()) {
      name = "embed";
      IntegrabilityProfile profile;
      if (!thresholds_text.empty()) {
        const std::vector<double> ts = parse_list(thresholds_text);
        std::vector<std::string> ends;
        std::stringstream ss(endpoints_text);
        for (std::string e; std::getline(ss, e, ',');) ends.push_back(e);
        if (!ends.empty() && ends.size() != ts.size()) throw UsageError("--endpoints length mismatch");
        for (std::size_t i = 0; i < ts.size(); ++i) {
          ThresholdEntry t;
          t.bounded = std::isinf(ts[i]);
          t.value = t.bounded ? kBoundedThreshold : ts[i];
          const std::string end = ends.empty() ? "open" : ends[i];
          if (end != "open" && end != "closed") throw UsageError("endpoint must be open or closed");
          t.endpoint = end == "closed" ? Endpoint::Closed : Endpoint::Open;
          t.method = "user";
          profile.entries.push_back(t);
        }
        rep["input"]["thresholds"] = ts;
      } else if (poly) {
        rc = run_stage(rep, "hardy", [&] {
          ProbeConfig probe;
          probe.seed = g.seed;
          const RIF f = build_rif(*poly, probe);
          ThresholdConfig tc;
          tc.omega.samples = omega_samples;
          tc.omega.seed = g.seed;
          tc.direct = !no_direct;
          profile = integrability_profile(f, tc);
          Json entries = Json::array();
          for (const auto& e : profile.entries) entries.push_back(to_json(e));
          return Json{{"profile", entries}};
        });
      } else {
        throw UsageError("embed needs --poly or --thresholds");
      }
      if (rc == kExitOk)
        rc = run_stage(rep, name, [&] {
          Json list = Json::array();
          for (const auto& a : alphas) {
            Json e = to_json(hp_embed_feasible(WeightVector(a), profile));
            e["alpha"] = a;
            list.push_back(e);
          }
          return Json{{"feasibility", list}};
        });
    } else if (c_loja->parsed()) {
      name = "loja";
      const std::vector<cplx> point = parse_point(point_text);
      const std::vector<double> las = loja_alpha_text.empty() ? std::vector<double>{} : parse_list(loja_alpha_text);
      rc = run_stage(rep, name, [&] {
        LojaConfig lc;
        lc.seed = g.seed;
        const LojaEstimate est = loja_probe(*poly, point, lc);
        Json j{{"estimate", to_json(est)}, {"q_hat", est.q_hat}};
        const int n = static_cast<int>(poly->nvars());
        try {
          const Rational q = snap_exponent(est.q_hat, est.q_halfwidth);
          const Rational t = lojasiewicz_threshold(q, n);
          j["snapped_q"] = std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
          j["claimed_supremum"] = std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
        } catch (const Error&) {
          j["snapped_q"] = nullptr;
        }
        Json vs = Json::array();
        for (double a : las) {
          Json v = to_json(lojasiewicz_verdict(est, n, a));
          v["alpha"] = a;
          vs.push_back(v);
        }
        j["verdicts"] = vs;
        csv = "log_dist,log_min_modulus\n";
        for (const auto& b : est.envelope) csv += fmt(b.log_dist) + "," + fmt(b.log_min_modulus) + "\n";
        return j;
      });
    }

    if (g.timings)
      rep["timings"][name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(g, rep, csv);
    return rc;
  } catch (const UsageError& e) {
    std::cerr << "rif-lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "rif-lab: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}
