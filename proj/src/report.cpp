#include "riflab/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>

namespace riflab {

namespace {

Json number(double x) {
  // nlohmann writes non-finite doubles as null; keep the sign of infinities visible.
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

Json cplx_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

}  // namespace

MultiPoly parse_poly(const Json& doc) {
  auto bad = [](const std::string& msg) { fail(ErrorKind::Parse, "polynomial document: " + msg); };
  if (!doc.is_object()) bad("expected an object");
  if (!doc.contains("vars") || !doc["vars"].is_number_integer()) bad("\"vars\" must be an integer");
  const long long n = doc["vars"].get<long long>();
  if (n < 1 || n > 64) bad("\"vars\" must be between 1 and 64");
  if (!doc.contains("terms") || !doc["terms"].is_array()) bad("\"terms\" must be an array");
  if (doc["terms"].empty()) bad("\"terms\" is empty");

  MultiPoly::TermMap terms;
  std::set<MultiIndex> seen;
  for (const Json& t : doc["terms"]) {
    if (!t.is_object()) bad("each term must be an object");
    if (!t.contains("exp") || !t["exp"].is_array()) bad("term without \"exp\" array");
    if (t["exp"].size() != static_cast<std::size_t>(n))
      bad("exponent length " + std::to_string(t["exp"].size()) + " does not match vars " +
          std::to_string(n));
    std::vector<int> e;
    for (const Json& x : t["exp"]) {
      if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > 1000000)
        bad("exponents must be nonnegative integers");
      e.push_back(static_cast<int>(x.get<long long>()));
    }
    for (const char* key : {"re", "im"})
      if (!t.contains(key) || !t[key].is_number()) bad(std::string("term without numeric \"") + key + "\"");
    const cplx c(t["re"].get<double>(), t["im"].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) bad("coefficients must be finite");
    MultiIndex mi(std::move(e));
    if (!seen.insert(mi).second) bad("duplicate exponent " + mi.str());
    if (c != 0.0) terms.emplace(mi, c);
  }
  return MultiPoly(static_cast<std::size_t>(n), std::move(terms));
}

MultiPoly parse_poly_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  return parse_poly(doc);
}

Json poly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", std::vector<int>(e.values().begin(), e.values().end())},
                     {"re", c.real()},
                     {"im", c.imag()}});
  return {{"vars", p.nvars()}, {"terms", terms}};
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InteriorZero:
    case ErrorKind::DegenerateVariable:
    case ErrorKind::UnimodularityFailure:
    case ErrorKind::Parse:
      return 2;
    case ErrorKind::SliceVanishes:
    case ErrorKind::ResourceLimit:
    case ErrorKind::Truncation:
    case ErrorKind::NumericalFailure:
      return 3;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidArgument:
      return kExitUsage;
  }
  return 3;
}

Json to_json(const StabilityCertificate& c) {
  Json argmin = Json::array();
  for (const cplx& z : c.argmin) argmin.push_back(cplx_json(z));
  return {{"min_interior_modulus", c.min_interior_modulus},
          {"argmin", argmin},
          {"interior_points", c.interior_points},
          {"min_slice_root_modulus", number(c.min_slice_root_modulus)},
          {"slice_probes", c.slice_probes},
          {"max_unimodular_deviation", c.max_unimodular_deviation},
          {"unimodular_points", c.unimodular_points},
          {"excluded_torus_points", c.excluded_torus_points}};
}

Json to_json(const MembershipVerdict& v) {
  Json sums = Json::array();
  for (const PartialSum& s : v.partial_sums) sums.push_back({{"order", s.order}, {"value", s.value}});
  Json j{{"status", to_string(v.status)},
         {"method", v.method},
         {"tail_exponent", number(v.tail_exponent)},
         {"tail_halfwidth", number(v.tail_halfwidth)},
         {"margin", v.margin},
         {"local_slopes", numbers(v.local_slopes)},
         {"partial_sums", sums}};
  j["norm_estimate"] = v.norm_estimate ? number(*v.norm_estimate) : Json(nullptr);
  return j;
}

Json to_json(const HpEstimate& e) {
  return {{"p", e.p},
          {"status", to_string(e.status)},
          {"method", e.method},
          {"extrapolated", number(e.extrapolated)},
          {"growth_exponent", number(e.growth_exponent)},
          {"growth_halfwidth", number(e.growth_halfwidth)},
          {"radii", e.radii},
          {"means", e.means},
          {"monotonicity_violations", e.monotonicity_violations}};
}

Json to_json(const OmegaProfile& o) {
  return {{"method", o.method},
          {"samples", o.samples},
          {"degenerate", o.degenerate},
          {"min_delta", number(o.min_delta)},
          {"bounded_away", o.bounded_away},
          {"exponent", number(o.exponent)},
          {"exponent_halfwidth", o.exponent_halfwidth},
          {"fit_range", {o.fit_lo, o.fit_hi}},
          {"threshold", number(levelset_threshold(o))},
          {"xs", o.xs},
          {"measure", o.measure},
          {"standard_error", o.standard_error}};
}

Json to_json(const ThresholdEntry& t) {
  return {{"value", t.value},
          {"endpoint", to_string(t.endpoint)},
          {"bounded", t.bounded},
          {"halfwidth", t.halfwidth},
          {"inconclusive", t.inconclusive},
          {"levelset_value", number(t.levelset_value)},
          {"direct_value", number(t.direct_value)},
          {"method", t.method}};
}

Json to_json(const Feasibility& f) {
  return {{"feasible", f.feasible},
          {"method", f.method},
          {"load", f.load},
          {"cs", numbers(f.cs)},
          {"outside_stated_range", f.outside_stated_range},
          {"uses_inconclusive", f.uses_inconclusive}};
}

Json to_json(const Implication& i) {
  return {{"claimed_exponent", i.claimed_exponent},
          {"claim", i.claim},
          {"method", i.method},
          {"basis", i.basis},
          {"provenance", i.provenance}};
}

Json to_json(const LojaEstimate& e) {
  Json pt = Json::array();
  for (const cplx& z : e.point) pt.push_back(cplx_json(z));
  Json env = Json::array();
  for (const EnvelopeBin& b : e.envelope)
    env.push_back({{"log_dist", b.log_dist}, {"log_min_modulus", b.log_min_modulus}, {"samples", b.samples}});
  return {{"method", e.method},
          {"point", pt},
          {"q_hat", e.q_hat},
          {"q_halfwidth", e.q_halfwidth},
          {"C_hat", e.C_hat},
          {"samples", e.samples},
          {"fit_range", {e.fit_lo, e.fit_hi}},
          {"isolation_min", number(e.isolation_min)},
          {"envelope", env}};
}

Json to_json(const LojaVerdict& v) {
  return {{"passes", v.passes}, {"bound", v.bound}, {"implication", to_json(v.implication)}};
}

Json error_json(std::string_view stage, const Error& e) {
  return {{"stage", stage}, {"kind", to_string(e.kind())}, {"message", e.what()}};
}

std::vector<int> default_schedule(std::size_t nvars, std::size_t budget) {
  int top = 2;
  while (top < 512) {
    const double count = std::pow(2.0 * top + 1.0, static_cast<double>(nvars));
    if (count > static_cast<double>(budget)) break;
    top *= 2;
  }
  return geometric_schedule(std::max(2, top / 32), top);
}

ReportOutcome run_report(const MultiPoly& p, const ReportOptions& opt) {
  using clock = std::chrono::steady_clock;
  ReportOutcome out;
  Json& rep = out.report;
  const std::size_t n = p.nvars();
  const std::vector<int> schedule = opt.schedule.empty() ? default_schedule(n) : opt.schedule;

  Json options{{"seed", opt.seed},
               {"max_coeffs", opt.max_coeffs},
               {"tol", opt.tol},
               {"schedule", schedule},
               {"inverse", opt.inverse},
               {"omega_samples", opt.omega_samples},
               {"hp_direct", opt.hp_direct},
               {"classify_margin", ClassifyConfig{}.margin},
               {"probe", {{"radii", ProbeConfig{}.radii},
                          {"angles", ProbeConfig{}.angles},
                          {"interior_samples", ProbeConfig{}.interior_samples},
                          {"root_probes", ProbeConfig{}.root_probes},
                          {"unimodular_samples", ProbeConfig{}.unimodular_samples},
                          {"unimodular_tol", ProbeConfig{}.unimodular_tol}}}};
  Json alphas = Json::array();
  for (const auto& a : opt.alphas) alphas.push_back(a);
  options["alphas"] = alphas;

  rep["version"] = {{"tool", kToolVersion}, {"schema", kReportSchemaVersion}};
  rep["input"] = {{"poly", poly_to_json(p)}, {"options", options}};
  rep["stages"] = Json::object();
  rep["timings"] = Json::object();
  Json& stages = rep["stages"];

  std::string current;
  auto stage = [&](const std::string& name, const std::function<Json()>& body) {
    current = name;
    const auto t0 = clock::now();
    stages[name] = body();
    if (opt.timings)
      rep["timings"][name] = std::chrono::duration<double>(clock::now() - t0).count();
  };

  try {
    MultiPoly ptilde = reflect(p);
    stage("reflect", [&] { return Json{{"ptilde", poly_to_json(ptilde)}, {"multidegree", std::vector<int>(p.multidegree().values().begin(), p.multidegree().values().end())}}; });

    ProbeConfig probe;
    probe.seed = opt.seed;
    std::optional<RIF> f;
    stage("validate", [&] {
      f.emplace(build_rif(p, probe));
      return Json{{"status", "inner"}, {"certificate", to_json(f->certificate())}};
    });

    const MultiPoly& num = opt.inverse ? MultiPoly::constant(n, 1.0) : f->ptilde();
    const MultiIndex top = MultiIndex::filled(n, schedule.back());
    std::optional<CoeffBox> box;
    if (!opt.alphas.empty()) {
      stage("expand", [&] {
        box.emplace(expand_ratio(num, p, top, opt.max_coeffs));
        std::vector<double> diag;
        for (const cplx& c : diagonal(*box)) {
          if (diag.size() == 9) break;
          diag.push_back(c.real());
        }
        return Json{{"function", opt.inverse ? "1/p" : "p~/p"},
                    {"orders", std::vector<int>(top.values().begin(), top.values().end())},
                    {"coefficients", box->size()},
                    {"diagonal_head_re", diag}};
      });
      stage("classify", [&] {
        const SeriesSource src = [&](const MultiIndex& o) {
          return o == box->orders() ? *box : expand_ratio(num, p, o, opt.max_coeffs);
        };
        Json list = Json::array();
        for (const auto& a : opt.alphas) {
          require(a.size() == n, ErrorKind::DimensionMismatch,
                  "alpha has " + std::to_string(a.size()) + " entries for " + std::to_string(n) +
                      " variables");
          const MembershipVerdict v = classify_membership(src, WeightVector(a), schedule);
          Json entry = to_json(v);
          entry["alpha"] = a;
          bool uniform_negative = true;
          for (double x : a) uniform_negative = uniform_negative && x == a.front() && x < 0.0;
          if (opt.inverse && uniform_negative)
            entry["implication"] = to_json(inverse_denominator_verdict(a.front(), static_cast<int>(n), v));
          list.push_back(entry);
        }
        return Json{{"verdicts", list}};
      });
    }

    IntegrabilityProfile profile;
    if ((opt.hardy || opt.embed) && n >= 2) {
      stage("hardy", [&] {
        ThresholdConfig tc;
        tc.omega.samples = opt.omega_samples;
        tc.omega.seed = opt.seed;
        tc.hp.rel_tol = opt.tol;
        tc.direct = opt.hp_direct;
        profile = integrability_profile(*f, tc);
        Json entries = Json::array();
        for (const auto& e : profile.entries) entries.push_back(to_json(e));
        return Json{{"profile", entries}};
      });
    }
    if (opt.embed && n >= 2) {
      stage("embed", [&] {
        Json list = Json::array();
        for (const auto& a : opt.alphas) {
          Json entry = to_json(hp_embed_feasible(WeightVector(a), profile));
          entry["alpha"] = a;
          list.push_back(entry);
        }
        return Json{{"feasibility", list}};
      });
    }
    if (opt.loja) {
      stage("loja", [&] {
        LojaConfig lc;
        lc.seed = opt.seed;
        const LojaEstimate est = loja_probe(p, opt.point, lc);
        Json j{{"estimate", to_json(est)}};
        try {
          const Rational q = snap_exponent(est.q_hat, est.q_halfwidth);
          const Rational t = lojasiewicz_threshold(q, static_cast<int>(n));
          j["snapped_q"] = std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
          j["claimed_supremum"] = std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
        } catch (const Error&) {
          j["snapped_q"] = nullptr;
        }
        Json verdicts = Json::array();
        for (double a : opt.loja_alphas) {
          Json v = to_json(lojasiewicz_verdict(est, static_cast<int>(n), a));
          v["alpha"] = a;
          verdicts.push_back(v);
        }
        j["verdicts"] = verdicts;
        return j;
      });
    }
  } catch (const Error& e) {
    stages[current] = {{"error", error_json(current, e)}};
    rep["error"] = error_json(current, e);
    out.exit_code = exit_code(e.kind());
  }
  return out;
}

}  // namespace riflab
