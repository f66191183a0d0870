#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "riflab/blaschke.hpp"
#include "riflab/dirichlet.hpp"
#include "riflab/embeddings.hpp"
#include "riflab/errors.hpp"
#include "riflab/hardy.hpp"
#include "riflab/loja.hpp"
#include "riflab/rif.hpp"
#include "riflab/series.hpp"

namespace riflab {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// {"vars": n, "terms": [{"exp": [...], "re": x, "im": y}, ...]}
MultiPoly parse_poly(const Json& doc);
MultiPoly parse_poly_text(std::string_view text);
Json poly_to_json(const MultiPoly& p);

/// 0 ok, 2 validation failure, 3 numerical failure, 64 usage error.
int exit_code(ErrorKind kind);
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 64;

Json to_json(const StabilityCertificate& c);
Json to_json(const MembershipVerdict& v);
Json to_json(const HpEstimate& e);
Json to_json(const OmegaProfile& o);
Json to_json(const ThresholdEntry& t);
Json to_json(const Feasibility& f);
Json to_json(const Implication& i);
Json to_json(const LojaEstimate& e);
Json to_json(const LojaVerdict& v);
Json error_json(std::string_view stage, const Error& e);

/// Largest power-of-two box order with at most `budget` coefficients, capped
/// at 512; the schedule runs from max(2, top/32) to top.
std::vector<int> default_schedule(std::size_t nvars, std::size_t budget = std::size_t{1} << 22);

struct ReportOptions {
  std::vector<std::vector<double>> alphas;
  std::vector<int> schedule;  // empty: default_schedule
  bool inverse = false;       // classify 1/p instead of p~/p
  bool hardy = false;
  bool embed = false;
  bool loja = false;
  std::vector<cplx> point;
  std::vector<double> loja_alphas;
  std::uint64_t seed = 20240521;
  std::size_t max_coeffs = kDefaultMaxCoeffs;
  double tol = 1e-6;
  std::size_t omega_samples = 100000;
  bool hp_direct = true;
  bool timings = false;
};

struct ReportOutcome {
  Json report;
  int exit_code = kExitOk;
};

/// reflect -> validate -> expand -> classify -> hardy -> embed -> loja. The
/// first failing stage is recorded in the report and ends the pipeline.
ReportOutcome run_report(const MultiPoly& p, const ReportOptions& opt);

}  // namespace riflab
