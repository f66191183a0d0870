#include "riflab/rif.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "riflab/errors.hpp"

namespace riflab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tensor grid over radii x angles in every variable, coarsened in high
// dimension so the point count stays under the cap.
void probe_grid(const MultiPoly& p, const ProbeConfig& cfg, StabilityCertificate& cert) {
  const std::size_t n = p.nvars();
  int angles = std::max(1, cfg.angles);
  auto count = [&](int a) {
    double c = 1.0;
    for (std::size_t i = 0; i < n; ++i) c *= static_cast<double>(cfg.radii.size() * a);
    return c;
  };
  while (angles > 1 && count(angles) > static_cast<double>(cfg.max_grid_points)) --angles;
  std::vector<cplx> nodes;
  for (double r : cfg.radii)
    for (int a = 0; a < (r == 0.0 ? 1 : angles); ++a)
      nodes.push_back(std::polar(r, kTwoPi * (a + 0.5) / angles));

  std::vector<std::size_t> idx(n, 0);
  std::vector<cplx> z(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) z[i] = nodes[idx[i]];
    const double m = std::abs(p.eval(z));
    ++cert.interior_points;
    if (m < cert.min_interior_modulus) {
      cert.min_interior_modulus = m;
      cert.argmin = z;
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == nodes.size()) idx[i++] = 0;
    if (i == n) break;
  }
}

void probe_random_interior(const MultiPoly& p, const ProbeConfig& cfg, std::mt19937_64& rng,
                           StabilityCertificate& cert) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> z(p.nvars());
  for (std::size_t s = 0; s < cfg.interior_samples; ++s) {
    for (auto& zi : z) zi = std::polar(std::sqrt(u(rng)) * (1.0 - 1e-9), kTwoPi * u(rng));
    const double m = std::abs(p.eval(z));
    ++cert.interior_points;
    if (m < cert.min_interior_modulus) {
      cert.min_interior_modulus = m;
      cert.argmin = z;
    }
  }
}

// Roots of p in z_1 for slice parameters strictly inside the polydisk, pushed
// towards the boundary on a log scale.
void probe_slice_roots(const MultiPoly& p, const ProbeConfig& cfg, std::mt19937_64& rng,
                       StabilityCertificate& cert) {
  const std::size_t n = p.nvars();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  cert.min_slice_root_modulus = std::numeric_limits<double>::infinity();
  const std::size_t probes = n == 1 ? 1 : cfg.root_probes;
  std::vector<cplx> zhat(n - 1);
  for (std::size_t s = 0; s < probes; ++s) {
    for (auto& zi : zhat) zi = std::polar(1.0 - std::pow(10.0, -6.0 * u(rng)), kTwoPi * u(rng));
    const UniPoly sl = slice(p, 0, zhat);
    ++cert.slice_probes;
    if (sl.is_zero())
      fail(ErrorKind::InteriorZero, "p vanishes identically on an interior slice");
    if (sl.degree() < 1) continue;
    for (const cplx& r : roots(sl)) {
      cert.min_slice_root_modulus = std::min(cert.min_slice_root_modulus, std::abs(r));
      if (std::abs(r) < 1.0 - cfg.root_margin)
        fail(ErrorKind::InteriorZero,
             "p has a zero inside the polydisk (|z_1| = " + std::to_string(std::abs(r)) + ")");
    }
  }
}

void probe_unimodular(const MultiPoly& p, const MultiPoly& pt, const ProbeConfig& cfg,
                      std::mt19937_64& rng, StabilityCertificate& cert) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<cplx> z(p.nvars());
  for (std::size_t s = 0; s < cfg.unimodular_samples; ++s) {
    for (auto& zi : z) zi = std::polar(1.0, u(rng));
    const cplx den = p.eval(z);
    if (std::abs(den) < cfg.torus_exclusion) {
      ++cert.excluded_torus_points;
      continue;
    }
    const double dev = std::abs(std::abs(pt.eval(z) / den) - 1.0);
    cert.max_unimodular_deviation = std::max(cert.max_unimodular_deviation, dev);
    ++cert.unimodular_points;
  }
}

}  // namespace

RIF::RIF(MultiPoly p, MultiPoly ptilde, StabilityCertificate cert)
    : p_(std::move(p)), ptilde_(std::move(ptilde)), cert_(std::move(cert)) {
  require(p_.nvars() == ptilde_.nvars(), ErrorKind::DimensionMismatch,
          "numerator and denominator variable counts differ");
}

cplx RIF::eval(std::span<const cplx> z) const { return ptilde_.eval(z) / p_.eval(z); }

MultiPoly RIF::derivative_numerator(std::size_t k) const {
  return partial_derivative(ptilde_, k) * p_ - ptilde_ * partial_derivative(p_, k);
}

cplx RIF::eval_partial(std::size_t k, std::span<const cplx> z) const {
  const cplx den = p_.eval(z);
  return derivative_numerator(k).eval(z) / (den * den);
}

RIF build_rif(const MultiPoly& p, const ProbeConfig& probe) {
  const std::size_t n = p.nvars();
  for (std::size_t i = 0; i < n; ++i)
    require(p.multidegree()[i] >= 1, ErrorKind::DegenerateVariable,
            "p is constant in z_" + std::to_string(i + 1));
  const double scale = std::max(1.0, p.max_abs_coeff());
  require(std::abs(p.coeff(MultiIndex::zeros(n))) > probe.zero_tol * scale,
          ErrorKind::InteriorZero, "p(0) = 0");

  StabilityCertificate cert;
  cert.min_interior_modulus = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(probe.seed);
  probe_grid(p, probe, cert);
  probe_random_interior(p, probe, rng, cert);
  if (cert.min_interior_modulus <= probe.zero_tol * scale)
    fail(ErrorKind::InteriorZero, "|p| vanishes at an interior probe point");
  probe_slice_roots(p, probe, rng, cert);

  MultiPoly pt = reflect(p);
  probe_unimodular(p, pt, probe, rng, cert);
  if (cert.max_unimodular_deviation >= probe.unimodular_tol)
    fail(ErrorKind::UnimodularityFailure,
         "| |p~/p| - 1 | reached " + std::to_string(cert.max_unimodular_deviation) +
             " on the torus");
  return RIF(p, std::move(pt), std::move(cert));
}

BlaschkeSlice slice_blaschke(const RIF& f, std::size_t k, std::span<const cplx> zhat) {
  const std::size_t n = f.nvars();
  require(k < n, ErrorKind::InvalidArgument, "slice variable out of range");
  require(zhat.size() + 1 == n, ErrorKind::DimensionMismatch, "slice point length mismatch");
  for (const cplx& z : zhat)
    require(std::abs(std::abs(z) - 1.0) < 1e-9, ErrorKind::InvalidArgument,
            "slice parameters must lie on the torus");

  const UniPoly num = slice(f.ptilde(), k, zhat);
  if (num.is_zero()) fail(ErrorKind::SliceVanishes, "numerator vanishes on the whole slice");

  BlaschkeSlice out;
  if (num.degree() >= 1) {
    for (const cplx& r : roots(num))
      if (1.0 - std::abs(r) >= kBoundaryZeroTol) out.zeros.push_back(r);
  }
  out.degree_defect = f.multidegree()[k] - static_cast<int>(out.zeros.size());
  for (const cplx& z : out.zeros) {
    const double d = 1.0 - std::abs(z);
    const double d1 = std::abs(1.0 - z);
    out.delta = out.delta ? std::min(*out.delta, d) : d;
    out.delta_to_one = out.delta_to_one ? std::min(*out.delta_to_one, d1) : d1;
  }
  return out;
}

}  // namespace riflab
