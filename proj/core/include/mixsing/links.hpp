#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixsing/contact.hpp"
#include "mixsing/numeric.hpp"
#include "mixsing/sampling.hpp"

namespace mixsing {

struct TransversalityReport {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double min_sigma = 0.0;
  bool transversal = false;
};

// Rank of the stacked differential of (Re F, Im F, rho) at each point must be 2k + 1.
TransversalityReport transversality_check(const MixedMap& F, const std::vector<PointC>& points, double tol = 1e-8);

struct RadiusCheck {
  double radius = 0.0;
  TransversalityReport report;
  double acceptance_ratio = 0.0;
  bool sampling_failed = false;
  bool clean() const { return !sampling_failed && report.failures == 0; }
};

struct RadiusProbeReport {
  std::vector<RadiusCheck> radii;
  std::size_t clean_prefix = 0;            // leading radii without failures
  std::optional<double> r0_upper_bound;    // smallest radius with a failure
  std::optional<double> r0_estimate;       // largest radius below which every probed radius passed
  std::uint64_t seed = 0;
};

// Link points at each radius, then transversality of the link to the sphere.
RadiusProbeReport transversality_probe(const MixedMap& F, const std::vector<double>& radii, std::size_t samples,
                                       std::uint64_t seed, std::size_t workers = 1, double tol = 1e-8);

struct FiberLevel {
  double scale = 0.1;
  double power = 2.0;
  double at(double r) const;  // scale * r^power
};

// Points with |F| = level(r) on the sphere of radius r; the fibers must be transverse to the sphere.
RadiusProbeReport milnor_radius_probe(const MixedMap& F, const std::vector<double>& radii, std::size_t samples,
                                      std::uint64_t seed, std::size_t workers = 1, double tol = 1e-8,
                                      const FiberLevel& level = {});

// Reeb field of the standard contact form on the sphere of radius r, as a real vector (x1, y1, ...).
RealVector reeb(const PointC& p, double r);
// Same field as a complex vector: i z / (2 r^2).
std::vector<cplx> reeb_complex(const PointC& p, double r);

// Gradient of arg g packed as (dTheta/dx_j + i dTheta/dy_j)_j.
std::vector<cplx> theta_grad(const MixedPolynomial& g, const PointC& p);
// dTheta_g(v) for a complex tangent vector v.
double dtheta(const std::vector<cplx>& grad, const std::vector<cplx>& v);

enum class ReebProjection { complex_line, real_span };

// v1 = pi(g conj(Dg)), v2 = pi(conj(g) Dbar g); pi removes the Reeb direction.
struct V1V2 {
  std::vector<cplx> v1, v2;
  double norm1_sq = 0.0, norm2_sq = 0.0;
};
V1V2 v1v2(const MixedPolynomial& g, const PointC& p, double r, ReebProjection proj = ReebProjection::complex_line);

// |g|^2 dTheta_g(R_c) = e^{c|g|^2} |g|^2 dTheta_g(R) + (c/2) e^{c|g|^2} (|v1|^2 - |v2|^2)
double reeb_c_value(const MixedPolynomial& g, const PointC& p, double r, double c,
                    ReebProjection proj = ReebProjection::complex_line);

struct OpenBookOptions {
  std::size_t workers = 1;
  ReebProjection projection = ReebProjection::complex_line;
  double binding_margin = 1e-6;
  std::size_t binding_samples = 0;  // extra samples near the binding for the eta estimate
  double tol = 1e-8;
};

struct CStep {
  double c = 0.0;
  double min_value = 0.0;
};

struct OpenBookReport {
  std::string verdict;  // positive | inconclusive | sampling_failure
  std::optional<double> c_used;
  std::vector<CStep> steps;
  std::size_t samples = 0;
  std::size_t excluded_near_binding = 0;
  double min_v1_minus_v2 = 0.0;
  bool v1_dominates = false;
  double identity_max_error = 0.0;  // c = 0 formula vs theta_grad route, relative
  std::optional<double> eta;
  std::size_t angular_failures = 0;
  std::size_t rank_failures = 0;
  double radius = 0.0;
  std::uint64_t seed = 0;
  std::vector<PointC> points;
};

std::vector<double> default_c_schedule();

OpenBookReport openbook_scan(const MixedMap& G, const MixedPolynomial& g, double r, const std::vector<double>& c_schedule,
                             std::size_t samples, std::uint64_t seed, const OpenBookOptions& opt = {});

// holomorphic_like_scan of G restricted to z_i = 0, inside the sphere of C^{n-1}.
DScanReport binding_contact_check(const MixedMap& G, std::size_t i, double r, std::size_t samples, std::uint64_t seed,
                                  const DScanOptions& opt = {});

}  // namespace mixsing
