#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixsing/certify.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/numeric.hpp"

namespace mixsing {

// Matrix of alpha -> sum_i alpha_i Dbar f_i - conj(alpha_i) conj(D f_i), from C^k = R^{2k} to C^n = R^{2n}.
RealMatrix relation_matrix(const std::vector<std::vector<cplx>>& dz, const std::vector<std::vector<cplx>>& dzbar);

struct SingularityTest {
  bool singular = false;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::vector<cplx> alpha;  // unit kernel direction
};

SingularityTest singularity_from_gradients(const std::vector<std::vector<cplx>>& dz,
                                           const std::vector<std::vector<cplx>>& dzbar, double tol = 1e-8);
SingularityTest mixed_singular_at(const MixedMap& F, const PointC& p, double tol = 1e-8);

enum class Verdict { refuted, no_counterexample_found, certified };
const char* to_string(Verdict v);

struct NondegOptions {
  std::uint32_t bound = 8;
  std::size_t budget = 64;  // restarts per face
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double torus_guard = 1e-3;
  std::size_t workers = 1;
  int max_iter = 100;
  bool use_certificates = true;
  bool assume_holomorphic_partial = false;
  bool ambient_torus = false;  // partial mode: search the torus of C^n instead of C^I
  bool stop_at_first = false;
};

struct Witness {
  PointC point;
  std::vector<cplx> alpha;
  double residual = 0.0;
  double value_norm = 0.0;
  double sigma_min = 0.0;
  Weight weight;
  std::vector<std::size_t> subset;  // 0-based
  std::size_t face_index = 0;
  std::size_t restart = 0;
};

struct NondegReport {
  NondegMode mode = NondegMode::plain;
  Verdict verdict = Verdict::no_counterexample_found;
  std::vector<Witness> witnesses;
  std::size_t faces_checked = 0;
  std::uint32_t bound = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::optional<StructuralCertificate> certificate;
};

NondegReport refute_nondegeneracy(const MixedMap& F, const NondegOptions& opt = {});
NondegReport refute_strong_nondegeneracy(const MixedMap& F, const NondegOptions& opt = {});
NondegReport refute_partial_nondegeneracy(const MixedMap& F, const NondegOptions& opt = {});
NondegReport refute(const MixedMap& F, NondegMode mode, const NondegOptions& opt = {});

// Independent check of a candidate witness: recomputes faces and derivatives from F.
struct WitnessCheck {
  bool accepted = false;
  double value_norm = 0.0;
  double sigma_min = 0.0;
  double residual = 0.0;
  std::vector<cplx> alpha;
};
WitnessCheck verify_witness(const MixedMap& F, NondegMode mode, const Weight& P, const std::vector<std::size_t>& subset,
                            const PointC& p, double tol, double torus_guard, bool ambient_torus = false);

struct IcisRadiusProfile {
  double radius = 0.0;
  std::size_t samples = 0;
  std::size_t singular = 0;
  double min_sigma = 0.0;
  double min_sigma_scaled = 0.0;  // divided by r^(d-1) for radially homogeneous maps of degree d
  double acceptance_ratio = 0.0;
  bool sampling_failed = false;
};

struct IcisProbeReport {
  std::string verdict;  // regular_on_samples | refuted | sampling_failure
  std::vector<IcisRadiusProfile> radii;
  std::optional<PointC> singular_point;
  std::uint32_t homogeneous_degree = 0;  // 0 when not radially homogeneous
  std::uint64_t seed = 0;
};

IcisProbeReport icis_probe(const MixedMap& F, const std::vector<double>& radii, std::size_t samples, std::uint64_t seed,
                           std::size_t workers = 1, double tol = 1e-8);

// Common total degree of all terms, or 0.
std::uint32_t radial_homogeneous_degree(const MixedMap& F);

struct LineCheck {
  std::size_t variable = 0;  // 0-based
  int sign = 1;              // xi1 = sign * i * xi2
  bool in_zero_set = false;
  bool in_singular_set = false;
};

struct AlgebraicObstructionReport {
  std::string verdict;  // not_algebraic_icis | inconclusive
  std::vector<PurelyMixedResult> components;
  std::vector<LineCheck> lines;
  bool line_check_passed = false;
};

AlgebraicObstructionReport algebraic_icis_obstruction(const MixedMap& F, bool check_lines = true);

}  // namespace mixsing
