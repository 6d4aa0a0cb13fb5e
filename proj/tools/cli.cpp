#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mixsing/certify.hpp"
#include "mixsing/contact.hpp"
#include "mixsing/geometry.hpp"
#include "mixsing/links.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/nondegen.hpp"
#include "mixsing/parser.hpp"
#include "mixsing/sampling.hpp"
#include "mixsing/serialize.hpp"

#ifndef MIXSING_VERSION
#define MIXSING_VERSION "0.0.0"
#endif

namespace mixsing::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSchema = "mixsing.report.v1";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string map_path;
  std::vector<std::string> polys;
  std::size_t nvars = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool timing = false;
  std::string csv;

  std::uint32_t bound = 8;
  std::size_t budget = 64;
  double tol = 1e-8;
  std::string mode = "plain";
  double torus_guard = 1e-3;
  bool ambient_torus = false;
  bool no_certificates = false;
  bool assume_holomorphic_partial = false;

  std::string frame_path;
  std::string a, b;
  std::string t;

  double r = 0.5;
  std::size_t samples = 200;
  bool ambient = false;
  bool on_link = false;
  std::string radii = "1,0.1,0.01";
  std::optional<std::size_t> drop;
  double delta_scale = 0.1;
  double delta_power = 2.0;

  std::string g_src;
  std::string c_schedule;
  std::string projection = "complex";
  std::size_t binding_samples = 0;

  std::string manifest;
};

// ---- input helpers

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

MixedMap load_map(const Config& cfg) {
  if (!cfg.map_path.empty()) {
    if (!cfg.polys.empty()) throw InputError("give either --map or --poly, not both");
    json j = read_json_file(cfg.map_path);
    try {
      return map_from_json(j);
    } catch (const json::exception& e) {
      throw InputError(cfg.map_path + ": " + e.what());
    }
  }
  if (cfg.polys.empty()) throw InputError("a map is required (--map FILE or --poly SRC --nvars N)");
  if (cfg.nvars == 0) throw InputError("--poly needs --nvars");
  return parse_map(cfg.polys, cfg.nvars);
}

json map_echo(const Config& cfg) {
  if (!cfg.map_path.empty()) return cfg.map_path;
  return {{"nvars", cfg.nvars}, {"components", cfg.polys}};
}

ComplexMatrix load_frame(const std::string& path) {
  if (path.empty()) throw InputError("--frame is required");
  json j = read_json_file(path);
  if (j.is_object()) j = j.at("lambda");
  return matrix_from_json(j);
}

std::vector<std::uint32_t> parse_uint_list(const std::string& s, const char* what) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.push_back(std::uint32_t(v));
    } catch (const std::exception&) {
      throw InputError(std::string("bad integer in ") + what + ": '" + tok + "'");
    }
  }
  if (out.empty()) throw InputError(std::string(what) + " is empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string("bad number in ") + what + ": '" + tok + "'");
    }
  }
  return out;
}

// ---- output helpers

json point_json(const PointC& p) {
  json a = json::array();
  for (const auto& z : p) a.push_back({z.real(), z.imag()});
  return a;
}

json complex_vec_json(const std::vector<cplx>& v) { return point_json(v); }

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rational_to_string(q));
  return a;
}

json one_based(const std::vector<std::size_t>& idx) {
  json a = json::array();
  for (auto i : idx) a.push_back(i + 1);
  return a;
}

json certificate_json(const std::optional<StructuralCertificate>& c) {
  if (!c) return nullptr;
  json chain = json::array();
  for (const auto& s : c->chain) chain.push_back({{"rule", s.rule}, {"detail", s.detail}});
  json modes = json::array();
  for (auto m : c->modes) modes.push_back(to_string(m));
  return {{"chain", chain}, {"modes", modes}};
}

json witness_json(const Witness& w) {
  return {{"point", point_json(w.point)},     {"alpha", complex_vec_json(w.alpha)},
          {"residual", w.residual},           {"value_norm", w.value_norm},
          {"sigma_min", w.sigma_min},         {"weight", w.weight},
          {"subset", one_based(w.subset)},    {"face_index", w.face_index},
          {"restart", w.restart}};
}

json nondeg_json(const NondegReport& r) {
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  return {{"mode", to_string(r.mode)},   {"verdict", to_string(r.verdict)},
          {"witnesses", ws},             {"faces_checked", r.faces_checked},
          {"bound", r.bound},            {"budget", r.budget},
          {"seed", r.seed},              {"certificate", certificate_json(r.certificate)}};
}

json dscan_json(const DScanReport& r) {
  return {{"verdict", r.verdict},       {"samples", r.samples},
          {"excluded", r.excluded},     {"min_D", r.min_D},
          {"max_D", r.max_D},           {"violations", r.violations},
          {"acceptance_ratio", r.acceptance_ratio},
          {"radius", r.radius},         {"seed", r.seed}};
}

json radius_probe_json(const RadiusProbeReport& r) {
  json radii = json::array();
  for (const auto& rc : r.radii)
    radii.push_back({{"radius", rc.radius},
                     {"samples", rc.report.samples},
                     {"failures", rc.report.failures},
                     {"min_sigma", rc.report.min_sigma},
                     {"acceptance_ratio", rc.acceptance_ratio},
                     {"sampling_failed", rc.sampling_failed}});
  auto opt = [](const std::optional<double>& v) -> json { return v ? json(*v) : json(nullptr); };
  return {{"radii", radii},
          {"clean_prefix", r.clean_prefix},
          {"r0_estimate", opt(r.r0_estimate)},
          {"r0_upper_bound", opt(r.r0_upper_bound)},
          {"seed", r.seed}};
}

json icis_json(const IcisProbeReport& r) {
  json radii = json::array();
  for (const auto& p : r.radii)
    radii.push_back({{"radius", p.radius},
                     {"samples", p.samples},
                     {"singular", p.singular},
                     {"min_sigma", p.min_sigma},
                     {"min_sigma_scaled", p.min_sigma_scaled},
                     {"acceptance_ratio", p.acceptance_ratio},
                     {"sampling_failed", p.sampling_failed}});
  return {{"verdict", r.verdict},
          {"radii", radii},
          {"singular_point", r.singular_point ? point_json(*r.singular_point) : json(nullptr)},
          {"homogeneous_degree", r.homogeneous_degree},
          {"seed", r.seed}};
}

// CSV point dump: coordinates, residuals, D, dTheta(R_c); blank when not computed.
struct CsvRow {
  PointC p;
  double res_map = NAN, res_sphere = NAN, D = NAN, dtheta = NAN;
};

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  const std::size_t n = rows.empty() ? 0 : rows[0].p.size();
  for (std::size_t j = 0; j < n; ++j) out << "re" << j + 1 << ",im" << j + 1 << ",";
  out << "residual_map,residual_sphere,D,dtheta_Rc\n";
  out << std::setprecision(17);
  auto cell = [&](double v) {
    if (!std::isnan(v)) out << v;
  };
  for (const auto& r : rows) {
    for (const auto& z : r.p) out << z.real() << "," << z.imag() << ",";
    cell(r.res_map);
    out << ",";
    cell(r.res_sphere);
    out << ",";
    cell(r.D);
    out << ",";
    cell(r.dtheta);
    out << "\n";
  }
}

CsvRow residual_row(const MixedMap& F, const PointC& p, double r) {
  CsvRow row;
  row.p = p;
  double s = 0;
  for (const auto& v : evaluate(F, p)) s += std::norm(v);
  row.res_map = std::sqrt(s);
  row.res_sphere = std::abs(norm(p) - r);
  return row;
}

// ---- subcommands

struct Result {
  json config;
  json payload;
};

Result cmd_analyze(const Config& cfg) {
  MixedMap F = load_map(cfg);
  json comps = json::array();
  for (const auto& f : F.components) {
    json support = json::array();
    for (const auto& e : radial_support(f)) support.push_back(e);
    PurelyMixedResult pm = purely_mixed(f);
    json wit = json::array();
    for (const auto& w : pm.witnesses) wit.push_back(w ? json(*w + 1) : json(nullptr));
    comps.push_back({{"source", format_polynomial(f)},
                     {"polynomial", to_json(f)},
                     {"degree", f.is_zero() ? json(nullptr) : json(f.degree())},
                     {"holomorphic", f.is_holomorphic()},
                     {"real_valued", f.is_real_valued()},
                     {"radial_support", support},
                     {"convenient", f.is_zero() ? json(nullptr) : json(is_convenient(f))},
                     {"purely_mixed", pm.purely_mixed},
                     {"purely_mixed_witnesses", wit}});
  }
  AlgebraicObstructionReport alg = algebraic_icis_obstruction(F);
  json lines = json::array();
  for (const auto& l : alg.lines)
    lines.push_back({{"variable", l.variable + 1},
                     {"sign", l.sign},
                     {"in_zero_set", l.in_zero_set},
                     {"in_singular_set", l.in_singular_set}});
  return {{{"map", map_echo(cfg)}},
          {{"nvars", F.nvars},
           {"k", F.k()},
           {"holomorphic", F.is_holomorphic()},
           {"radial_homogeneous_degree", radial_homogeneous_degree(F)},
           {"components", comps},
           {"algebraic_icis", {{"verdict", alg.verdict}, {"line_check_passed", alg.line_check_passed}, {"lines", lines}}},
           {"certificate", certificate_json(certify_structured(F, cfg.assume_holomorphic_partial))}}};
}

Result cmd_faces(const Config& cfg) {
  MixedMap F = load_map(cfg);
  if (cfg.bound < 1) throw InputError("--bound must be >= 1");
  return {{{"map", map_echo(cfg)}, {"bound", cfg.bound}}, to_json(enumerate_weights(F, cfg.bound))};
}

Result cmd_nondeg(const Config& cfg) {
  MixedMap F = load_map(cfg);
  NondegMode mode;
  try {
    mode = mode_from_string(cfg.mode);
  } catch (const std::exception&) {
    throw InputError("unknown mode '" + cfg.mode + "'");
  }
  if (!(cfg.tol > 0) || !(cfg.torus_guard > 0)) throw InputError("tolerances must be positive");
  NondegOptions opt;
  opt.bound = cfg.bound;
  opt.budget = cfg.budget;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  opt.torus_guard = cfg.torus_guard;
  opt.workers = cfg.workers;
  opt.use_certificates = !cfg.no_certificates;
  opt.assume_holomorphic_partial = cfg.assume_holomorphic_partial;
  opt.ambient_torus = cfg.ambient_torus;
  NondegReport rep = refute(F, mode, opt);
  json config = {{"map", map_echo(cfg)},       {"mode", cfg.mode},
                 {"bound", cfg.bound},         {"budget", cfg.budget},
                 {"tol", cfg.tol},             {"torus_guard", cfg.torus_guard},
                 {"ambient_torus", cfg.ambient_torus},
                 {"certificates", !cfg.no_certificates},
                 {"assume_holomorphic_partial", cfg.assume_holomorphic_partial}};
  return {config, nondeg_json(rep)};
}

json admissibility_json(const AdmissibilityReport& a) {
  json fs = json::array();
  for (const auto& f : a.functionals) fs.push_back({{"subset", one_based(f.subset)}, {"functional", rationals_json(f.functional)}});
  return {{"siegel", a.siegel},
          {"weights", a.siegel ? rationals_json(a.weights) : json(nullptr)},
          {"weakly_hyperbolic", a.weakly_hyperbolic},
          {"functionals", fs},
          {"violating_subset", a.violating_subset ? one_based(*a.violating_subset) : json(nullptr)},
          {"admissible", a.admissible()}};
}

Result cmd_siegel(const Config& cfg) {
  SiegelFrame frame(load_frame(cfg.frame_path));
  AdmissibilityReport adm = is_admissible(frame);
  StrongAdmissibilityReport strong = is_strongly_admissible(frame);
  json payload = {{"k", frame.k()},
                  {"n", frame.n()},
                  {"shape_ok", frame.shape_ok()},
                  {"admissibility", admissibility_json(adm)},
                  {"strongly_admissible", strong.strongly_admissible},
                  {"failing_subset", strong.failing_subset ? one_based(*strong.failing_subset) : json(nullptr)},
                  {"map", to_json(build_siegel_map(frame))}};
  return {{{"frame", cfg.frame_path}}, payload};
}

Result cmd_covering(const Config& cfg) {
  MixedMap F = load_map(cfg);
  auto a = parse_uint_list(cfg.a, "--a");
  auto b = parse_uint_list(cfg.b, "--b");
  if (a.size() == 1) a.assign(F.nvars, a[0]);
  if (b.size() == 1) b.assign(F.nvars, b[0]);
  if (a.size() != F.nvars || b.size() != F.nvars) throw InputError("covering exponents must have length nvars");
  MixedCovering phi(a, b);
  MixedMap G = pullback(phi, F);
  return {{{"map", map_echo(cfg)}, {"a", a}, {"b", b}},
          {{"homogeneous", phi.homogeneous()},
           {"pullback", to_json(G)},
           {"certificate", certificate_json(certify_structured(G, cfg.assume_holomorphic_partial))}}};
}

Result cmd_hamm(const Config& cfg) {
  ComplexMatrix lambda = load_frame(cfg.frame_path);
  const std::size_t n = lambda[0].size();
  auto a = parse_uint_list(cfg.a, "--a");
  if (a.size() == 1) a.assign(n, a[0]);
  if (a.size() != n) throw InputError("--a must have one entry per column");
  json config = {{"frame", cfg.frame_path}, {"a", a}};
  MixedMap F = hamm_map(lambda, a);
  MixedMap out = F;
  json payload;
  if (!cfg.b.empty()) {
    auto b = parse_uint_list(cfg.b, "--b");
    if (b.size() == 1) b.assign(n, b[0]);
    if (b.size() != n) throw InputError("--b must have one entry per column");
    config["b"] = b;
    MixedMap G = mixed_hamm_map(lambda, a, b);
    out = G;
    if (!cfg.t.empty()) {
      Rational t = rational_from_string(cfg.t);
      if (t < 0 || t > 1) throw InputError("--t must lie in [0, 1]");
      config["t"] = rational_to_string(t);
      out = hamm_family(G, F, t);
    }
  } else if (!cfg.t.empty()) {
    throw InputError("--t needs --b");
  }
  json minors = json::array();
  bool all_nonzero = true;
  for (const auto& m : maximal_minors(lambda)) {
    minors.push_back({{"columns", one_based(m.columns)}, {"value", to_json(m.value)}});
    all_nonzero = all_nonzero && !m.value.is_zero();
  }
  payload = {{"map", to_json(out)},
             {"minors", minors},
             {"minors_nonzero", all_nonzero},
             {"certificate", certificate_json(certify_structured(out))}};
  return {config, payload};
}

Result cmd_contact_scan(const Config& cfg) {
  MixedMap F = load_map(cfg);
  if (cfg.ambient && cfg.on_link) throw InputError("--on-link and --ambient are exclusive");
  if (!(cfg.r > 0)) throw InputError("--r must be positive");
  DScanOptions opt;
  opt.workers = cfg.workers;
  opt.on_link = !cfg.ambient;
  opt.sigma_tol = cfg.tol;
  DScanReport rep;
  std::size_t n_eff = F.nvars;
  if (cfg.drop) {
    if (*cfg.drop < 1 || *cfg.drop > F.nvars) throw InputError("--drop out of range");
    rep = binding_contact_check(F, *cfg.drop - 1, cfg.r, cfg.samples, cfg.seed, opt);
    n_eff = F.nvars - 1;
  } else {
    rep = holomorphic_like_scan(F, cfg.r, cfg.samples, cfg.seed, opt);
  }
  if (F.nvars < F.k() + 1 || n_eff < F.k() + 1) throw InputError("contact scan needs n >= k + 1");
  json payload = dscan_json(rep);
  payload["normalization_constant"] = normalization_constant(n_eff, F.k());
  json config = {{"map", map_echo(cfg)}, {"r", cfg.r}, {"samples", cfg.samples}, {"on_link", !cfg.ambient},
                 {"tol", cfg.tol}};
  if (cfg.drop) config["drop"] = *cfg.drop;
  if (!cfg.csv.empty()) {
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
      CsvRow row;
      row.p = rep.points[i];
      row.res_sphere = std::abs(norm(row.p) - cfg.r);
      row.D = rep.values[i];
      rows.push_back(row);
    }
    write_csv(cfg.csv, rows);
  }
  return {config, payload};
}

Result cmd_openbook(const Config& cfg) {
  MixedMap G = load_map(cfg);
  if (cfg.g_src.empty()) throw InputError("--g is required");
  MixedPolynomial g = parse_polynomial(cfg.g_src, G.nvars);
  if (!(cfg.r > 0)) throw InputError("--r must be positive");
  std::vector<double> sched = cfg.c_schedule.empty() ? default_c_schedule() : parse_double_list(cfg.c_schedule, "--c");
  OpenBookOptions opt;
  opt.workers = cfg.workers;
  opt.tol = cfg.tol;
  opt.binding_samples = cfg.binding_samples;
  if (cfg.projection == "complex")
    opt.projection = ReebProjection::complex_line;
  else if (cfg.projection == "real")
    opt.projection = ReebProjection::real_span;
  else
    throw InputError("--projection must be complex or real");
  OpenBookReport rep = openbook_scan(G, g, cfg.r, sched, cfg.samples, cfg.seed, opt);
  json steps = json::array();
  for (const auto& s : rep.steps) steps.push_back({{"c", s.c}, {"min_value", s.min_value}});
  json payload = {{"verdict", rep.verdict},
                  {"c_used", rep.c_used ? json(*rep.c_used) : json(nullptr)},
                  {"steps", steps},
                  {"samples", rep.samples},
                  {"excluded_near_binding", rep.excluded_near_binding},
                  {"v1v2_margin", rep.samples ? json(rep.min_v1_minus_v2) : json(nullptr)},
                  {"v1_dominates", rep.v1_dominates},
                  {"identity_max_error", rep.identity_max_error},
                  {"eta_estimate", rep.eta ? json(*rep.eta) : json(nullptr)},
                  {"angular_failures", rep.angular_failures},
                  {"rank_failures", rep.rank_failures},
                  {"radius", rep.radius},
                  {"seed", rep.seed}};
  json config = {{"map", map_echo(cfg)},   {"g", format_polynomial(g)},  {"r", cfg.r},
                 {"samples", cfg.samples}, {"c_schedule", sched},       {"projection", cfg.projection},
                 {"binding_samples", cfg.binding_samples}, {"tol", cfg.tol}};
  if (!cfg.csv.empty()) {
    const double c = rep.c_used ? *rep.c_used : (sched.empty() ? 0.0 : sched.back());
    std::vector<CsvRow> rows;
    for (const auto& p : rep.points) {
      CsvRow row = residual_row(G, p, cfg.r);
      row.dtheta = reeb_c_value(g, p, cfg.r, c, opt.projection);
      rows.push_back(row);
    }
    write_csv(cfg.csv, rows);
  }
  return {config, payload};
}

Result cmd_link_sample(const Config& cfg) {
  MixedMap F = load_map(cfg);
  if (!(cfg.r > 0)) throw InputError("--r must be positive");
  SampleOptions so;
  so.workers = cfg.workers;
  LinkSample ls = sample_link(F, cfg.r, cfg.samples, cfg.seed, so);
  json pts = json::array();
  std::vector<CsvRow> rows;
  double max_map = 0, max_sphere = 0;
  for (const auto& p : ls.points) {
    CsvRow row = residual_row(F, p, cfg.r);
    max_map = std::max(max_map, row.res_map);
    max_sphere = std::max(max_sphere, row.res_sphere);
    pts.push_back({{"point", point_json(p)}, {"residual_map", row.res_map}, {"residual_sphere", row.res_sphere}});
    rows.push_back(row);
  }
  write_csv(cfg.csv, rows);
  json payload = {{"verdict", ls.failed() ? "sampling_failure" : "sampled"},
                  {"radius", ls.radius},
                  {"requested", cfg.samples},
                  {"accepted", ls.points.size()},
                  {"attempts", ls.attempts},
                  {"acceptance_ratio", ls.acceptance_ratio},
                  {"max_residual_map", max_map},
                  {"max_residual_sphere", max_sphere},
                  {"points", pts},
                  {"seed", cfg.seed}};
  return {{{"map", map_echo(cfg)}, {"r", cfg.r}, {"samples", cfg.samples}}, payload};
}

Result cmd_transversality(const Config& cfg) {
  MixedMap F = load_map(cfg);
  auto radii = parse_double_list(cfg.radii, "--radii");
  for (double r : radii)
    if (!(r > 0)) throw InputError("radii must be positive");
  RadiusProbeReport rep = transversality_probe(F, radii, cfg.samples, cfg.seed, cfg.workers, cfg.tol);
  json payload = radius_probe_json(rep);
  if (F.nvars > F.k()) payload["icis"] = icis_json(icis_probe(F, radii, cfg.samples, cfg.seed, cfg.workers, cfg.tol));
  return {{{"map", map_echo(cfg)}, {"radii", radii}, {"samples", cfg.samples}, {"tol", cfg.tol}}, payload};
}

Result cmd_milnor(const Config& cfg) {
  MixedMap F = load_map(cfg);
  auto radii = parse_double_list(cfg.radii, "--radii");
  for (double r : radii)
    if (!(r > 0)) throw InputError("radii must be positive");
  if (!(cfg.delta_scale > 0)) throw InputError("--delta-scale must be positive");
  FiberLevel level{cfg.delta_scale, cfg.delta_power};
  RadiusProbeReport rep = milnor_radius_probe(F, radii, cfg.samples, cfg.seed, cfg.workers, cfg.tol, level);
  json payload = radius_probe_json(rep);
  json levels = json::array();
  for (double r : radii) levels.push_back(level.at(r));
  payload["fiber_levels"] = levels;
  return {{{"map", map_echo(cfg)},
           {"radii", radii},
           {"samples", cfg.samples},
           {"tol", cfg.tol},
           {"delta_scale", cfg.delta_scale},
           {"delta_power", cfg.delta_power}},
          payload};
}

// ---- argument parsing

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, have = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      have = true;
    } else if (!quoted && std::isspace(static_cast<unsigned char>(ch))) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur.push_back(ch);
      have = true;
    }
  }
  if (quoted) throw InputError("unterminated quote in manifest line: " + line);
  if (have) out.push_back(cur);
  return out;
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--timing", cfg.timing, "include wall-clock timing in the report");
}

void add_map(CLI::App* sub, Config& cfg) {
  sub->add_option("--map", cfg.map_path, "map JSON file");
  sub->add_option("--poly", cfg.polys, "component source (repeatable)");
  sub->add_option("--nvars", cfg.nvars, "variable count for --poly");
}

void add_scan(CLI::App* sub, Config& cfg) {
  sub->add_option("--r", cfg.r, "sphere radius");
  sub->add_option("--samples", cfg.samples, "sample count");
  sub->add_option("--tol", cfg.tol, "relative rank tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--csv", cfg.csv, "write a CSV point dump");
}

int run_batch(const Config& cfg, std::ostream& out, std::ostream& err, const json& outer_config,
              std::chrono::steady_clock::time_point t0);

json base_report(const std::string& sub, const json& config, std::uint64_t seed, const json& payload) {
  return {{"toolkit", "mixsing"}, {"version", MIXSING_VERSION}, {"schema", kSchema}, {"subcommand", sub},
          {"config", config},     {"seed", seed},               {"payload", payload}};
}

}  // namespace

std::vector<std::vector<std::string>> read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw InputError("cannot open manifest " + manifest.string());
  const fs::path base = manifest.parent_path();
  std::vector<std::vector<std::string>> items;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
      const std::string& opt = toks[i];
      if (opt == "--map" || opt == "--frame" || opt == "--csv") {
        fs::path p(toks[i + 1]);
        if (p.is_relative()) toks[i + 1] = (base / p).lexically_normal().string();
      }
    }
    items.push_back(std::move(toks));
  }
  return items;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Config cfg;
  CLI::App app{"Mixed polynomial singularity toolkit", "mixsing"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", MIXSING_VERSION);

  auto* analyze = app.add_subcommand("analyze", "supports, convenience, purely mixed terms, certificates");
  add_map(analyze, cfg);
  add_common(analyze, cfg);
  analyze->add_flag("--assume-holomorphic-partial", cfg.assume_holomorphic_partial);

  auto* faces = app.add_subcommand("faces", "weight classes and face functions");
  add_map(faces, cfg);
  add_common(faces, cfg);
  faces->add_option("--bound", cfg.bound, "weight box bound");

  auto* nondeg = app.add_subcommand("nondeg", "search for non-degeneracy counterexamples");
  add_map(nondeg, cfg);
  add_common(nondeg, cfg);
  nondeg->add_option("--mode", cfg.mode, "plain | strong | partial");
  nondeg->add_option("--bound", cfg.bound, "weight box bound");
  nondeg->add_option("--budget", cfg.budget, "restarts per face");
  nondeg->add_option("--tol", cfg.tol, "acceptance tolerance")->check(CLI::PositiveNumber);
  nondeg->add_option("--torus-guard", cfg.torus_guard, "minimum coordinate modulus")->check(CLI::PositiveNumber);
  nondeg->add_flag("--ambient-torus", cfg.ambient_torus, "partial mode: search the torus of C^n");
  nondeg->add_flag("--no-certificates", cfg.no_certificates, "skip structural certificates");
  nondeg->add_flag("--assume-holomorphic-partial", cfg.assume_holomorphic_partial);

  auto* siegel = app.add_subcommand("siegel", "Siegel and admissibility certificates for a frame");
  siegel->add_option("--frame", cfg.frame_path, "frame JSON file")->required();
  add_common(siegel, cfg);

  auto* covering = app.add_subcommand("covering", "pull a map back by a mixed covering");
  add_map(covering, cfg);
  add_common(covering, cfg);
  covering->add_option("--a", cfg.a, "holomorphic exponents, comma separated")->required();
  covering->add_option("--b", cfg.b, "antiholomorphic exponents, comma separated")->required();
  covering->add_flag("--assume-holomorphic-partial", cfg.assume_holomorphic_partial);

  auto* hamm = app.add_subcommand("hamm", "Hamm, mixed Hamm and interpolated maps");
  hamm->add_option("--frame", cfg.frame_path, "coefficient matrix JSON file")->required();
  hamm->add_option("--a", cfg.a, "exponents a")->required();
  hamm->add_option("--b", cfg.b, "exponents b (mixed Hamm)");
  hamm->add_option("--t", cfg.t, "interpolation parameter in [0, 1]");
  add_common(hamm, cfg);

  auto* contact = app.add_subcommand("contact-scan", "sign of the contact determinant on samples");
  add_map(contact, cfg);
  add_common(contact, cfg);
  add_scan(contact, cfg);
  contact->add_flag("--on-link", cfg.on_link, "sample the link (default)");
  contact->add_flag("--ambient", cfg.ambient, "sample the ball instead of the link");
  contact->add_option("--drop", cfg.drop, "restrict to z_i = 0 first (1-based)");

  auto* openbook = app.add_subcommand("openbook-scan", "open book condition along the link");
  add_map(openbook, cfg);
  add_common(openbook, cfg);
  add_scan(openbook, cfg);
  openbook->add_option("--g", cfg.g_src, "angular function source")->required();
  openbook->add_option("--c", cfg.c_schedule, "c schedule, comma separated");
  openbook->add_option("--projection", cfg.projection, "complex | real");
  openbook->add_option("--binding-samples", cfg.binding_samples, "extra samples near the binding");

  auto* link = app.add_subcommand("link-sample", "points of the link");
  add_map(link, cfg);
  add_common(link, cfg);
  add_scan(link, cfg);

  auto* trans = app.add_subcommand("transversality", "transversality of the link at several radii");
  add_map(trans, cfg);
  add_common(trans, cfg);
  add_scan(trans, cfg);
  trans->add_option("--radii", cfg.radii, "radii, comma separated");

  auto* milnor = app.add_subcommand("milnor-probe", "transversality of nearby fibers");
  add_map(milnor, cfg);
  add_common(milnor, cfg);
  add_scan(milnor, cfg);
  milnor->add_option("--radii", cfg.radii, "radii, comma separated");
  milnor->add_option("--delta-scale", cfg.delta_scale, "fiber level is scale * r^power");
  milnor->add_option("--delta-power", cfg.delta_power, "fiber level is scale * r^power");

  auto* batch = app.add_subcommand("batch", "run a manifest of subcommands");
  batch->add_option("manifest", cfg.manifest, "manifest file")->required();
  add_common(batch, cfg);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << MIXSING_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name == "batch") return run_batch(cfg, out, err, {{"manifest", cfg.manifest}}, t0);
    Result res;
    if (name == "analyze") res = cmd_analyze(cfg);
    else if (name == "faces") res = cmd_faces(cfg);
    else if (name == "nondeg") res = cmd_nondeg(cfg);
    else if (name == "siegel") res = cmd_siegel(cfg);
    else if (name == "covering") res = cmd_covering(cfg);
    else if (name == "hamm") res = cmd_hamm(cfg);
    else if (name == "contact-scan") res = cmd_contact_scan(cfg);
    else if (name == "openbook-scan") res = cmd_openbook(cfg);
    else if (name == "link-sample") res = cmd_link_sample(cfg);
    else if (name == "transversality") res = cmd_transversality(cfg);
    else if (name == "milnor-probe") res = cmd_milnor(cfg);
    json report = base_report(name, res.config, cfg.seed, res.payload);
    if (cfg.timing)
      report["timing"] = {{"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                          {"workers", cfg.workers}};
    out << report.dump(2) << "\n";
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

namespace {

int run_batch(const Config& cfg, std::ostream& out, std::ostream& err, const json& outer_config,
              std::chrono::steady_clock::time_point t0) {
  auto items = read_manifest(cfg.manifest);
  json results = json::array();
  std::size_t failures = 0;
  for (auto& item : items) {
    if (item[0] == "batch") {
      results.push_back({{"args", item}, {"exit_code", kExitInput}, {"error", "nested batch is not allowed"}});
      ++failures;
      continue;
    }
    std::vector<std::string> args = item;
    if (std::find(args.begin(), args.end(), "--workers") == args.end()) {
      args.push_back("--workers");
      args.push_back(std::to_string(cfg.workers));
    }
    std::ostringstream o, e;
    int code = run(args, o, e);
    json entry = {{"args", item}, {"exit_code", code}};
    if (code == kExitOk) {
      entry["report"] = json::parse(o.str());
    } else {
      std::string msg = e.str();
      while (!msg.empty() && msg.back() == '\n') msg.pop_back();
      entry["error"] = msg;
      err << "batch item failed: " << msg << "\n";
      ++failures;
    }
    results.push_back(std::move(entry));
  }
  json payload = {{"count", items.size()}, {"failures", failures}, {"items", results}};
  json report = base_report("batch", outer_config, cfg.seed, payload);
  if (cfg.timing)
    report["timing"] = {{"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                        {"workers", cfg.workers}};
  out << report.dump(2) << "\n";
  return failures == 0 ? kExitOk : kExitInternal;
}

}  // namespace

}  // namespace mixsing::cli
