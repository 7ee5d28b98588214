#include "ylab/run.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ylab/format.hpp"
#include "ylab/io.hpp"
#include "ylab/radial.hpp"

namespace ylab {

namespace {

using json = nlohmann::ordered_json;

struct Artifacts {
  std::string csv;
  json summary;
  std::string grid;
  std::string nodes;  // per-node curvature CSV, optional
};

void cap_threads() {
  if (const char* env = std::getenv("YLAB_THREADS")) {
    char* end = nullptr;
    const long t = std::strtol(env, &end, 10);
    if (end != env && t > 0) omp_set_num_threads(static_cast<int>(std::min<long>(t, omp_get_num_procs())));
  }
}

SolveOptions grid_options(const RunConfig& cfg) {
  SolveOptions o;
  o.tol = cfg.solver.tol;
  o.coarse_levels = cfg.solver.coarse_levels;
  return o;
}

RadialOptions radial_options(const RunConfig& cfg) {
  RadialOptions o;
  o.nodes = cfg.solver.nodes;
  o.tol = cfg.solver.tol;
  return o;
}

std::string grid_csv(const GridField& f) {
  std::ostringstream os;
  for (int k = 0; k < f.n; ++k) os << 'x' << k << ',';
  os << "v\n";
  for (std::int64_t i = 0; i < f.size(); ++i) {
    if (f.mask[i] != NodeKind::interior) continue;
    const Vec p = f.position(i);
    for (int k = 0; k < f.n; ++k) os << fmt17(p[k]) << ',';
    os << fmt17(f.values[i]) << '\n';
  }
  return os.str();
}

std::string grid_text(const GridField& f) {
  std::ostringstream os;
  write_grid_field(os, f);
  return os.str();
}

RadialSolution radial_solve(const RunConfig& cfg) {
  const DomainConfig& d = cfg.domain;
  if (d.kind == "ball") return solve_ball(d.n, d.R, cfg.solver.nodes);
  return solve_annulus(d.n, d.r0, d.R, radial_options(cfg));
}

json radial_summary(const RadialSolution& sol, const RadialCurvature& c) {
  json j;
  j["n"] = sol.n;
  j["inner"] = sol.inner;
  j["outer"] = sol.outer;
  j["nodes"] = sol.r.size();
  j["max_v"] = sol.max_value();
  j["v_at_inner"] = sol.v.front();
  j["max_residual"] = sol.max_residual;
  j["max_scaled_residual"] = sol.max_scaled_residual;
  j["newton_iterations"] = sol.newton_iterations;
  j["max_ricci"] = c.max_ricci;
  j["min_ricci"] = c.min_ricci;
  j["argmax_radius"] = c.argmax_radius;
  j["min_sectional"] = c.min_sectional;
  j["max_sectional"] = c.max_sectional;
  json fits = json::array();
  for (const EndpointFit& e : sol.endpoint_data)
    fits.push_back({{"radius", e.radius},
                    {"mean_curvature", e.mean_curvature},
                    {"slope", e.slope},
                    {"quad_coeff", e.quad_coeff},
                    {"expected_quad", e.expected_quad}});
  j["boundary_fits"] = fits;
  return j;
}

std::string curvature_csv(int n, const std::vector<CurvaturePoint>& pts) {
  std::ostringstream os;
  write_curvature_csv(os, n, pts);
  return os.str();
}

int task_solve(const RunConfig& cfg, Artifacts& out, std::ostream& log) {
  const Domain domain = make_domain(cfg.domain);
  if (resolved_path(cfg) == "radial") {
    const RadialSolution sol = radial_solve(cfg);
    const RadialCurvature c = curvature_radial(sol);
    std::ostringstream os;
    write_radial_csv(os, sol, c);
    out.csv = os.str();
    out.summary["radial"] = radial_summary(sol, c);
    log << "radial solve: max v = " << fmt17(sol.max_value()) << ", residual " << fmt17(sol.max_residual) << '\n';
    return kExitPass;
  }
  const double h = default_h(cfg);
  GridField v;
  if (resolved_path(cfg) == "u_truncated") {
    const USolution u = solve_u_truncated(domain, h, cfg.solver.M, grid_options(cfg));
    v = v_from_u(u.field);
    out.summary["solve"] = to_json(u.report);
    out.summary["M"] = cfg.solver.M;
  } else {
    const VSolution s = solve_v(domain, h, grid_options(cfg));
    v = s.field;
    out.summary["solve"] = to_json(s.report);
  }
  double vmax = 0.0;
  for (std::int64_t i = 0; i < v.size(); ++i)
    if (v.mask[i] == NodeKind::interior) vmax = std::max(vmax, v.values[i]);
  out.summary["max_v"] = vmax;
  out.summary["residual"] = residual(v, domain);
  out.csv = grid_csv(v);
  if (cfg.output.grid) out.grid = grid_text(v);
  if (cfg.output.per_node && resolved_path(cfg) == "grid") {
    std::vector<CurvaturePoint> pts;
    curvature_report(v, domain, &pts);
    out.nodes = curvature_csv(domain.dim(), pts);
  }
  log << "grid solve at h = " << fmt_short(h) << ": max v = " << fmt17(vmax) << '\n';
  return kExitPass;
}

// trace(Ric) + n(n-1) is (n-2) times the residual; the bound leaves room for it
bool trace_ok(const CurvatureReport& r) { return r.trace_defect_max <= 10.0 * r.residual_max + 5e-3; }

int task_curvature(const RunConfig& cfg, Artifacts& out, std::ostream& log) {
  const Domain domain = make_domain(cfg.domain);
  if (resolved_path(cfg) == "radial") {
    const RadialSolution sol = radial_solve(cfg);
    const RadialCurvature c = curvature_radial(sol);
    std::ostringstream os;
    write_radial_csv(os, sol, c);
    out.csv = os.str();
    out.summary["radial"] = radial_summary(sol, c);
    double defect = 0.0;
    for (double t : c.trace_defect) defect = std::max(defect, t);
    out.summary["trace_defect_max"] = defect;
    log << "max Ricci " << fmt17(c.max_ricci) << " at r = " << fmt17(c.argmax_radius) << '\n';
    return kExitPass;
  }
  const double h = default_h(cfg);
  const VSolution s = solve_v(domain, h, grid_options(cfg));
  std::vector<CurvaturePoint> pts;
  const CurvatureReport rep = curvature_report(s.field, domain, &pts);
  out.csv = curvature_csv(domain.dim(), pts);
  out.summary["solve"] = to_json(s.report);
  out.summary["curvature"] = to_json(rep);
  out.summary["asymptotics"] = to_json(boundary_asymptotics_check(s.field, domain));
  const bool ok = trace_ok(rep);
  out.summary["trace_identity_pass"] = ok;
  if (cfg.output.grid) out.grid = grid_text(s.field);
  log << "Ricci range [" << fmt17(rep.min_ricci) << ", " << fmt17(rep.max_ricci) << "], trace defect "
      << fmt17(rep.trace_defect_max) << (ok ? "" : " (exceeds bound)") << '\n';
  return ok ? kExitPass : kExitViolation;
}

int task_verify_convex(const RunConfig& cfg, Artifacts& out, std::ostream& log) {
  const Domain domain = make_domain(cfg.domain);
  if (domain.classify() != DomainClass::convex) throw PreconditionError("verify-convex needs a convex domain");
  const VSolution s = solve_v(domain, default_h(cfg), grid_options(cfg));
  const ConvexVerdict v = verify_convex(s.field, domain, s.report);
  std::ostringstream os;
  os << "assertion,worst,bound,margin,strict,pass\n";
  for (const Assertion& a : v.assertions)
    os << a.name << ',' << fmt17(a.worst) << ',' << fmt17(a.bound) << ',' << fmt17(a.margin) << ','
       << (a.strict ? 1 : 0) << ',' << (a.pass ? 1 : 0) << '\n';
  out.csv = os.str();
  out.summary["convex"] = to_json(v);
  for (const Assertion& a : v.assertions)
    log << (a.pass ? "ok   " : "FAIL ") << a.name << " worst " << fmt17(a.worst) << " margin " << fmt17(a.margin)
        << '\n';
  if (cfg.output.per_node) {
    std::vector<CurvaturePoint> pts;
    curvature_report(s.field, domain, &pts);
    out.nodes = curvature_csv(domain.dim(), pts);
  }
  if (cfg.output.grid) out.grid = grid_text(s.field);
  return v.pass ? kExitPass : kExitViolation;
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions o;
  o.path = resolved_path(cfg) == "grid" ? ScanPath::grid : ScanPath::radial;
  o.h = cfg.solver.h.value_or(1.0 / 16);
  o.radial = radial_options(cfg);
  o.grid = grid_options(cfg);
  return o;
}

int task_scan(const RunConfig& cfg, Artifacts& out, std::ostream& log) {
  const ScanConfig& sc = cfg.scan;
  const int n = cfg.domain.n;
  const ScanResult res = sc.extend ? extend_annulus_scan(n, sc.r0.front(), sc.R.front(), sc.r0_factor, sc.R_factor,
                                                         sc.max_rows, sc.after, scan_options(cfg))
                                   : scan_annulus(n, sc.r0, sc.R, scan_options(cfg));
  std::ostringstream os;
  write_scan_csv(os, res);
  out.csv = os.str();
  out.summary["scan"] = to_json(res);
  for (const ScanRow& r : res.rows)
    log << "r0 = " << fmt_short(r.r0) << " R = " << fmt_short(r.R) << ": "
        << (r.ok ? "max Ricci " + fmt17(r.max_ricci) : "failed: " + r.error) << '\n';
  if (res.threshold_r0) log << "positive Ricci first seen at r0 = " << fmt_short(*res.threshold_r0) << '\n';
  if (res.failed_rows > 0) return kExitError;
  return res.monotone ? kExitPass : kExitViolation;
}

int task_cap(const RunConfig& cfg, Artifacts& out, std::ostream& log) {
  const CapVerdict c =
      cap_complement_check(cfg.cap.i, cfg.domain.n, cfg.solver.h.value_or(1.0 / 32), cfg.cap.tol, grid_options(cfg));
  std::ostringstream os;
  os << "i,n,h,radius,map_error,min_sectional,max_sectional,min_ricci,max_ricci,tol,pass\n"
     << c.i << ',' << c.n << ',' << fmt17(c.h) << ',' << fmt17(c.radius) << ',' << fmt17(c.map_error) << ','
     << fmt17(c.min_sectional) << ',' << fmt17(c.max_sectional) << ',' << fmt17(c.min_ricci) << ','
     << fmt17(c.max_ricci) << ',' << fmt17(c.tol) << ',' << (c.pass ? 1 : 0) << '\n';
  out.csv = os.str();
  out.summary["cap"] = to_json(c);
  log << "sectional range [" << fmt17(c.min_sectional) << ", " << fmt17(c.max_sectional) << "]\n";
  return c.pass ? kExitPass : kExitViolation;
}

int task_star(const RunConfig& cfg, Artifacts& out, std::ostream& log) {
  StarFamily f;
  f.members = cfg.star.members;
  f.radius = cfg.star.radius;
  f.radius_growth = cfg.star.radius_growth;
  f.sin_half_angle = cfg.star.sin_half_angle;
  f.angle_ratio = cfg.star.angle_ratio;
  const StarScan s = star_scan(f, cfg.solver.h.value_or(1.0 / 6), cfg.star.seed, grid_options(cfg));
  std::ostringstream os;
  write_star_csv(os, s);
  out.csv = os.str();
  out.summary["star"] = to_json(s);
  bool failed = false;
  for (const StarRow& r : s.rows) {
    failed = failed || !r.ok;
    log << r.domain << ": " << (r.ok ? "max Ricci " + fmt17(r.max_ricci) : "failed: " + r.error) << '\n';
  }
  if (failed) return kExitError;
  return s.monotone ? kExitPass : kExitViolation;
}

int task_selftest(Artifacts& out, std::ostream& log) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double value, double bound) {
    const bool pass = value <= bound;
    all = all && pass;
    checks.push_back({{"name", name}, {"value", value}, {"bound", bound}, {"pass", pass}});
    log << (pass ? "PASS " : "FAIL ") << name << ' ' << fmt17(value) << " <= " << fmt_short(bound) << '\n';
  };

  const RadialSolution ball = solve_ball(3, 1.0, 256);
  const RadialCurvature bc = curvature_radial(ball);
  double dev = 0.0;
  for (std::size_t k = 1; k + 1 < ball.r.size(); ++k)
    dev = std::max({dev, std::abs(bc.K_rad_tan[k] + 1.0), std::abs(bc.Ric_rad[k] + 2.0), std::abs(bc.Ric_tan[k] + 2.0)});
  record("radial ball curvature", dev, 1e-10);

  const Domain unit = Domain::ball(3, 1.0);
  const VSolution g = solve_v(unit, 1.0 / 8);
  double err = 0.0;
  for (std::int64_t i = 0; i < g.field.size(); ++i) {
    if (g.field.mask[i] != NodeKind::interior) continue;
    const Vec p = g.field.position(i);
    err = std::max(err, std::abs(g.field.values[i] - (1.0 - dot(p, p)) / 2.0));
  }
  record("grid ball error", err, 1e-8);

  const CurvatureReport cr = curvature_report(g.field, unit);
  record("trace identity", cr.trace_defect_max, 10.0 * cr.residual_max + 5e-3);

  const RadialSolution ann = solve_annulus(3, 0.5, 2.0, RadialOptions{.nodes = 1024});
  record("radial annulus residual", ann.max_scaled_residual, 1e-8);

  RunConfig sample;
  sample.has_domain = true;
  sample.domain.kind = "annulus";
  const ParseResult again = parse_config(serialize(sample));
  record("config round trip", again.ok() && *again.config == sample ? 0.0 : 1.0, 0.0);

  std::ostringstream os;
  os << "check,value,bound,pass\n";
  for (const json& c : checks)
    os << c["name"].get<std::string>() << ',' << fmt17(c["value"].get<double>()) << ','
       << fmt17(c["bound"].get<double>()) << ',' << (c["pass"].get<bool>() ? 1 : 0) << '\n';
  out.csv = os.str();
  out.summary["checks"] = checks;
  return all ? kExitPass : kExitViolation;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw PreconditionError("cannot write " + p.string());
}

}  // namespace

double default_h(const RunConfig& cfg) {
  if (cfg.solver.h) return *cfg.solver.h;
  return make_domain(cfg.domain).diameter() / 64.0;
}

int run(const RunConfig& cfg, std::ostream& log) {
  if (const auto diags = validate(cfg); !diags.empty()) {
    for (const Diagnostic& d : diags) log << "error: " << to_string(d) << '\n';
    return kExitError;
  }
  cap_threads();
  Artifacts out;
  int code = kExitError;
  try {
    if (cfg.task == "solve") code = task_solve(cfg, out, log);
    else if (cfg.task == "curvature") code = task_curvature(cfg, out, log);
    else if (cfg.task == "verify-convex") code = task_verify_convex(cfg, out, log);
    else if (cfg.task == "scan-annulus") code = task_scan(cfg, out, log);
    else if (cfg.task == "cap-check") code = task_cap(cfg, out, log);
    else if (cfg.task == "star-scan") code = task_star(cfg, out, log);
    else code = task_selftest(out, log);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    out.csv.clear();
    out.grid.clear();
    out.nodes.clear();
    out.summary = json{{"error", e.what()}};
    code = kExitError;
  }

  json doc;
  doc["task"] = cfg.task;
  if (cfg.has_domain) doc["domain"] = make_domain(cfg.domain).describe();
  doc["exit_code"] = code;
  doc["verdict"] = code == kExitPass ? "pass" : code == kExitViolation ? "violation" : "error";
  doc.update(out.summary);

  try {
    const std::filesystem::path dir(cfg.output.dir);
    std::filesystem::create_directories(dir);
    const std::string base = cfg.output.prefix;
    for (const std::string& fmt : cfg.output.formats) {
      if (fmt == "csv" && !out.csv.empty()) write_file(dir / (base + ".csv"), out.csv);
      if (fmt == "json") write_file(dir / (base + ".json"), doc.dump(2) + "\n");
    }
    if (!out.grid.empty()) write_file(dir / (base + ".grid"), out.grid);
    if (!out.nodes.empty()) write_file(dir / (base + "_nodes.csv"), out.nodes);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
  log << "verdict: " << doc["verdict"].get<std::string>() << '\n';
  return code;
}

}  // namespace ylab
