#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ylab/config.hpp"
#include "ylab/run.hpp"

namespace {

constexpr const char* kFooter = R"(Config file grammar (--config FILE, flags override it):
  task = "solve"                      # optional, the subcommand wins
  [domain]                            # or: domain = { kind = "annulus", r0 = 0.1, R = 3, n = 3 }
  kind = "ball"                       # ball annulus ellipsoid ball_minus_balls half_space_cap ball_minus_cones
  n = 3
  R = 1.0                             # ball, annulus, ball_minus_balls, half_space_cap, ball_minus_cones
  center = [0, 0, 0]                  # ball, ball_minus_balls, half_space_cap
  r0 = 0.5                            # annulus
  axes = [1, 1.5, 2]                  # ellipsoid
  holes = [[0.3, 0, 0, 0.1]]          # ball_minus_balls, [center..., radius] each
  normal = [0, 0, 1]                  # half_space_cap, with offset and smoothing
  sin_half_angle = 0.2                # ball_minus_cones, with start
  [solver]   path = "auto" | "grid" | "radial" | "u_truncated", h, tol, M, nodes, coarse_levels
  [scan]     r0 = [..], R = [..], extend, r0_factor, R_factor, max_rows, after
  [cap]      i, tol
  [star]     members, radius, radius_growth, sin_half_angle, angle_ratio, seed
  [output]   formats = ["csv", "json"], dir, prefix, per_node, grid
Unknown or duplicate keys are errors.

Artifacts: <dir>/<prefix>.csv, <prefix>.json, <prefix>.grid (--grid-out),
<prefix>_nodes.csv (--per-node). Floats carry 17 significant digits.
Grid format: first line `n h dims[0..n) origin[0..n)`, then one line per
lattice node, axis 0 fastest: `i j k [l] mask v` with mask 0 exterior,
1 cut, 2 interior; node position is origin + h*(i, j, k).

Exit codes: 0 pass, 2 a checked predicate failed, 1 parse or solver error.
YLAB_THREADS caps the number of worker threads.)";

struct Flags {
  std::string config;
  std::optional<std::string> domain, path, out, prefix, holes;
  std::optional<int> n, nodes, coarse_levels, max_rows, after, i, members;
  std::optional<double> h, tol, M, offset, smoothing, sin_half_angle, start, r0_factor, R_factor, cap_tol, radius,
      radius_growth, angle_ratio;
  std::optional<std::uint64_t> seed;
  std::vector<double> R, r0, center, axes, normal;
  std::vector<std::string> formats;
  bool extend = false, per_node = false, grid_out = false, print_config = false;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "config file merged under the flags")->check(CLI::ExistingFile);
  sub->add_option("--domain", f.domain, "domain kind");
  sub->add_option("--n", f.n, "dimension");
  sub->add_option("--R", f.R, "outer radius (a list for scan-annulus)")->delimiter(',');
  sub->add_option("--r0", f.r0, "annulus inner radius (a list for scan-annulus)")->delimiter(',');
  sub->add_option("--center", f.center, "ball center")->delimiter(',');
  sub->add_option("--axes", f.axes, "ellipsoid semi-axes")->delimiter(',');
  sub->add_option("--holes", f.holes, "holes as x,y,z,r;x,y,z,r");
  sub->add_option("--normal", f.normal, "half-space normal")->delimiter(',');
  sub->add_option("--offset", f.offset, "half-space offset");
  sub->add_option("--smoothing", f.smoothing, "corner smoothing radius");
  sub->add_option("--sin-half-angle", f.sin_half_angle, "cone half-angle sine");
  sub->add_option("--start", f.start, "cone start");
  sub->add_option("--path", f.path, "auto, radial, grid or u_truncated");
  sub->add_option("--h", f.h, "mesh width");
  sub->add_option("--tol", f.tol, "solver tolerance");
  sub->add_option("--M", f.M, "truncation level of the u-problem");
  sub->add_option("--nodes", f.nodes, "radial collocation nodes");
  sub->add_option("--coarse-levels", f.coarse_levels, "coarse solves used as the start");
  sub->add_flag("--extend", f.extend, "extend the scan until Ricci turns positive");
  sub->add_option("--r0-factor", f.r0_factor, "r0 multiplier per extended row");
  sub->add_option("--R-factor", f.R_factor, "R multiplier per extended row");
  sub->add_option("--max-rows", f.max_rows, "row limit of an extended scan");
  sub->add_option("--after", f.after, "rows run after the first positive one");
  sub->add_option("--i", f.i, "cap index");
  sub->add_option("--cap-tol", f.cap_tol, "cap curvature tolerance");
  sub->add_option("--members", f.members, "star family size");
  sub->add_option("--radius", f.radius, "star ball radius");
  sub->add_option("--radius-growth", f.radius_growth, "star radius growth");
  sub->add_option("--angle-ratio", f.angle_ratio, "star angle ratio");
  sub->add_option("--seed", f.seed, "seed of the star-shapedness sampler");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--prefix", f.prefix, "artifact file prefix");
  sub->add_option("--format", f.formats, "csv, json")->delimiter(',');
  sub->add_flag("--per-node", f.per_node, "write per-node curvature CSV");
  sub->add_flag("--grid-out", f.grid_out, "write the solved grid field");
  sub->add_flag("--print-config", f.print_config, "print the merged config and exit");
}

std::vector<std::vector<double>> parse_holes(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<double> hole;
    std::stringstream parts(group);
    std::string part;
    while (std::getline(parts, part, ',')) hole.push_back(std::stod(part));
    out.push_back(hole);
  }
  return out;
}

// Applies flags over cfg; returns messages for flags that do not fit.
std::vector<std::string> merge(const Flags& f, const std::string& task, ylab::RunConfig& cfg) {
  std::vector<std::string> errors;
  cfg.task = task;
  const bool scan = task == "scan-annulus";
  const bool star = task == "star-scan";
  auto& d = cfg.domain;
  if (f.domain) {
    if (!cfg.has_domain || d.kind != *f.domain) {
      const int n = d.n;
      d = ylab::DomainConfig();
      d.kind = *f.domain;
      d.n = n;
    }
    cfg.has_domain = true;
  }
  if (f.n) d.n = *f.n;
  auto domain_key = [&](bool given, const char* key) {
    if (!given) return false;
    if (!cfg.has_domain) {
      errors.push_back(std::string("--") + key + " needs a domain (--domain or a [domain] block)");
      return false;
    }
    if (!ylab::domain_key_applies(d.kind, key)) {
      errors.push_back(std::string("--") + key + " does not apply to domain kind '" + d.kind + "'");
      return false;
    }
    return true;
  };
  if (scan) {
    if (!f.r0.empty()) cfg.scan.r0 = f.r0;
    if (!f.R.empty()) cfg.scan.R = f.R;
  } else {
    if (f.r0.size() > 1 || f.R.size() > 1) errors.push_back("lists for --r0 and --R are only accepted by scan-annulus");
    if (star && f.radius) cfg.star.radius = *f.radius;
    if (domain_key(!f.r0.empty(), "r0")) d.r0 = f.r0.front();
    if (domain_key(!f.R.empty(), "R")) d.R = f.R.front();
  }
  if (domain_key(!f.center.empty(), "center")) d.center = f.center;
  if (domain_key(!f.axes.empty(), "axes")) {
    d.axes = f.axes;
    if (!f.n) d.n = static_cast<int>(f.axes.size());
  }
  if (domain_key(f.holes.has_value(), "holes")) {
    try {
      d.holes = parse_holes(*f.holes);
    } catch (const std::exception&) {
      errors.push_back("--holes expects numbers as x,y,z,r;x,y,z,r");
    }
  }
  if (domain_key(!f.normal.empty(), "normal")) d.normal = f.normal;
  if (domain_key(f.offset.has_value(), "offset")) d.offset = *f.offset;
  if (domain_key(f.smoothing.has_value(), "smoothing")) d.smoothing = *f.smoothing;
  if (star) {
    if (f.sin_half_angle) cfg.star.sin_half_angle = *f.sin_half_angle;
  } else if (domain_key(f.sin_half_angle.has_value(), "sin_half_angle")) {
    d.sin_half_angle = *f.sin_half_angle;
  }
  if (domain_key(f.start.has_value(), "start")) d.start = *f.start;

  if (f.path) cfg.solver.path = *f.path;
  if (f.h) cfg.solver.h = *f.h;
  if (f.tol) cfg.solver.tol = *f.tol;
  if (f.M) cfg.solver.M = *f.M;
  if (f.nodes) cfg.solver.nodes = *f.nodes;
  if (f.coarse_levels) cfg.solver.coarse_levels = *f.coarse_levels;
  if (f.extend) cfg.scan.extend = true;
  if (f.r0_factor) cfg.scan.r0_factor = *f.r0_factor;
  if (f.R_factor) cfg.scan.R_factor = *f.R_factor;
  if (f.max_rows) cfg.scan.max_rows = *f.max_rows;
  if (f.after) cfg.scan.after = *f.after;
  if (f.i) cfg.cap.i = *f.i;
  if (f.cap_tol) cfg.cap.tol = *f.cap_tol;
  if (f.members) cfg.star.members = *f.members;
  if (f.radius && !star) errors.push_back("--radius is only accepted by star-scan");
  if (f.radius_growth) cfg.star.radius_growth = *f.radius_growth;
  if (f.angle_ratio) cfg.star.angle_ratio = *f.angle_ratio;
  if (f.seed) cfg.star.seed = *f.seed;
  if (f.out) cfg.output.dir = *f.out;
  if (f.prefix) cfg.output.prefix = *f.prefix;
  if (!f.formats.empty()) cfg.output.formats = f.formats;
  if (f.per_node) cfg.output.per_node = true;
  if (f.grid_out) cfg.output.grid = true;
  return errors;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewner-Nirenberg v-equation solver and curvature laboratory", "ylab"};
  app.footer(kFooter);
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> tasks = {
      {"solve", "solve for v and write the field"},
      {"curvature", "solve and evaluate sectional and Ricci curvature"},
      {"verify-convex", "check the negative-curvature inequalities on a convex domain"},
      {"scan-annulus", "max Ricci eigenvalue over a family of annuli"},
      {"cap-check", "constant curvature on the image of a spherical cap complement"},
      {"star-scan", "max Ricci eigenvalue over a nested star-shaped family in R^4"},
      {"selftest", "quick built-in consistency checks"},
  };
  for (const auto& [name, help] : tasks) add_flags(app.add_subcommand(name, help), flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ylab::kExitError;
  }
  const std::string task = app.get_subcommands().front()->get_name();

  ylab::RunConfig cfg;
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    std::stringstream text;
    text << in.rdbuf();
    const ylab::ParseResult parsed = ylab::parse_config(text.str());
    if (!parsed.ok()) {
      for (const auto& d : parsed.diagnostics) std::cerr << flags.config << ": " << ylab::to_string(d) << '\n';
      return ylab::kExitError;
    }
    cfg = *parsed.config;
  }
  const std::vector<std::string> errors = merge(flags, task, cfg);
  for (const std::string& e : errors) std::cerr << "error: " << e << '\n';
  if (!errors.empty()) return ylab::kExitError;
  if (flags.print_config) {
    for (const auto& d : ylab::validate(cfg)) std::cerr << "error: " << ylab::to_string(d) << '\n';
    std::cout << ylab::serialize(cfg);
    return ylab::validate(cfg).empty() ? ylab::kExitPass : ylab::kExitError;
  }
  return ylab::run(cfg, std::cout);
}
