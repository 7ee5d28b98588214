#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ylab/geometry.hpp"

namespace ylab {

struct DomainConfig {
  std::string kind = "ball";  // ball | annulus | ellipsoid | ball_minus_balls | half_space_cap | ball_minus_cones
  int n = 3;
  double R = 1.0;               // ball, annulus outer, cap ball, cones ball
  std::vector<double> center;   // ball, ball_minus_balls, half_space_cap; empty = origin
  double r0 = 0.5;              // annulus
  std::vector<double> axes;     // ellipsoid
  std::vector<std::vector<double>> holes;  // ball_minus_balls: {center..., radius}
  std::vector<double> normal;   // half_space_cap
  double offset = 0.0;
  double smoothing = -1.0;
  double sin_half_angle = 0.2;  // ball_minus_cones
  double start = 1.25;

  bool operator==(const DomainConfig&) const = default;
};

struct SolverConfig {
  std::string path = "auto";  // auto | radial | grid | u_truncated
  std::optional<double> h;    // default diameter / 64
  double tol = 1e-10;
  double M = 1000.0;
  int nodes = 4096;
  int coarse_levels = 0;

  bool operator==(const SolverConfig&) const = default;
};

struct ScanConfig {
  std::vector<double> r0{0.4};
  std::vector<double> R{4.0};
  bool extend = false;
  double r0_factor = 0.5;
  double R_factor = 1.0;
  int max_rows = 12;
  int after = 1;

  bool operator==(const ScanConfig&) const = default;
};

struct CapConfig {
  int i = 2;
  double tol = 5e-3;

  bool operator==(const CapConfig&) const = default;
};

struct StarConfig {
  int members = 4;
  double radius = 1.5;
  double radius_growth = 1.0;
  double sin_half_angle = 0.5;
  double angle_ratio = 0.7;
  std::uint64_t seed = 1;

  bool operator==(const StarConfig&) const = default;
};

struct OutputConfig {
  std::vector<std::string> formats{"csv", "json"};
  std::string dir = ".";
  std::string prefix = "ylab";
  bool per_node = false;  // per-node curvature CSV
  bool grid = false;      // GridField text dump

  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  std::string task = "solve";  // solve | curvature | verify-convex | scan-annulus | cap-check | star-scan | selftest
  bool has_domain = false;
  DomainConfig domain;
  SolverConfig solver;
  ScanConfig scan;
  CapConfig cap;
  StarConfig star;
  OutputConfig output;

  bool operator==(const RunConfig&) const = default;
};

struct Diagnostic {
  int line = 0;    // 1-based, 0 when not tied to a position
  int column = 0;
  std::string message;
};

std::string to_string(const Diagnostic& d);

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return config.has_value(); }
};

// Config text: `key = value` lines, `[section]` headers or inline tables
// `section = { key = value, ... }`, `#` comments. Values are numbers,
// "strings", true/false and [arrays]. Sections: domain, solver, scan, cap,
// star, output; `task` sits at the top. Unknown or duplicate keys, keys
// that do not apply to the domain kind and failed constraints are reported
// with line and column; no config is returned if any diagnostic is raised.
ParseResult parse_config(const std::string& text);

// Checks cross-field constraints of an assembled config (flags merged in).
std::vector<Diagnostic> validate(const RunConfig& cfg);

// Canonical text; parse_config(serialize(c)) reproduces c.
std::string serialize(const RunConfig& cfg);

Domain make_domain(const DomainConfig& d);

// `auto` is radial for scan-annulus and grid for every other task.
std::string resolved_path(const RunConfig& cfg);

// Whether a [domain] key other than `kind` is accepted for that kind.
bool domain_key_applies(const std::string& kind, const std::string& key);

// Closest known key within edit distance 2, or a fixed alias.
std::optional<std::string> suggest_key(const std::string& section, const std::string& key);

}  // namespace ylab
