#include "ylab/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ylab/format.hpp"

namespace ylab {

void write_grid_field(std::ostream& os, const GridField& f) {
  const int n = f.n;
  os << n << ' ' << fmt17(f.h);
  for (int k = 0; k < n; ++k) os << ' ' << f.dims[k];
  for (int k = 0; k < n; ++k) os << ' ' << fmt17(f.h * static_cast<double>(f.lo[k]));
  os << '\n';
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const auto c = f.coords(i);
    for (int k = 0; k < n; ++k) os << c[k] << ' ';
    os << static_cast<int>(f.mask[i]) << ' ' << fmt17(f.values[i]) << '\n';
  }
}

GridField read_grid_field(std::istream& is) {
  GridField f;
  std::string line;
  if (!std::getline(is, line)) throw PreconditionError("read_grid_field: missing header");
  std::istringstream hs(line);
  if (!(hs >> f.n) || f.n < 1 || f.n > kGridMaxDim) throw PreconditionError("read_grid_field: bad dimension in header");
  if (!(hs >> f.h) || !(f.h > 0.0)) throw PreconditionError("read_grid_field: bad mesh width in header");
  std::int64_t total = 1;
  for (int k = 0; k < f.n; ++k) {
    if (!(hs >> f.dims[k]) || f.dims[k] < 1) throw PreconditionError("read_grid_field: bad dims in header");
    total *= f.dims[k];
  }
  for (int k = 0; k < f.n; ++k) {
    double o;
    if (!(hs >> o)) throw PreconditionError("read_grid_field: bad origin in header");
    f.lo[k] = std::llround(o / f.h);
  }
  f.mask.assign(total, NodeKind::exterior);
  f.values.assign(total, 0.0);
  for (std::int64_t i = 0; i < total; ++i) {
    std::array<std::int64_t, kGridMaxDim> c{};
    int mask;
    double v;
    for (int k = 0; k < f.n; ++k)
      if (!(is >> c[k])) throw PreconditionError("read_grid_field: truncated at node " + std::to_string(i));
    if (!(is >> mask >> v) || mask < 0 || mask > 2)
      throw PreconditionError("read_grid_field: bad record at node " + std::to_string(i));
    if (f.index(c) != i) throw PreconditionError("read_grid_field: nodes out of order at " + std::to_string(i));
    f.mask[i] = static_cast<NodeKind>(mask);
    f.values[i] = v;
  }
  return f;
}

void write_curvature_csv(std::ostream& os, int n, const std::vector<CurvaturePoint>& points) {
  for (int k = 0; k < n; ++k) os << 'x' << k << ',';
  os << "v,grad_norm,laplacian,residual";
  for (int k = 0; k < n; ++k) os << ",ricci_" << k;
  os << ",min_sectional,max_sectional,min_plane_sectional,max_plane_sectional,trace_defect\n";
  for (const CurvaturePoint& p : points) {
    for (int k = 0; k < n; ++k) os << fmt17(p.position[k]) << ',';
    os << fmt17(p.v) << ',' << fmt17(norm(p.grad)) << ',' << fmt17(p.laplacian) << ',' << fmt17(p.residual);
    for (int k = 0; k < n; ++k) os << ',' << fmt17(p.ricci_eigenvalues[k]);
    os << ',' << fmt17(p.min_sectional) << ',' << fmt17(p.max_sectional) << ',' << fmt17(p.min_plane_sectional) << ','
       << fmt17(p.max_plane_sectional) << ',' << fmt17(p.trace_defect) << '\n';
  }
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
  os << "r0,R,ok,max_ricci,min_ricci,min_sectional,max_sectional,residual,argmax_radius,positive\n";
  for (const ScanRow& r : scan.rows)
    os << fmt17(r.r0) << ',' << fmt17(r.R) << ',' << r.ok << ',' << fmt17(r.max_ricci) << ',' << fmt17(r.min_ricci)
       << ',' << fmt17(r.min_sectional) << ',' << fmt17(r.max_sectional) << ',' << fmt17(r.residual) << ','
       << fmt17(r.argmax_radius) << ',' << r.positive << '\n';
}

void write_star_csv(std::ostream& os, const StarScan& scan) {
  os << "member,ok,star_shaped,max_ricci,min_ricci,max_sectional,residual\n";
  for (std::size_t k = 0; k < scan.rows.size(); ++k) {
    const StarRow& r = scan.rows[k];
    os << k << ',' << r.ok << ',' << r.star_shaped << ',' << fmt17(r.max_ricci) << ',' << fmt17(r.min_ricci) << ','
       << fmt17(r.max_sectional) << ',' << fmt17(r.residual) << '\n';
  }
}

using nlohmann::ordered_json;

ordered_json to_json(const Vec& x) {
  ordered_json a = ordered_json::array();
  for (double c : x) a.push_back(c);
  return a;
}

ordered_json to_json(const SolveReport& r, bool with_timing) {
  ordered_json j;
  j["iterations"] = r.iterations;
  j["krylov_iterations"] = r.krylov_iterations;
  j["residual_inf"] = r.residual_inf;
  j["residual_history"] = r.residual_history;
  j["damping"] = r.damping;
  j["h"] = r.h;
  j["unknowns"] = r.unknowns;
  if (with_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

ordered_json to_json(const CurvatureReport& r) {
  ordered_json j;
  j["domain"] = r.domain;
  j["h"] = r.h;
  j["n"] = r.n;
  j["reported_nodes"] = r.reported_nodes;
  j["min_ricci"] = r.min_ricci;
  j["max_ricci"] = r.max_ricci;
  j["argmax"] = to_json(r.argmax);
  j["argmin"] = to_json(r.argmin);
  j["trace_defect_max"] = r.trace_defect_max;
  j["sectional_range"] = {r.min_sectional, r.max_sectional};
  j["plane_sectional_range"] = {r.min_plane_sectional, r.max_plane_sectional};
  j["argmax_sectional"] = to_json(r.argmax_sectional);
  j["residual_max"] = r.residual_max;
  j["max_laplacian"] = r.max_laplacian;
  j["max_grad_norm"] = r.max_grad_norm;
  j["max_hess_eigenvalue"] = r.max_hess_eigenvalue;
  j["fraction_nonnegative_sectional"] = r.fraction_nonnegative_sectional;
  j["fraction_ricci_above_half_n"] = r.fraction_ricci_above_half_n;
  return j;
}

ordered_json to_json(const ConvexVerdict& v) {
  ordered_json j;
  j["domain"] = v.domain;
  j["h"] = v.h;
  j["nodes"] = v.nodes;
  j["pass"] = v.pass;
  j["eps_concave"] = v.eps_concave;
  j["strictness"] = v.strictness;
  ordered_json margins = ordered_json::array();
  for (const Assertion& a : v.assertions) {
    ordered_json m;
    m["name"] = a.name;
    m["worst"] = a.worst;
    m["bound"] = a.bound;
    m["margin"] = a.margin;
    m["strict"] = a.strict;
    m["pass"] = a.pass;
    m["where"] = to_json(a.where);
    margins.push_back(m);
  }
  j["margins"] = margins;
  j["curvature"] = to_json(v.curvature);
  j["solve"] = to_json(v.solve);
  return j;
}

ordered_json to_json(const ScanResult& s) {
  ordered_json j;
  j["family"] = s.family;
  j["n"] = s.n;
  j["path"] = s.path == ScanPath::radial ? "radial" : "grid";
  if (s.path == ScanPath::grid) j["h"] = s.h;
  j["rows"] = s.rows.size();
  j["failed_rows"] = s.failed_rows;
  j["positive_found"] = s.positive_found;
  j["threshold_r0"] = s.threshold_r0 ? ordered_json(*s.threshold_r0) : ordered_json(nullptr);
  j["monotone"] = s.monotone;
  ordered_json maxima = ordered_json::array();
  for (const ScanRow& r : s.rows) maxima.push_back(r.ok ? ordered_json(r.max_ricci) : ordered_json(nullptr));
  j["max_ricci"] = maxima;
  return j;
}

ordered_json to_json(const CapVerdict& c) {
  ordered_json j;
  j["i"] = c.i;
  j["n"] = c.n;
  j["h"] = c.h;
  j["radius"] = c.radius;
  j["map_error"] = c.map_error;
  j["sectional_range"] = {c.min_sectional, c.max_sectional};
  j["ricci_range"] = {c.min_ricci, c.max_ricci};
  j["tol"] = c.tol;
  j["pass"] = c.pass;
  return j;
}

ordered_json to_json(const StarScan& s) {
  ordered_json j;
  j["h"] = s.h;
  ordered_json rows = ordered_json::array();
  for (const StarRow& r : s.rows) {
    ordered_json row;
    row["domain"] = r.domain;
    row["ok"] = r.ok;
    if (!r.ok) row["error"] = r.error;
    row["star_shaped"] = r.star_shaped;
    row["max_ricci"] = r.max_ricci;
    row["min_ricci"] = r.min_ricci;
    row["max_sectional"] = r.max_sectional;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["monotone"] = s.monotone;
  j["positive_found"] = s.positive_found;
  return j;
}

ordered_json to_json(const AsymptoticsCheck& a) {
  ordered_json j;
  j["shell"] = {a.shell_inner, a.shell_outer};
  j["nodes"] = a.nodes;
  j["max_deviation"] = a.max_deviation;
  j["max_ratio"] = a.max_ratio;
  j["worst"] = to_json(a.worst);
  return j;
}

}  // namespace ylab
