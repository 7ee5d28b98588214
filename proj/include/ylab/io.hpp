#pragma once

#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "ylab/analysis.hpp"

namespace ylab {

// Text format of a GridField:
//   line 1:  n h dims[0..n) origin[0..n)
//   then one line per lattice node, axis 0 fastest:  i j k [l] mask v
// mask is 0 exterior, 1 cut, 2 interior; origin is h*lo. Floats use 17
// significant digits. Cut-node metadata is not stored.
void write_grid_field(std::ostream& os, const GridField& field);
GridField read_grid_field(std::istream& is);

// Per-node curvature records: x0..x{n-1},v,grad_norm,laplacian,residual,
// ricci_0..ricci_{n-1},min_sectional,max_sectional,min_plane_sectional,
// max_plane_sectional,trace_defect
void write_curvature_csv(std::ostream& os, int n, const std::vector<CurvaturePoint>& points);

// r0,R,ok,max_ricci,min_ricci,min_sectional,max_sectional,residual,argmax_radius,positive
void write_scan_csv(std::ostream& os, const ScanResult& scan);
void write_star_csv(std::ostream& os, const StarScan& scan);

nlohmann::ordered_json to_json(const Vec& x);
nlohmann::ordered_json to_json(const SolveReport& r, bool with_timing = false);
nlohmann::ordered_json to_json(const CurvatureReport& r);
nlohmann::ordered_json to_json(const ConvexVerdict& v);
nlohmann::ordered_json to_json(const ScanResult& s);
nlohmann::ordered_json to_json(const CapVerdict& c);
nlohmann::ordered_json to_json(const StarScan& s);
nlohmann::ordered_json to_json(const AsymptoticsCheck& a);

}  // namespace ylab
