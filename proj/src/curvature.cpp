#include "ylab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ylab {

double sectional(double v, const Vec& grad, const SymMatrix& hess, int i, int j) {
  if (i == j) throw PreconditionError("sectional: plane needs two distinct axes");
  if (i < 0 || j < 0 || i >= hess.n || j >= hess.n) throw PreconditionError("sectional: axis out of range");
  return v * hess(i, i) + v * hess(j, j) - dot(grad, grad);
}

SymMatrix ricci(double v, const Vec& grad, const SymMatrix& hess, const Background* background) {
  const int n = hess.n;
  const double g2 = dot(grad, grad);
  SymMatrix r(n);
  const double shift = (n - 2) / 2.0 * g2 + n / 2.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = (n - 2) * v * hess(i, j) - (i == j ? shift : 0.0);
  if (background) {
    const double v2 = v * v;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) r(i, j) += v2 * background->ricci(i, j);
      r(i, i) -= v2 * background->scalar / (2.0 * (n - 1));
    }
  }
  return r;
}

CurvaturePoint curvature_point(const Vec& position, double v, const Vec& grad, const SymMatrix& hess) {
  const int n = hess.n;
  CurvaturePoint p;
  p.position = position;
  p.v = v;
  p.grad = grad;
  p.hess = hess;
  p.ricci_matrix = ricci(v, grad, hess);
  p.ricci_eigenvalues = eigenvalues(p.ricci_matrix);
  p.hess_eigenvalues = eigenvalues(hess);
  const double g2 = dot(grad, grad);
  p.min_sectional = std::numeric_limits<double>::infinity();
  p.max_sectional = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double k = sectional(v, grad, hess, i, j);
      p.min_sectional = std::min(p.min_sectional, k);
      p.max_sectional = std::max(p.max_sectional, k);
    }
  // v > 0, so the extremes over planes come from the two smallest and two
  // largest Hessian eigenvalues
  const Spectrum& e = p.hess_eigenvalues;
  p.min_plane_sectional = v * (e[0] + e[1]) - g2;
  p.max_plane_sectional = v * (e[n - 2] + e[n - 1]) - g2;
  p.laplacian = hess.trace();
  p.residual = v * p.laplacian - n / 2.0 * (g2 - 1.0);
  p.trace_defect = std::abs(p.ricci_matrix.trace() + n * (n - 1.0));
  return p;
}

namespace {

struct Arm {
  double length;
  double value;
  bool inside;  // the lattice neighbor is a non-exterior node
};

Arm arm(const GridField& f, const Domain& domain, std::int64_t node, const Vec& x, int axis, double sign) {
  const std::int64_t j = sign > 0 ? node + f.stride(axis) : node - f.stride(axis);
  if (f.mask[j] != NodeKind::exterior) return {f.h, f.values[j], true};
  return {domain.axis_crossing(x, axis, sign, f.h), 0.0, false};
}

bool usable(const GridField& f, std::int64_t j) { return f.mask[j] != NodeKind::exterior; }

NodeDerivatives derivatives_at(const GridField& f, const Domain& domain, std::int64_t node) {
  const int n = f.n;
  const double h = f.h;
  NodeDerivatives out;
  out.node = node;
  const Vec x = f.position(node);
  out.distance = domain.signed_distance(x);
  out.reported = out.distance >= 2.0 * h;
  out.grad = Vec(n);
  out.hess = SymMatrix(n);
  const double c = f.values[node];
  for (int k = 0; k < n; ++k) {
    const Arm p = arm(f, domain, node, x, k, 1.0);
    const Arm m = arm(f, domain, node, x, k, -1.0);
    if (!p.inside || !m.inside) out.one_sided = true;
    const double a = p.length, b = m.length, den = a * b * (a + b);
    out.grad[k] = (-a * a * m.value + (a * a - b * b) * c + b * b * p.value) / den;
    out.hess(k, k) = (2.0 * a * m.value - 2.0 * (a + b) * c + 2.0 * b * p.value) / den;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t si = f.stride(i), sj = f.stride(j);
      const std::int64_t pp = node + si + sj, pm = node + si - sj, mp = node - si + sj, mm = node - si - sj;
      double vij;
      if (usable(f, pp) && usable(f, pm) && usable(f, mp) && usable(f, mm)) {
        vij = (f.values[pp] - f.values[pm] - f.values[mp] + f.values[mm]) / (4.0 * h * h);
      } else {
        out.one_sided = true;
        double sum = 0.0;
        int quadrants = 0;
        for (int a = -1; a <= 1; a += 2)
          for (int b = -1; b <= 1; b += 2) {
            const std::int64_t ni = node + a * si, nj = node + b * sj, nij = node + a * si + b * sj;
            if (!usable(f, ni) || !usable(f, nj) || !usable(f, nij)) continue;
            sum += a * b * (f.values[nij] - f.values[ni] - f.values[nj] + c) / (h * h);
            ++quadrants;
          }
        vij = quadrants > 0 ? sum / quadrants : 0.0;
      }
      out.hess(i, j) = vij;
      out.hess(j, i) = vij;
    }
  return out;
}

}  // namespace

std::vector<NodeDerivatives> hessian_field(const GridField& v, const Domain& domain, Exec exec) {
  if (domain.dim() != v.n) throw PreconditionError("hessian_field: dimension mismatch");
  std::vector<std::int64_t> nodes;
  for (std::int64_t i = 0; i < v.size(); ++i)
    if (v.mask[i] == NodeKind::interior) nodes.push_back(i);
  std::vector<NodeDerivatives> out(nodes.size());
  const auto m = static_cast<std::int64_t>(nodes.size());
#pragma omp parallel for schedule(dynamic, 256) if (exec == Exec::parallel)
  for (std::int64_t k = 0; k < m; ++k) out[k] = derivatives_at(v, domain, nodes[k]);
  return out;
}

void hessian_from_u(int n, double u, const Vec& grad_u, const SymMatrix& hess_u, double& v, Vec& grad_v,
                    SymMatrix& hess_v) {
  if (!(u > 0.0)) throw PreconditionError("hessian_from_u: u must be positive");
  const double a = -2.0 / (n - 2);
  v = std::pow(u, a);
  grad_v = grad_u * (a * v / u);
  hess_v = SymMatrix(hess_u.n);
  for (int i = 0; i < hess_v.n; ++i)
    for (int j = 0; j < hess_v.n; ++j)
      hess_v(i, j) = a * v * (hess_u(i, j) / u + (a - 1.0) * grad_u[i] * grad_u[j] / (u * u));
}

CurvatureReport curvature_report(const GridField& v, const Domain& domain, std::vector<CurvaturePoint>* points,
                                 Exec exec) {
  const int n = v.n;
  const std::vector<NodeDerivatives> der = hessian_field(v, domain, exec);
  std::vector<std::size_t> src;
  for (std::size_t k = 0; k < der.size(); ++k)
    if (der[k].reported) src.push_back(k);
  std::vector<CurvaturePoint> pts(src.size());
  const auto m = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t k = 0; k < m; ++k) {
    const NodeDerivatives& d = der[src[k]];
    CurvaturePoint p = curvature_point(v.position(d.node), v.values[d.node], d.grad, d.hess);
    p.node = d.node;
    p.distance = d.distance;
    pts[k] = std::move(p);
  }

  CurvatureReport rep;
  rep.domain = domain.describe();
  rep.n = n;
  rep.h = v.h;
  rep.reported_nodes = m;
  if (m == 0) throw PreconditionError("curvature_report: no node at distance >= 2h");
  const double inf = std::numeric_limits<double>::infinity();
  rep.min_ricci = rep.min_sectional = rep.min_plane_sectional = inf;
  rep.max_ricci = rep.max_sectional = rep.max_plane_sectional = rep.max_laplacian = rep.max_hess_eigenvalue = -inf;
  std::int64_t nonneg = 0, above = 0;
  for (const CurvaturePoint& p : pts) {
    if (p.ricci_eigenvalues[n - 1] > rep.max_ricci) {
      rep.max_ricci = p.ricci_eigenvalues[n - 1];
      rep.argmax = p.position;
    }
    if (p.ricci_eigenvalues[0] < rep.min_ricci) {
      rep.min_ricci = p.ricci_eigenvalues[0];
      rep.argmin = p.position;
    }
    if (p.max_sectional > rep.max_sectional) {
      rep.max_sectional = p.max_sectional;
      rep.argmax_sectional = p.position;
    }
    rep.min_sectional = std::min(rep.min_sectional, p.min_sectional);
    rep.min_plane_sectional = std::min(rep.min_plane_sectional, p.min_plane_sectional);
    rep.max_plane_sectional = std::max(rep.max_plane_sectional, p.max_plane_sectional);
    rep.trace_defect_max = std::max(rep.trace_defect_max, p.trace_defect);
    rep.residual_max = std::max(rep.residual_max, std::abs(p.residual));
    rep.max_laplacian = std::max(rep.max_laplacian, p.laplacian);
    rep.max_grad_norm = std::max(rep.max_grad_norm, norm(p.grad));
    rep.max_hess_eigenvalue = std::max(rep.max_hess_eigenvalue, p.hess_eigenvalues[n - 1]);
    rep.max_abs_v = std::max(rep.max_abs_v, std::abs(p.v));
    if (p.max_plane_sectional >= 0.0) ++nonneg;
    if (p.ricci_eigenvalues[n - 1] >= -n / 2.0) ++above;
  }
  rep.fraction_nonnegative_sectional = static_cast<double>(nonneg) / m;
  rep.fraction_ricci_above_half_n = static_cast<double>(above) / m;
  if (points) *points = std::move(pts);
  return rep;
}

AsymptoticsCheck boundary_asymptotics_check(const GridField& v, const Domain& domain, Exec exec) {
  const int n = v.n;
  const std::vector<NodeDerivatives> der = hessian_field(v, domain, exec);
  AsymptoticsCheck out;
  out.shell_inner = v.h;
  out.shell_outer = 4.0 * v.h;
  for (const NodeDerivatives& d : der) {
    if (!(d.distance > out.shell_inner && d.distance < out.shell_outer)) continue;
    const SymMatrix r = ricci(v.values[d.node], d.grad, d.hess);
    const Spectrum e = eigenvalues(r);
    double dev = 0.0;
    for (int k = 0; k < n; ++k) dev = std::max(dev, std::abs(e[k] + (n - 1)));
    ++out.nodes;
    if (dev > out.max_deviation) {
      out.max_deviation = dev;
      out.worst = v.position(d.node);
    }
    out.max_ratio = std::max(out.max_ratio, dev / d.distance);
  }
  if (out.nodes == 0) throw PreconditionError("boundary_asymptotics_check: no interior node with h < d < 4h");
  return out;
}

Mobius Mobius::identity(int n) {
  Mobius m;
  m.center = Vec(n);
  return m;
}

Mobius Mobius::dilation(Vec center, double factor) {
  if (!(factor > 0.0)) throw PreconditionError("Mobius::dilation: factor must be positive");
  Mobius m;
  m.kind = Kind::dilation;
  m.center = center;
  m.scale = factor;
  return m;
}

Mobius Mobius::inversion(Vec center, double radius) {
  if (!(radius > 0.0)) throw PreconditionError("Mobius::inversion: radius must be positive");
  Mobius m;
  m.kind = Kind::inversion;
  m.center = center;
  m.scale = radius;
  return m;
}

Vec Mobius::apply(const Vec& x) const {
  switch (kind) {
    case Kind::identity:
      return x;
    case Kind::dilation:
      return center + scale * (x - center);
    case Kind::inversion: {
      const Vec r = x - center;
      const double r2 = dot(r, r);
      if (r2 == 0.0) throw PreconditionError("Mobius::apply: inversion center has no image");
      return center + (scale * scale / r2) * r;
    }
  }
  return x;
}

Vec Mobius::inverse(const Vec& y) const {
  if (kind == Kind::dilation) return center + (1.0 / scale) * (y - center);
  return apply(y);
}

double Mobius::conformal_factor(const Vec& x) const {
  switch (kind) {
    case Kind::identity:
      return 1.0;
    case Kind::dilation:
      return scale;
    case Kind::inversion: {
      const Vec r = x - center;
      return scale * scale / dot(r, r);
    }
  }
  return 1.0;
}

Ball Mobius::image(const Ball& b) const {
  switch (kind) {
    case Kind::identity:
      return b;
    case Kind::dilation:
      return Ball{center + scale * (b.center - center), scale * b.radius};
    case Kind::inversion: {
      const Vec a = b.center - center;
      const double gap = dot(a, a) - b.radius * b.radius;
      if (!(gap > 0.0)) throw PreconditionError("Mobius::image: inversion center lies in the closed ball, image is unbounded");
      const double s = scale * scale / gap;
      return Ball{center + s * a, s * b.radius};
    }
  }
  return b;
}

double mobius_pushforward(const Mobius& phi, const std::function<double(const Vec&)>& v, const Vec& y) {
  const Vec x = phi.inverse(y);
  return phi.conformal_factor(x) * v(x);
}

GridField mobius_pushforward(const Ball& ball, const std::function<double(const Vec&)>& v, const Mobius& phi, double h,
                             double safety) {
  const Ball img = phi.image(ball);
  const Domain target = Domain::ball(img.center.dim(), img.radius, img.center);
  GridField f = make_grid(target, h, safety);
  const auto m = f.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i)
    if (f.mask[i] != NodeKind::exterior) f.values[i] = mobius_pushforward(phi, v, f.position(i));
  return f;
}

}  // namespace ylab
