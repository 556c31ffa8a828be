#include "fraclab/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fraclab/error.hpp"

namespace fraclab {

Direction::Direction(const Vec& v) {
  const double len = norm(v);
  if (!(len > 1e-15))
    throw DomainError("direction: cannot normalize a (near-)zero vector");
  n = (1.0 / len) * v;
}

SmoothMap SmoothMap::distance_from(const Vec& pin) {
  SmoothMap m(Kind::DistanceFrom, pin.dim);
  m.pin_ = pin;
  return m;
}

SmoothMap SmoothMap::product2() { return SmoothMap(Kind::Product2, 2); }
SmoothMap SmoothMap::product3() { return SmoothMap(Kind::Product3, 3); }

SmoothMap SmoothMap::linear(const Direction& n) {
  SmoothMap m(Kind::Linear, n.dim());
  m.pin_ = n.n;
  return m;
}

SmoothMap SmoothMap::polynomial(int dim, std::vector<PolyTerm> terms) {
  if (dim < 1 || dim > 3)
    throw PreconditionError("polynomial: dimension must be 1, 2 or 3");
  SmoothMap m(Kind::Poly, dim);
  m.terms_ = std::move(terms);
  return m;
}

namespace {

double pow_int(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// d/dx_i of c * prod x_j^{e_j}, as a (coeff, exponents) term.
PolyTerm diff_term(const PolyTerm& t, int i) {
  PolyTerm d = t;
  const int e = t.expo[static_cast<std::size_t>(i)];
  if (e == 0) {
    d.coeff = 0.0;
    return d;
  }
  d.coeff *= e;
  d.expo[static_cast<std::size_t>(i)] = e - 1;
  return d;
}

double eval_terms(const std::vector<PolyTerm>& terms, const Vec& x) {
  double s = 0.0;
  for (const auto& t : terms) {
    if (t.coeff == 0.0) continue;
    double v = t.coeff;
    for (int i = 0; i < 3; ++i)
      v *= pow_int(x.v[static_cast<std::size_t>(i)],
                   t.expo[static_cast<std::size_t>(i)]);
    s += v;
  }
  return s;
}

}  // namespace

double SmoothMap::value(const Vec& x) const {
  switch (kind_) {
    case Kind::DistanceFrom:
      return dist(x, pin_);
    case Kind::Product2:
      return x.x() * x.y();
    case Kind::Product3:
      return x.x() * x.y() * x.z();
    case Kind::Linear:
      return dot(x, pin_);
    case Kind::Poly:
      return eval_terms(terms_, x);
  }
  return 0.0;
}

Vec SmoothMap::gradient(const Vec& x) const {
  switch (kind_) {
    case Kind::DistanceFrom: {
      const Vec d = x - pin_;
      const double r = norm(d);
      if (!(r > 0.0))
        throw DomainError("distance map: gradient undefined at the pin");
      return (1.0 / r) * d;
    }
    case Kind::Product2:
      return Vec(x.y(), x.x());
    case Kind::Product3:
      return Vec(x.y() * x.z(), x.x() * x.z(), x.x() * x.y());
    case Kind::Linear:
      return pin_;
    case Kind::Poly: {
      Vec g = Vec::zero(dim_);
      for (int i = 0; i < dim_; ++i) {
        std::vector<PolyTerm> dterms;
        for (const auto& t : terms_) dterms.push_back(diff_term(t, i));
        g[i] = eval_terms(dterms, x);
      }
      return g;
    }
  }
  return Vec::zero(dim_);
}

Mat3 SmoothMap::hessian(const Vec& x) const {
  Mat3 h;
  switch (kind_) {
    case Kind::DistanceFrom: {
      const Vec d = x - pin_;
      const double r = norm(d);
      if (!(r > 0.0))
        throw DomainError("distance map: Hessian undefined at the pin");
      // (I - u u^T) / r with u = d / r.
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
          h.at(i, j) = ((i == j ? 1.0 : 0.0) - d[i] * d[j] / (r * r)) / r;
      return h;
    }
    case Kind::Product2:
      h.at(0, 1) = h.at(1, 0) = 1.0;
      return h;
    case Kind::Product3:
      h.at(0, 1) = h.at(1, 0) = x.z();
      h.at(0, 2) = h.at(2, 0) = x.y();
      h.at(1, 2) = h.at(2, 1) = x.x();
      return h;
    case Kind::Linear:
      return h;
    case Kind::Poly: {
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
          std::vector<PolyTerm> dd;
          for (const auto& t : terms_) dd.push_back(diff_term(diff_term(t, i), j));
          h.at(i, j) = eval_terms(dd, x);
        }
      return h;
    }
  }
  return h;
}

WeightedCloud orthogonal_project_cloud(const WeightedCloud& cloud,
                                       const Direction& n) {
  if (cloud.dim != n.dim())
    throw PreconditionError("orthogonal projection: dimension mismatch");
  WeightedCloud out;
  out.dim = 1;
  out.weights = cloud.weights;
  out.resolution = cloud.resolution;  // 1-Lipschitz
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points) out.points.push_back(Vec(dot(p, n.n)));
  return out;
}

Ifs project_ifs(const Ifs& ifs, const Direction& n) {
  if (ifs.ambient_dim != n.dim())
    throw PreconditionError("project_ifs: dimension mismatch");
  Ifs out;
  out.ambient_dim = 1;
  out.weights = ifs.weights;
  out.provenance = ifs.provenance;
  out.name = ifs.name;
  for (const auto& m : ifs.maps)
    out.maps.push_back(Similitude{m.ratio, Vec(dot(m.translation, n.n))});
  return out;
}

Ifs project_ifs_plane(const Ifs& ifs, const Direction& normal) {
  if (ifs.ambient_dim != 3 || normal.dim() != 3)
    throw PreconditionError("project_ifs_plane: R^3 system required");
  // Deterministic orthonormal basis of the plane: seed with the coordinate
  // axis least aligned with the normal.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(normal.n[i]) < std::abs(normal.n[k])) k = i;
  Vec e = Vec::zero(3);
  e[k] = 1.0;
  const Vec u = Direction(e - dot(e, normal.n) * normal.n).n;
  const Vec v = cross(normal.n, u);

  Ifs out;
  out.ambient_dim = 2;
  out.weights = ifs.weights;
  out.provenance = ifs.provenance;
  out.name = ifs.name;
  for (const auto& m : ifs.maps)
    out.maps.push_back(
        Similitude{m.ratio, Vec(dot(m.translation, u), dot(m.translation, v))});
  return out;
}

WeightedCloud radial_project(const WeightedCloud& cloud,
                             double exclusion_radius) {
  double r_min = std::numeric_limits<double>::infinity();
  for (const auto& p : cloud.points) r_min = std::min(r_min, norm(p));
  if (!(r_min >= exclusion_radius))
    throw DomainError(
        "radial projection is defined on R^d \\ {0}: a cloud point has norm " +
        std::to_string(r_min) + " below the exclusion radius");
  WeightedCloud out;
  out.dim = cloud.dim;
  out.weights = cloud.weights;
  out.resolution = cloud.resolution * 2.0 / r_min;  // Lipschitz on the sample
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points) out.points.push_back((1.0 / norm(p)) * p);
  return out;
}

WeightedCloud geodesic_project(const WeightedCloud& cloud, double pole_tol) {
  if (cloud.dim != 3)
    throw PreconditionError("geodesic projection expects a cloud on S^2");
  double rho_min = std::numeric_limits<double>::infinity();
  for (const auto& p : cloud.points) {
    const double len = norm(p);
    if (!(len > 0.0))
      throw DomainError("geodesic projection: zero point has no azimuth");
    if (std::abs(p.z()) / len >= 1.0 - pole_tol)
      throw DomainError(
          "geodesic projection is well defined except on the poles; point " +
          to_string(p) + " is within tolerance of a pole");
    rho_min = std::min(rho_min, std::hypot(p.x(), p.y()));
  }
  WeightedCloud out;
  out.dim = 1;
  out.weights = cloud.weights;
  out.resolution = cloud.resolution * M_PI / rho_min;
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points)
    out.points.push_back(Vec(std::atan2(p.y(), p.x())));
  return out;
}

WeightedCloud circle_angle(const WeightedCloud& cloud) {
  if (cloud.dim != 2)
    throw PreconditionError("circle_angle expects a planar cloud");
  double rho_min = std::numeric_limits<double>::infinity();
  for (const auto& p : cloud.points) rho_min = std::min(rho_min, norm(p));
  if (!(rho_min > 0.0))
    throw DomainError("circle_angle: cloud touches the origin");
  WeightedCloud out;
  out.dim = 1;
  out.weights = cloud.weights;
  out.resolution = cloud.resolution * M_PI / rho_min;
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points)
    out.points.push_back(Vec(std::atan2(p.y(), p.x())));
  return out;
}

WeightedCloud map_image(const SmoothMap& map, const WeightedCloud& cloud) {
  if (map.dim() != cloud.dim)
    throw PreconditionError("map_image: dimension mismatch");
  WeightedCloud out;
  out.dim = 1;
  out.weights = cloud.weights;
  out.points.reserve(cloud.size());
  double max_grad = 0.0;
  for (const auto& p : cloud.points) {
    out.points.push_back(Vec(map.value(p)));
    max_grad = std::max(max_grad, norm(map.gradient(p)));
  }
  out.resolution = cloud.resolution * max_grad;
  return out;
}

WeightedCloud product_cloud(const std::vector<WeightedCloud>& factors,
                            std::int64_t cap) {
  if (factors.size() < 2 || factors.size() > 3)
    throw PreconditionError("product cloud: 2 or 3 factors required");
  for (const auto& f : factors) {
    if (f.dim != 1)
      throw PreconditionError("product cloud: factors must be 1-D");
    if (f.points.empty())
      throw PreconditionError("product cloud: empty factor");
  }
  const int d = static_cast<int>(factors.size());
  std::int64_t total = 1;
  for (const auto& f : factors)
    total *= static_cast<std::int64_t>(f.size());
  const std::int64_t stride = total <= cap ? 1 : (total + cap - 1) / cap;

  WeightedCloud out;
  out.dim = d;
  double res2 = 0.0;
  for (const auto& f : factors) res2 += f.resolution * f.resolution;
  out.resolution = std::sqrt(res2);

  double wsum = 0.0;
  for (std::int64_t l = 0; l < total; l += stride) {
    std::int64_t rem = l;
    Vec p = Vec::zero(d);
    double w = 1.0;
    for (int k = d - 1; k >= 0; --k) {
      const auto& f = factors[static_cast<std::size_t>(k)];
      const auto i = static_cast<std::size_t>(
          rem % static_cast<std::int64_t>(f.size()));
      rem /= static_cast<std::int64_t>(f.size());
      p[k] = f.points[i][0];
      w *= f.weights[i];
    }
    out.points.push_back(p);
    out.weights.push_back(w);
    wsum += w;
  }
  for (auto& w : out.weights) w /= wsum;
  return out;
}

WeightedCloud dedup_on_grid(const WeightedCloud& cloud, double width) {
  if (cloud.dim != 1)
    throw PreconditionError("dedup_on_grid: 1-D cloud required");
  if (!(width > 0.0)) return cloud;
  std::map<std::int64_t, double> cells;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    cells[static_cast<std::int64_t>(std::floor(cloud.points[i][0] / width))] +=
        cloud.weights[i];
  WeightedCloud out;
  out.dim = 1;
  out.resolution = cloud.resolution + 0.5 * width;
  double wsum = 0.0;
  for (const auto& [k, w] : cells) wsum += w;
  for (const auto& [k, w] : cells) {
    out.points.push_back(Vec((static_cast<double>(k) + 0.5) * width));
    out.weights.push_back(w / wsum);
  }
  return out;
}

WeightedCloud distance_set(const WeightedCloud& cloud, const Vec* pin,
                           std::int64_t max_pairs) {
  if (cloud.points.empty())
    throw PreconditionError("distance_set: empty cloud");
  WeightedCloud out;
  out.dim = 1;
  if (pin != nullptr) {
    out.resolution = cloud.resolution;  // 1-Lipschitz in y
    out.points.reserve(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      out.points.push_back(Vec(dist(*pin, cloud.points[i])));
      out.weights.push_back(cloud.weights[i]);
    }
    return out;
  }

  const auto n = static_cast<std::int64_t>(cloud.size());
  const std::int64_t total = n * (n + 1) / 2;  // i <= j, diagonal included
  const std::int64_t stride = total <= max_pairs ? 1 : (total + max_pairs - 1) / max_pairs;
  out.resolution = 2.0 * cloud.resolution;  // both endpoints move
  double wsum = 0.0;
  // Walk the lexicographic pair order (i, j >= i) with the given stride.
  std::int64_t i = 0;
  std::int64_t row_start = 0;  // linear index of pair (i, i)
  for (std::int64_t l = 0; l < total; l += stride) {
    while (l >= row_start + (n - i)) {
      row_start += n - i;
      ++i;
    }
    const std::int64_t j = i + (l - row_start);
    const auto ii = static_cast<std::size_t>(i);
    const auto jj = static_cast<std::size_t>(j);
    const double w =
        cloud.weights[ii] * cloud.weights[jj] * (i == j ? 1.0 : 2.0);
    out.points.push_back(Vec(dist(cloud.points[ii], cloud.points[jj])));
    out.weights.push_back(w);
    wsum += w;
  }
  for (auto& w : out.weights) w /= wsum;
  return dedup_on_grid(out, cloud.resolution);
}

WeightedCloud algebraic_product(const std::vector<WeightedCloud>& factors,
                                std::int64_t cap) {
  const WeightedCloud grid = product_cloud(factors, cap);
  const SmoothMap g =
      factors.size() == 2 ? SmoothMap::product2() : SmoothMap::product3();
  const WeightedCloud image = map_image(g, grid);
  return dedup_on_grid(image, image.resolution);
}

CurvyReport curvy_check(const SmoothMap& map, const WeightedCloud& cloud,
                        double threshold) {
  if (cloud.dim != 2 || map.dim() != 2)
    throw PreconditionError("curvy_check: planar map and cloud required");
  CurvyReport rep;
  rep.min_gradient = std::numeric_limits<double>::infinity();
  rep.min_curvature = std::numeric_limits<double>::infinity();
  double scale = cloud.resolution;
  for (const auto& p : cloud.points) {
    scale = std::max(scale, norm(p));
    const Vec g = map.gradient(p);
    const Mat3 h = map.hessian(p);
    const double cx = h.at(0, 0) * g.y() - h.at(0, 1) * g.x();
    const double cy = h.at(0, 1) * g.y() - h.at(1, 1) * g.x();
    rep.min_gradient = std::min(rep.min_gradient, norm(g));
    rep.min_curvature = std::min(rep.min_curvature, std::hypot(cx, cy));
  }
  rep.threshold = threshold > 0.0 ? threshold : 1e-6 * scale;
  rep.pass =
      rep.min_gradient > rep.threshold && rep.min_curvature > rep.threshold;
  return rep;
}

Box3 Box3::everything(int d) {
  Box3 b;
  b.lo = Vec::zero(d);
  b.hi = Vec::zero(d);
  for (int i = 0; i < d; ++i) {
    b.lo[i] = -1e300;
    b.hi[i] = 1e300;
  }
  return b;
}

GradientFieldReport tmain_condition_check(const SmoothMap& map,
                                          const WeightedCloud& cloud,
                                          const std::vector<double>& ray_ts,
                                          const Box3& domain, double grad_tol,
                                          double cross_tol,
                                          double lmin_threshold,
                                          std::int64_t max_pairs) {
  if (cloud.dim != 3 || map.dim() != 3)
    throw PreconditionError("tmain_condition_check: R^3 map and cloud required");
  GradientFieldReport rep;
  rep.min_gradient = std::numeric_limits<double>::infinity();

  std::vector<Vec> sphere;   // P3 of the sample points
  std::vector<Vec> h_field;  // h_g = P3(∇g)
  sphere.reserve(cloud.size());
  h_field.reserve(cloud.size());

  for (const auto& p : cloud.points) {
    const double plen = norm(p);
    if (!(plen > 1e-12))
      throw DomainError("tmain_condition_check: cloud touches the origin");
    const Vec g = map.gradient(p);
    const double glen = norm(g);
    rep.min_gradient = std::min(rep.min_gradient, glen);
    sphere.push_back((1.0 / plen) * p);
    h_field.push_back(glen > 0.0 ? (1.0 / glen) * g : Vec::zero(3));

    for (double t : ray_ts) {
      const Vec q = t * p;
      if (!domain.contains(q)) {
        ++rep.skipped_ray_samples;
        continue;
      }
      const Vec gq = map.gradient(q);
      const double d = glen * norm(gq);
      const double c = d > 0.0 ? norm(cross(gq, g)) / d : 1.0;
      rep.max_cross_normalized = std::max(rep.max_cross_normalized, c);
    }
  }

  // Empirical bi-Lipschitz bounds of h_g over pairs separated on the sphere.
  const auto n = static_cast<std::int64_t>(cloud.size());
  const std::int64_t total = n * (n - 1) / 2;
  const std::int64_t stride =
      total <= max_pairs ? 1 : (total + max_pairs - 1) / max_pairs;
  rep.lmin = std::numeric_limits<double>::infinity();
  rep.lmax = 0.0;
  std::int64_t i = 0;
  std::int64_t row_start = 0;
  for (std::int64_t l = 0; l < total; l += stride) {
    while (l >= row_start + (n - 1 - i)) {
      row_start += n - 1 - i;
      ++i;
    }
    const std::int64_t j = i + 1 + (l - row_start);
    const auto ii = static_cast<std::size_t>(i);
    const auto jj = static_cast<std::size_t>(j);
    const double sep = dist(sphere[ii], sphere[jj]);
    if (sep < cloud.resolution) continue;
    const double ratio = dist(h_field[ii], h_field[jj]) / sep;
    rep.lmin = std::min(rep.lmin, ratio);
    rep.lmax = std::max(rep.lmax, ratio);
    ++rep.pairs_tested;
  }
  if (rep.pairs_tested == 0) rep.lmin = 0.0;

  rep.pass1 = rep.min_gradient > grad_tol;
  rep.pass2 = rep.max_cross_normalized <= cross_tol;
  rep.pass3 = rep.lmin >= lmin_threshold;
  return rep;
}

}  // namespace fraclab
