#include "fraclab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <unordered_set>

#include "fraclab/error.hpp"
#include "fraclab/geometry.hpp"
#include "fraclab/ssc.hpp"

namespace fraclab {

namespace {

struct CellKey {
  std::array<std::int64_t, 3> c;
  bool operator==(const CellKey& o) const { return c == o.c; }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : k.c) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

void fit_loglog(BoxCountResult& r) {
  const std::size_t n = r.scales.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(1.0 / r.scales[i]);
    ys[i] = std::log(static_cast<double>(r.counts[i]));
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double nn = static_cast<double>(n);
  const double denom = nn * sxx - sx * sx;
  if (denom <= 0.0) {
    r.slope = 0.0;
    r.intercept = n ? sy / nn : 0.0;
    r.r_squared = 1.0;
    r.reliable = true;
    return;
  }
  r.slope = (nn * sxy - sx * sy) / denom;
  r.intercept = (sy - r.slope * sx) / nn;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / nn;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = r.slope * xs[i] + r.intercept;
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  r.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  r.reliable = r.r_squared >= 0.99;
}

}  // namespace

BoxCountResult box_count(const WeightedCloud& cloud,
                         const std::vector<double>& scales, const Vec& anchor) {
  if (cloud.points.empty())
    throw PreconditionError("box_count: empty cloud");
  if (scales.empty())
    throw PreconditionError("box_count: at least one scale required");
  for (std::size_t i = 0; i + 1 < scales.size(); ++i)
    if (!(scales[i] > scales[i + 1]))
      throw PreconditionError("box_count: scales must be strictly decreasing");
  if (scales.back() < cloud.resolution)
    throw PreconditionError(
        "box_count: smallest scale " + std::to_string(scales.back()) +
        " is below the cloud resolution " + std::to_string(cloud.resolution) +
        "; counting below sample resolution measures the sampling, not the "
        "set");

  BoxCountResult r;
  r.scales = scales;
  Vec a = anchor.dim == cloud.dim ? anchor : Vec::zero(cloud.dim);
  for (double delta : scales) {
    std::unordered_set<CellKey, CellKeyHash> cells;
    cells.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
      CellKey key{{0, 0, 0}};
      for (int i = 0; i < cloud.dim; ++i)
        key.c[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(std::floor((p[i] - a[i]) / delta));
      cells.insert(key);
    }
    r.counts.push_back(static_cast<std::int64_t>(cells.size()));
  }
  fit_loglog(r);
  return r;
}

std::vector<double> adic_scales(double base, int count, double floor_scale) {
  std::vector<double> scales;
  double s = base;
  for (int k = 0; k < count && s >= floor_scale; ++k, s *= base)
    scales.push_back(s);
  return scales;
}

BoxCountResult estimate_set_dimension(const Ifs& ifs, int decades,
                                      std::int64_t cell_cap,
                                      std::vector<std::string>* caps_hit) {
  validate_ifs(ifs);
  if (decades < 1)
    throw PreconditionError("estimate_set_dimension: decades >= 1");

  double lambda = 0.0;
  for (const auto& m : ifs.maps) lambda = std::max(lambda, m.ratio);
  const Ball root = bounding_ball(ifs);
  const double diam = 2.0 * root.radius;

  // First scale at the coarsest lambda power not exceeding the diameter.
  int k_start = 1;
  if (diam > 0.0 && diam < lambda)
    k_start = std::max(
        1, static_cast<int>(std::ceil(std::log(diam) / std::log(lambda))));

  for (int levels = decades + 1; levels >= 2; --levels) {
    std::vector<double> scales;
    for (int k = 0; k < levels; ++k)
      scales.push_back(std::pow(lambda, k_start + k));
    try {
      const WeightedCloud cloud =
          sample_cloud(ifs, scales.back() / 4.0, cell_cap);
      if (levels < decades + 1 && caps_hit)
        caps_hit->push_back("cell cap reduced scale levels to " +
                            std::to_string(levels));
      return box_count(cloud, scales);
    } catch (const ResourceError&) {
      continue;  // drop the finest scale and retry
    }
  }
  throw ResourceError(
      "estimate_set_dimension: cell cap too small for even two scales");
}

std::vector<std::pair<double, double>> local_dimension(
    const WeightedCloud& cloud, const Vec& x,
    const std::vector<double>& radii) {
  std::vector<std::pair<double, double>> out;
  for (double r : radii) {
    if (r < cloud.resolution)
      throw PreconditionError(
          "local_dimension: radius below cloud resolution");
    double mass = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
      if (dist(cloud.points[i], x) <= r) mass += cloud.weights[i];
    const double ratio =
        mass > 0.0 ? std::log(mass) / std::log(r)
                   : std::numeric_limits<double>::infinity();
    out.emplace_back(r, ratio);
  }
  return out;
}

namespace {

// max of the three projected triangle sides at angle theta.
double side_objective(const std::array<Vec, 3>& sides, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  double m = 0.0;
  for (const auto& v : sides)
    m = std::max(m, std::abs(c * v.x() + s * v.y()));
  return m;
}

double minimize_kappa(const std::array<Vec, 3>& sides) {
  const int grid = 4096;
  double best_theta = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double theta = M_PI * static_cast<double>(i) / grid;
    const double v = side_objective(sides, theta);
    if (v < best) {
      best = v;
      best_theta = theta;
    }
  }
  // Golden-section refinement on the bracketing grid interval.
  const double h = M_PI / grid;
  double a = best_theta - h, b = best_theta + h;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = side_objective(sides, x1), f2 = side_objective(sides, x2);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = side_objective(sides, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = side_objective(sides, x2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

// Exact mass of length-`depth` words whose projected cylinder interval meets
// the closed ball of radius rho around px. Subtree pruning is exact because
// child intervals are nested in parent intervals.
double z_mass(const Ifs& projected, double root_center, double root_radius,
              double px, double rho, int depth) {
  struct Rec {
    const Ifs& ifs;
    double c0, R, px, rho;
    double visit(double ratio, double trans, int remaining, double weight) {
      const double center = trans + ratio * c0;
      const double radius = ratio * R;
      if (std::abs(center - px) > radius + rho) return 0.0;
      if (remaining == 0) return weight;
      double sum = 0.0;
      const double uniform = 1.0 / static_cast<double>(ifs.size());
      for (int s = 1; s <= ifs.size(); ++s) {
        const Similitude& f = ifs.maps[static_cast<std::size_t>(s - 1)];
        const double w =
            ifs.has_weights() ? ifs.weights[static_cast<std::size_t>(s - 1)]
                              : uniform;
        // (current) ∘ f_s: ratio *= f.ratio, trans += ratio * f.trans
        sum += visit(ratio * f.ratio, trans + ratio * f.translation[0],
                     remaining - 1, weight * w);
      }
      return sum;
    }
  };
  Rec rec{projected, root_center, root_radius, px, rho};
  return rec.visit(1.0, 0.0, depth, 1.0);
}

std::array<int, 3> find_triangle(const Ifs& ifs) {
  const int q = ifs.size();
  for (int i = 1; i <= q; ++i)
    for (int j = i + 1; j <= q; ++j)
      for (int k = j + 1; k <= q; ++k) {
        const Vec fi = fixed_point(ifs.maps[static_cast<std::size_t>(i - 1)]);
        const Vec fj = fixed_point(ifs.maps[static_cast<std::size_t>(j - 1)]);
        const Vec fk = fixed_point(ifs.maps[static_cast<std::size_t>(k - 1)]);
        if (!collinearity_check(fi, fj, fk, 1e-9)) return {i, j, k};
      }
  throw PreconditionError(
      "ltech1_certificate: one-symbol fixed points do not form a triangle");
}

int ltech1_block_length(const Ifs& ifs, double kappa, double diam) {
  const double lambda = ifs.maps.front().ratio;
  return std::max(
      1, static_cast<int>(
             std::ceil(std::log(kappa / (4.0 * diam)) / std::log(lambda))));
}

}  // namespace

int ltech1_max_feasible_n(const Ifs& ifs, std::int64_t cell_cap) {
  validate_ifs(ifs);
  const auto tri = find_triangle(ifs);
  std::array<Vec, 3> fp;
  for (int i = 0; i < 3; ++i)
    fp[static_cast<std::size_t>(i)] = fixed_point(
        ifs.maps[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)] - 1)]);
  const std::array<Vec, 3> sides = {fp[1] - fp[0], fp[2] - fp[1],
                                    fp[0] - fp[2]};
  const double kappa = minimize_kappa(sides);
  const int N = ltech1_block_length(ifs, kappa, 2.0 * bounding_ball(ifs).radius);
  int n = 0;
  double words = 1.0;
  for (;;) {
    for (int i = 0; i < N; ++i) words *= ifs.size();
    if (words > static_cast<double>(cell_cap)) break;
    ++n;
  }
  return n;
}

Ltech1Certificate ltech1_certificate(const Ifs& ifs,
                                     const std::vector<Vec>& test_points,
                                     const std::vector<Direction>& directions,
                                     int n_max, std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (ifs.ambient_dim != 2)
    throw PreconditionError("ltech1_certificate: planar system required");
  if (!ifs.homogeneous(1e-9))
    throw PreconditionError("ltech1_certificate: homogeneous system required");
  if (!check_ssc(ifs, 6, 1e-9, cell_cap).proved())
    throw PreconditionError("ltech1_certificate: SSC certificate required");
  if (test_points.empty() || directions.empty())
    throw PreconditionError("ltech1_certificate: need test points and directions");

  Ltech1Certificate cert;
  cert.lambda = ifs.maps.front().ratio;
  cert.triangle_maps = find_triangle(ifs);
  for (int i = 0; i < 3; ++i)
    cert.triangle[static_cast<std::size_t>(i)] = fixed_point(
        ifs.maps[static_cast<std::size_t>(
            cert.triangle_maps[static_cast<std::size_t>(i)] - 1)]);
  const std::array<Vec, 3> sides = {cert.triangle[1] - cert.triangle[0],
                                    cert.triangle[2] - cert.triangle[1],
                                    cert.triangle[0] - cert.triangle[2]};
  cert.kappa = minimize_kappa(sides);

  const Ball root = bounding_ball(ifs);
  cert.support_diameter = 2.0 * root.radius;
  cert.big_n = ltech1_block_length(ifs, cert.kappa, cert.support_diameter);

  cert.p_min = 1.0 / static_cast<double>(ifs.size());
  if (ifs.has_weights())
    cert.p_min = *std::min_element(ifs.weights.begin(), ifs.weights.end());
  const double escape = 1.0 - std::pow(cert.p_min, cert.big_n);
  cert.bound_c = std::log(escape) /
                 (static_cast<double>(cert.big_n) * std::log(cert.lambda));

  const int feasible = ltech1_max_feasible_n(ifs, cell_cap);
  if (n_max > feasible)
    throw ResourceError("ltech1_certificate: q^(nN) exceeds the cell cap; "
                        "largest feasible n is " + std::to_string(feasible));

  cert.inequality_holds = true;
  for (std::size_t di = 0; di < directions.size(); ++di) {
    const Direction& dir = directions[di];
    const Ifs projected = project_ifs(ifs, dir);
    const double c0 = dot(root.center, dir.n);
    for (std::size_t pi = 0; pi < test_points.size(); ++pi) {
      const double px = dot(test_points[pi], dir.n);
      for (int n = 1; n <= n_max; ++n) {
        const int depth = n * cert.big_n;
        const double rho =
            (cert.kappa / 4.0) * std::pow(cert.lambda, depth);
        Ltech1Certificate::ZRecord rec;
        rec.dir_index = static_cast<int>(di);
        rec.theta = std::atan2(dir.n.y(), dir.n.x());
        rec.point_index = static_cast<int>(pi);
        rec.n = n;
        rec.z = z_mass(projected, c0, root.radius, px, rho, depth);
        rec.bound = std::pow(escape, n);
        if (rec.z > rec.bound + 1e-12) cert.inequality_holds = false;
        cert.records.push_back(rec);
      }
    }
  }
  return cert;
}

std::vector<SweepRow> direction_sweep(const Ifs& ifs, int num_directions,
                                      int decades, std::int64_t cell_cap,
                                      int threads) {
  validate_ifs(ifs);
  if (ifs.ambient_dim != 3)
    throw PreconditionError("direction_sweep: R^3 system required");
  if (num_directions < 1)
    throw PreconditionError("direction_sweep: need at least one direction");

  std::vector<Vec> dirs;
  const double ga = M_PI * (3.0 - std::sqrt(5.0));  // Fibonacci sphere
  for (int k = 0; k < num_directions; ++k) {
    const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) /
                               static_cast<double>(num_directions);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = ga * static_cast<double>(k);
    dirs.push_back(Vec(rho * std::cos(phi), rho * std::sin(phi), z));
  }

  std::vector<SweepRow> rows(dirs.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Ifs projected = project_ifs(ifs, Direction(dirs[i]));
      const BoxCountResult bc =
          estimate_set_dimension(projected, decades, cell_cap);
      rows[i] = SweepRow{dirs[i], bc.slope, bc.r_squared};
    }
  };

  const int workers = std::max(1, std::min<int>(threads, 16));
  if (workers == 1 || dirs.size() < 2) {
    work(0, dirs.size());
  } else {
    // Fixed chunking by index: the output is identical for any worker count.
    std::vector<std::future<void>> futures;
    const std::size_t chunk =
        (dirs.size() + static_cast<std::size_t>(workers) - 1) /
        static_cast<std::size_t>(workers);
    for (std::size_t b = 0; b < dirs.size(); b += chunk)
      futures.push_back(std::async(std::launch::async, work, b,
                                   std::min(dirs.size(), b + chunk)));
    for (auto& f : futures) f.get();
  }
  return rows;
}

}  // namespace fraclab
