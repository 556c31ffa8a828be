#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fraclab/cover.hpp"
#include "fraclab/ifs.hpp"
#include "fraclab/vec.hpp"

namespace fraclab {

/// A unit vector in R^d. Construction normalizes and rejects near-zero input.
struct Direction {
  Vec n;

  explicit Direction(const Vec& v);
  int dim() const { return n.dim; }
};

struct PolyTerm {
  double coeff = 0.0;
  std::array<int, 3> expo{{0, 0, 0}};
};

/// A scalar map g: R^d -> R from a fixed catalog, with analytic gradient and
/// Hessian evaluators.
class SmoothMap {
 public:
  enum class Kind { DistanceFrom, Product2, Product3, Linear, Poly };

  static SmoothMap distance_from(const Vec& pin);
  static SmoothMap product2();
  static SmoothMap product3();
  static SmoothMap linear(const Direction& n);
  static SmoothMap polynomial(int dim, std::vector<PolyTerm> terms);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Vec& pin() const { return pin_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat3 hessian(const Vec& x) const;

 private:
  SmoothMap(Kind k, int d) : kind_(k), dim_(d) {}
  Kind kind_;
  int dim_;
  Vec pin_;                     // DistanceFrom pin or Linear direction
  std::vector<PolyTerm> terms_; // Poly only
};

/// Pointwise inner products <p, n>; weights and resolution carried
/// (projection is 1-Lipschitz).
WeightedCloud orthogonal_project_cloud(const WeightedCloud& cloud,
                                       const Direction& n);

/// The 1-D system {ratio_i x + <t_i, n>}; its attractor is π_n(Λ).
Ifs project_ifs(const Ifs& ifs, const Direction& n);

/// Projection of an R^3 system onto the plane with unit normal n, expressed
/// in a deterministic orthonormal basis of the plane.
Ifs project_ifs_plane(const Ifs& ifs, const Direction& normal);

/// x -> x/||x||. Throws DomainError if any point has norm below
/// exclusion_radius; resolution is rescaled by the Lipschitz bound 2/r_min
/// over the sampled points.
WeightedCloud radial_project(const WeightedCloud& cloud,
                             double exclusion_radius = 1e-12);

/// Geodesic projection of a cloud on S^2 to the azimuth angle
/// phi = atan2(y, x) on S^1. Throws DomainError near the poles
/// (|z| > 1 - pole_tol).
WeightedCloud geodesic_project(const WeightedCloud& cloud,
                               double pole_tol = 1e-9);

/// Azimuth coordinate of a planar cloud separated from the origin.
WeightedCloud circle_angle(const WeightedCloud& cloud);

/// Pointwise g values; resolution rescaled by the max gradient norm over the
/// cloud (Lipschitz bound on the sampled region).
WeightedCloud map_image(const SmoothMap& map, const WeightedCloud& cloud);

/// Cartesian product cloud of 1-D factors in lexicographic tuple order,
/// deterministically strided down to at most `cap` tuples.
WeightedCloud product_cloud(const std::vector<WeightedCloud>& factors,
                            std::int64_t cap);

/// Pinned (pin given) or pairwise distance values. Unpinned pairs include
/// the diagonal (distance 0), are strided down to max_pairs in lexicographic
/// pair order, and are deduplicated on a grid of width = cloud resolution.
WeightedCloud distance_set(const WeightedCloud& cloud, const Vec* pin,
                           std::int64_t max_pairs);

/// All products of tuples from 2 or 3 one-dimensional clouds (strided to
/// cap), deduplicated on the image resolution grid. Equals
/// map_image(product2/3, product_cloud(...)) up to that dedup.
WeightedCloud algebraic_product(const std::vector<WeightedCloud>& factors,
                                std::int64_t cap);

/// Deduplicate a 1-D cloud on the grid of the given width anchored at 0;
/// cell representatives are cell centers, weights are accumulated and
/// renormalized. Output order follows ascending cell index.
WeightedCloud dedup_on_grid(const WeightedCloud& cloud, double width);

struct CurvyReport {
  double min_gradient = 0.0;
  double min_curvature = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Minimum over the cloud of ||∇g|| and of the curvature vector
/// (g''_xx g'_y - g''_xy g'_x, g''_xy g'_y - g''_yy g'_x); passes iff both
/// exceed the threshold (default 1e-6 x cloud scale).
CurvyReport curvy_check(const SmoothMap& map, const WeightedCloud& cloud,
                        double threshold = 0.0);

/// Axis-aligned box domain for ray sampling.
struct Box3 {
  Vec lo;
  Vec hi;

  bool contains(const Vec& p) const {
    for (int i = 0; i < p.dim; ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
  static Box3 everything(int d);
};

struct GradientFieldReport {
  double min_gradient = 0.0;          // (1) min ||∇g|| over the cloud
  double max_cross_normalized = 0.0;  // (2) max normalized ||∇_{tx}g x ∇_x g||
  double lmin = 0.0, lmax = 0.0;      // (3) bi-Lipschitz bounds of h_g
  std::int64_t pairs_tested = 0;
  std::int64_t skipped_ray_samples = 0;
  bool pass1 = false, pass2 = false, pass3 = false;
  bool pass() const { return pass1 && pass2 && pass3; }
};

/// Checks the three gradient-field conditions for dimension preservation of
/// g on an R^3 cloud: nonvanishing gradient, ray-alignment of gradients
/// (via the given ray multipliers, samples leaving `domain` are skipped and
/// counted), and empirical bi-Lipschitz bounds of h_g = P3 ∘ ∇g over cloud
/// pairs with spherical separation >= cloud resolution.
GradientFieldReport tmain_condition_check(
    const SmoothMap& map, const WeightedCloud& cloud,
    const std::vector<double>& ray_ts, const Box3& domain,
    double grad_tol = 1e-10, double cross_tol = 1e-10,
    double lmin_threshold = 1e-6, std::int64_t max_pairs = kDefaultCellCap);

}  // namespace fraclab
