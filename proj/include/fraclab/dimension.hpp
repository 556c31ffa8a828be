#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fraclab/cover.hpp"
#include "fraclab/ifs.hpp"
#include "fraclab/maps.hpp"

namespace fraclab {

/// Box-counting data: occupied-cell counts over decreasing scales plus the
/// fitted log-log slope.
struct BoxCountResult {
  std::vector<double> scales;
  std::vector<std::int64_t> counts;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  bool reliable = true;  // r^2 >= 0.99
};

/// Counts occupied cells of the grid scale * Z^d (anchored at `anchor`,
/// default origin) for each scale. Scales must be strictly decreasing with
/// the smallest >= cloud resolution: counting below sample resolution
/// measures the sampling, not the set.
BoxCountResult box_count(const WeightedCloud& cloud,
                         const std::vector<double>& scales,
                         const Vec& anchor = Vec{});

/// Driver: builds a cover at adequate depth, chooses lambda-adic scales
/// lambda^1 .. lambda^(decades+1), and box-counts. Scales whose required
/// cloud would exceed the cell cap are dropped (recorded in caps_hit).
BoxCountResult estimate_set_dimension(const Ifs& ifs, int decades,
                                      std::int64_t cell_cap = kDefaultCellCap,
                                      std::vector<std::string>* caps_hit = nullptr);

/// Scale list base^(k0+1..k0+count) clipped to >= floor_scale.
std::vector<double> adic_scales(double base, int count, double floor_scale);

/// Mass ratios (r, log mu(B_r(x)) / log r) at the given radii (all >= cloud
/// resolution). No limit claim: finitely many scales.
std::vector<std::pair<double, double>> local_dimension(
    const WeightedCloud& cloud, const Vec& x, const std::vector<double>& radii);

/// Data of the exact projected-measure counting bound for a planar
/// homogeneous SSC system whose first-level fixed points span a triangle.
struct Ltech1Certificate {
  std::array<int, 3> triangle_maps{{0, 0, 0}};  // 1-based map indices
  std::array<Vec, 3> triangle;                  // their fixed points
  double kappa = 0.0;       // min over directions of max projected side
  int big_n = 0;            // block length N
  double p_min = 0.0;
  double lambda = 0.0;
  double support_diameter = 0.0;  // certified upper bound 2R
  double bound_c = 0.0;           // log(1 - p_min^N) / (N log lambda)

  struct ZRecord {
    int dir_index = 0;
    double theta = 0.0;
    int point_index = 0;
    int n = 0;
    double z = 0.0;
    double bound = 0.0;  // (1 - p_min^N)^n
  };
  std::vector<ZRecord> records;
  bool inequality_holds = false;  // every z <= bound + 1e-12
};

/// Computes kappa (4096-angle grid plus golden-section refinement), N, the
/// closing bound, and for every test point, direction and n <= n_max the
/// exact mass z_n of projected cylinder intervals meeting the shrinking ball
/// around the projected point. Throws PreconditionError if the designated
/// fixed points are collinear and ResourceError (naming the largest feasible
/// n) if q^(n N) exceeds the cap.
Ltech1Certificate ltech1_certificate(const Ifs& ifs,
                                     const std::vector<Vec>& test_points,
                                     const std::vector<Direction>& directions,
                                     int n_max,
                                     std::int64_t cell_cap = kDefaultCellCap);

/// Largest n with q^(n N) <= cap for the given system (N as in the
/// certificate). Returns 0 if even n = 1 does not fit.
int ltech1_max_feasible_n(const Ifs& ifs, std::int64_t cell_cap);

struct SweepRow {
  Vec direction;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Fibonacci-sphere direction grid; per direction, the box-count slope of
/// the projected system's attractor. Deterministic ordering; rows are
/// independent of the worker count.
std::vector<SweepRow> direction_sweep(const Ifs& ifs, int num_directions,
                                      int decades,
                                      std::int64_t cell_cap = kDefaultCellCap,
                                      int threads = 1);

}  // namespace fraclab
