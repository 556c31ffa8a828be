#pragma once

#include <cstdint>
#include <vector>

#include "fraclab/ifs.hpp"

namespace fraclab {

/// One ball of a cylinder cover: the certified enclosure of Λ_w.
struct CoverCell {
  Word word;
  Vec center;
  double radius = 0.0;
  double weight = 0.0;
};

/// Adaptive cover of the attractor by cylinder balls, in lexicographic word
/// order. Every cell ball contains the corresponding cylinder set by
/// construction (invariance of the root ball).
struct CylinderCover {
  Ball root;
  int max_depth = 0;
  std::vector<CoverCell> cells;

  double max_radius() const;
  double total_weight() const;
};

/// Finite weighted point set approximating a self-similar measure. Every
/// point of the attractor (resp. measure support) is within `resolution` of
/// some cloud point.
struct WeightedCloud {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<double> weights;
  double resolution = 0.0;

  std::size_t size() const { return points.size(); }
  /// Convenience accessor for 1-D clouds.
  double value1(std::size_t i) const { return points[i][0]; }
};

/// Subdivides until every leaf radius is <= target_radius. Throws
/// ResourceError (naming the offending depth) if the cell count would exceed
/// the cap, and PreconditionError unless 0 < target_radius.
CylinderCover cylinder_cover(const Ifs& ifs, double target_radius,
                             std::int64_t cell_cap = kDefaultCellCap);

/// Deterministic cloud of cylinder-ball centers with Bernoulli weights;
/// resolution is the maximal cell radius.
WeightedCloud sample_cloud(const Ifs& ifs, double target_radius,
                           std::int64_t cell_cap = kDefaultCellCap);

/// Chaos-game sampling (random orbit). No covering guarantee: resolution is
/// reported as 0. Only used behind an explicit seed in the CLI.
WeightedCloud sample_chaos(const Ifs& ifs, std::int64_t n_points,
                           std::uint64_t seed);

}  // namespace fraclab
