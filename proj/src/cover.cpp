#include "fraclab/cover.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fraclab/error.hpp"

namespace fraclab {

double CylinderCover::max_radius() const {
  double r = 0.0;
  for (const auto& c : cells) r = std::max(r, c.radius);
  return r;
}

double CylinderCover::total_weight() const {
  double w = 0.0;
  for (const auto& c : cells) w += c.weight;
  return w;
}

namespace {

struct Frame {
  Word word;
  Similitude map;  // composed map of the word (identity at the root)
  double weight;
};

}  // namespace

CylinderCover cylinder_cover(const Ifs& ifs, double target_radius,
                             std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (!(target_radius > 0.0))
    throw PreconditionError("cylinder_cover: target radius must be positive");

  const Ball root = bounding_ball(ifs);
  CylinderCover cover;
  cover.root = root;

  // Depth-first in symbol order produces lexicographic leaf order.
  std::vector<Frame> stack;
  Frame root_frame;
  root_frame.map.ratio = 1.0;
  root_frame.map.translation = Vec::zero(ifs.ambient_dim);
  root_frame.weight = 1.0;
  stack.push_back(root_frame);

  const double uniform = 1.0 / static_cast<double>(ifs.size());
  std::int64_t produced = 0;
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const double radius = f.map.ratio * root.radius;
    if (radius <= target_radius) {
      CoverCell cell;
      cell.word = std::move(f.word);
      cell.center = f.map(root.center);
      cell.radius = radius;
      cell.weight = f.weight;
      cover.max_depth =
          std::max(cover.max_depth, static_cast<int>(cell.word.size()));
      cover.cells.push_back(std::move(cell));
      if (++produced > cell_cap)
        throw ResourceError("cylinder_cover: cell cap " +
                            std::to_string(cell_cap) + " exceeded at depth " +
                            std::to_string(cover.max_depth));
      continue;
    }
    if (produced + static_cast<std::int64_t>(stack.size()) + ifs.size() >
        cell_cap)
      throw ResourceError("cylinder_cover: cell cap " +
                          std::to_string(cell_cap) + " exceeded at depth " +
                          std::to_string(f.word.size() + 1));
    // Push children in reverse so symbol 1 is expanded first.
    for (int s = ifs.size(); s >= 1; --s) {
      Frame child;
      child.word = f.word;
      child.word.symbols.push_back(s);
      child.map = f.map.after(ifs.maps[static_cast<std::size_t>(s - 1)]);
      child.weight =
          f.weight * (ifs.has_weights()
                          ? ifs.weights[static_cast<std::size_t>(s - 1)]
                          : uniform);
      stack.push_back(std::move(child));
    }
  }
  return cover;
}

WeightedCloud sample_cloud(const Ifs& ifs, double target_radius,
                           std::int64_t cell_cap) {
  const CylinderCover cover = cylinder_cover(ifs, target_radius, cell_cap);
  WeightedCloud cloud;
  cloud.dim = ifs.ambient_dim;
  cloud.points.reserve(cover.cells.size());
  cloud.weights.reserve(cover.cells.size());
  for (const auto& cell : cover.cells) {
    cloud.points.push_back(cell.center);
    cloud.weights.push_back(cell.weight);
  }
  cloud.resolution = cover.max_radius();
  return cloud;
}

WeightedCloud sample_chaos(const Ifs& ifs, std::int64_t n_points,
                           std::uint64_t seed) {
  validate_ifs(ifs);
  if (n_points < 1)
    throw PreconditionError("sample_chaos: need at least one point");
  std::mt19937_64 rng(seed);
  std::vector<double> cumulative;
  double acc = 0.0;
  const double uniform = 1.0 / static_cast<double>(ifs.size());
  for (int i = 0; i < ifs.size(); ++i) {
    acc += ifs.has_weights() ? ifs.weights[static_cast<std::size_t>(i)]
                             : uniform;
    cumulative.push_back(acc);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&]() {
    const double u = unit(rng);
    return static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
  };

  Vec x = bounding_ball(ifs).center;
  for (int burn = 0; burn < 64; ++burn) x = ifs.maps[pick()](x);

  WeightedCloud cloud;
  cloud.dim = ifs.ambient_dim;
  cloud.points.reserve(static_cast<std::size_t>(n_points));
  const double w = 1.0 / static_cast<double>(n_points);
  for (std::int64_t i = 0; i < n_points; ++i) {
    x = ifs.maps[pick()](x);
    cloud.points.push_back(x);
    cloud.weights.push_back(w);
  }
  cloud.resolution = 0.0;  // no covering guarantee
  return cloud;
}

}  // namespace fraclab
