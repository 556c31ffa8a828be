#include "fraclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraclab/error.hpp"

namespace fraclab {

bool cone_contains(const DoubleCone& cone, const Vec& y) {
  const Vec d = cone.vertex - y;
  return std::abs(dot(d, cone.axis.n)) >=
         std::cos(cone.half_angle) * norm(d) - 1e-15 * norm(d);
}

namespace {

// Jacobi eigenvalue iteration for a symmetric 3x3 matrix; returns the
// eigenvalues in descending order.
std::array<double, 3> symmetric_eigenvalues(Mat3 a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::abs(a.at(0, 1)) + std::abs(a.at(0, 2)) +
                 std::abs(a.at(1, 2));
    if (off < 1e-300) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a.at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Mat3 r;
        for (int i = 0; i < 3; ++i) r.at(i, i) = 1.0;
        r.at(p, p) = c;
        r.at(q, q) = c;
        r.at(p, q) = s;
        r.at(q, p) = -s;
        // a := r^T a r
        Mat3 ar;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) v += a.at(i, k) * r.at(k, j);
            ar.at(i, j) = v;
          }
        Mat3 rar;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k) v += r.at(k, i) * ar.at(k, j);
            rar.at(i, j) = v;
          }
        a = rar;
      }
    }
  }
  std::array<double, 3> ev{{a.at(0, 0), a.at(1, 1), a.at(2, 2)}};
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

}  // namespace

int affine_dimension(const std::vector<Vec>& points, double tol) {
  if (points.empty())
    throw PreconditionError("affine_dimension: at least one point required");
  const int d = points.front().dim;
  Vec mean = Vec::zero(d);
  for (const auto& p : points) mean = mean + p;
  mean = (1.0 / static_cast<double>(points.size())) * mean;

  double spread = 0.0;
  Mat3 cov;
  for (const auto& p : points) {
    const Vec c = p - mean;
    spread = std::max(spread, norm(c));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cov.at(i, j) += c[i] * c[j];
  }
  if (spread == 0.0) return 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      cov.at(i, j) /= static_cast<double>(points.size());

  const auto ev = symmetric_eigenvalues(cov);
  int rank = 0;
  for (int i = 0; i < d; ++i) {
    const double extent = std::sqrt(std::max(0.0, ev[static_cast<std::size_t>(i)]));
    if (extent > tol * spread) ++rank;
  }
  return rank;
}

namespace {

enum class BallCone { Inside, Outside, Straddles };

// Position of the ball B(c, s) relative to the open/closed double cone.
// "Inside" certifies containment in the interior, "Outside" certifies empty
// intersection with the closed cone.
BallCone classify_ball_cone(const DoubleCone& cone, const Vec& c, double s) {
  const Vec u = c - cone.vertex;
  const double dlen = norm(u);
  if (dlen <= s) return BallCone::Straddles;  // ball contains the vertex
  const double cos_t = std::min(1.0, std::abs(dot(u, cone.axis.n)) / dlen);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const double sin_p = s / dlen;
  const double cos_p = std::sqrt(std::max(0.0, 1.0 - sin_p * sin_p));
  const double cos_a = std::cos(cone.half_angle);
  // theta + phi < alpha  <=>  cos(theta + phi) > cos(alpha)
  if (cos_t * cos_p - sin_t * sin_p > cos_a) return BallCone::Inside;
  // theta - phi > alpha  (requires theta > phi)
  if (cos_t < cos_p && cos_t * cos_p + sin_t * sin_p < cos_a)
    return BallCone::Outside;
  return BallCone::Straddles;
}

struct ConeWalk {
  const Ifs* ifs;
  const DoubleCone* cone;
  double r;
  int max_depth;
  Ball root;
  ConeTestResult result;
  bool all_outside = true;

  // Returns true when a witness has been found and the walk can stop.
  bool visit(const Word& word, const Similitude& map, int depth) {
    const Vec c = map(root.center);
    const double s = map.ratio * root.radius;
    const double vdist = dist(c, cone->vertex);

    const bool outside_ball = vdist - s > r;
    const BallCone pos = classify_ball_cone(*cone, c, s);
    if (outside_ball || pos == BallCone::Outside) return false;  // prune

    const bool inside_ball = vdist + s < r;
    if (inside_ball && pos == BallCone::Inside) {
      result.status = ConeTestStatus::NonemptyWitness;
      result.witness = word;
      result.depth = depth;
      return true;
    }
    if (depth == max_depth) {
      all_outside = false;  // survivor at the leaf level: no empty certificate
      return false;
    }
    for (int sy = 1; sy <= ifs->size(); ++sy) {
      Word cw = word;
      cw.symbols.push_back(sy);
      const Similitude child =
          map.after(ifs->maps[static_cast<std::size_t>(sy - 1)]);
      if (visit(cw, child, depth + 1)) return true;
    }
    return false;
  }
};

}  // namespace

ConeTestResult cone_intersect_test(const Ifs& ifs, const DoubleCone& cone,
                                   double r, int depth,
                                   std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (depth < 1) throw PreconditionError("cone_intersect_test: depth >= 1");
  double cells = 1.0;
  for (int i = 0; i < depth; ++i) cells *= ifs.size();
  if (cells > static_cast<double>(cell_cap))
    throw ResourceError("cone_intersect_test: cell cap exceeded at depth " +
                        std::to_string(depth));

  ConeWalk walk;
  walk.ifs = &ifs;
  walk.cone = &cone;
  walk.r = r;
  walk.max_depth = depth;
  walk.root = bounding_ball(ifs);
  Similitude id;
  id.ratio = 1.0;
  id.translation = Vec::zero(ifs.ambient_dim);
  if (walk.visit(Word{}, id, 0)) return walk.result;

  walk.result.depth = depth;
  walk.result.status = walk.all_outside ? ConeTestStatus::EmptyCertified
                                        : ConeTestStatus::Undetermined;
  return walk.result;
}

SeparationReport separation_spectrum(const Ifs& ifs, const Direction& n,
                                     int depth, std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (ifs.ambient_dim != 3)
    throw PreconditionError("separation_spectrum: R^3 system required");
  if (depth < 1) throw PreconditionError("separation_spectrum: depth >= 1");

  const Ball root = bounding_ball(ifs);

  // Depth-first enumeration in lexicographic order.
  struct Node {
    Word word;
    Similitude map;
  };
  std::vector<Node> nodes;
  {
    double cells = 1.0;
    for (int i = 0; i < depth; ++i) cells *= ifs.size();
    if (cells > static_cast<double>(cell_cap))
      throw ResourceError("separation_spectrum: cell cap exceeded at depth " +
                          std::to_string(depth));
    std::vector<Node> cur;
    for (int s = 1; s <= ifs.size(); ++s)
      cur.push_back({Word{{s}}, ifs.maps[static_cast<std::size_t>(s - 1)]});
    for (int d = 1; d < depth; ++d) {
      std::vector<Node> next;
      next.reserve(cur.size() * static_cast<std::size_t>(ifs.size()));
      for (const auto& node : cur)
        for (int s = 1; s <= ifs.size(); ++s) {
          Node child;
          child.word = node.word;
          child.word.symbols.push_back(s);
          child.map = node.map.after(ifs.maps[static_cast<std::size_t>(s - 1)]);
          next.push_back(std::move(child));
        }
      cur = std::move(next);
    }
    nodes = std::move(cur);
  }

  SeparationReport rep;
  rep.direction = n.n;
  rep.depth = depth;
  rep.sin_upper = std::numeric_limits<double>::infinity();
  rep.sin_lower = std::numeric_limits<double>::infinity();

  // Reliability: the cross-cylinder reduction needs separated first-level
  // cylinders.
  for (int i = 1; i <= ifs.size() && rep.reliable; ++i)
    for (int j = i + 1; j <= ifs.size(); ++j) {
      const Similitude& fi = ifs.maps[static_cast<std::size_t>(i - 1)];
      const Similitude& fj = ifs.maps[static_cast<std::size_t>(j - 1)];
      if (dist(fi(root.center), fj(root.center)) <=
          (fi.ratio + fj.ratio) * root.radius) {
        rep.reliable = false;
        break;
      }
    }

  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (nodes[a].word[0] == nodes[b].word[0]) continue;
      const Vec ca = nodes[a].map(root.center);
      const Vec cb = nodes[b].map(root.center);
      const double ra = nodes[a].map.ratio * root.radius;
      const double rb = nodes[b].map.ratio * root.radius;
      const Vec d = ca - cb;
      const double dn = norm(d);
      if (!(dn > 0.0)) continue;
      const double num = norm(cross(n.n, d));
      const double upper = num / dn;
      const double lower = std::max(0.0, (num - ra - rb) / (dn + ra + rb));
      if (upper < rep.sin_upper) {
        rep.sin_upper = upper;
        rep.witness = {nodes[a].word, nodes[b].word};
        rep.witness_value = upper;
      }
      rep.sin_lower = std::min(rep.sin_lower, lower);
    }
  }
  return rep;
}

bool collinearity_check(const Vec& a, const Vec& b, const Vec& c, double tol) {
  const Vec u = b - a;
  const Vec v = c - a;
  return norm(cross(u, v)) <= tol * norm(u) * norm(v);
}

Direction two_to_one_direction(const Ifs& ifs, const Direction& n, int depth,
                               std::int64_t cell_cap) {
  const SeparationReport rep = separation_spectrum(ifs, n, depth, cell_cap);
  const Ball root = bounding_ball(ifs);
  const Vec ca = compose(ifs, rep.witness.first)(root.center);
  const Vec cb = compose(ifs, rep.witness.second)(root.center);
  return Direction(ca - cb);
}

}  // namespace fraclab
