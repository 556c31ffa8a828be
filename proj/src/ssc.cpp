#include "fraclab/ssc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fraclab/error.hpp"

namespace fraclab {

namespace {

struct Node {
  Word word;
  Similitude map;
};

// All length-n composed maps in lexicographic word order.
std::vector<Node> level(const Ifs& ifs, int n) {
  std::vector<Node> cur;
  for (int s = 1; s <= ifs.size(); ++s)
    cur.push_back({Word{{s}}, ifs.maps[static_cast<std::size_t>(s - 1)]});
  for (int d = 1; d < n; ++d) {
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
  return cur;
}

// Strips the longest common prefix; equal composed maps stay equal because
// the prefix map is invertible.
std::pair<Word, Word> strip_common_prefix(const Word& a, const Word& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  Word a2{std::vector<int>(a.symbols.begin() + static_cast<long>(k),
                           a.symbols.end())};
  Word b2{std::vector<int>(b.symbols.begin() + static_cast<long>(k),
                           b.symbols.end())};
  if (b2 < a2) std::swap(a2, b2);
  return {a2, b2};
}

}  // namespace

SscCertificate check_ssc(const Ifs& ifs, int max_depth, double tol_scale,
                         std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (max_depth < 1)
    throw PreconditionError("check_ssc: max_depth must be >= 1");

  const Ball root = bounding_ball(ifs);
  const double tol = tol_scale * root.radius;

  SscCertificate cert;
  cert.persistent_overlap = true;

  // Keep the all-pairs separation scan tractable.
  const std::int64_t level_cap = std::min<std::int64_t>(cell_cap, 20000);

  std::int64_t count = ifs.size();
  for (int depth = 1; depth <= max_depth; ++depth, count *= ifs.size()) {
    if (count > level_cap) break;
    const std::vector<Node> nodes = level(ifs, depth);

    // Exact-overlap scan: sort by translation, then compare within a sliding
    // window on the first coordinate.
    std::vector<std::size_t> order(nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return nodes[a].map.translation[0] < nodes[b].map.translation[0];
    });
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        const Similitude& fa = nodes[order[a]].map;
        const Similitude& fb = nodes[order[b]].map;
        if (fb.translation[0] - fa.translation[0] > tol) break;
        if (std::abs(fa.ratio - fb.ratio) <= tol_scale &&
            dist(fa.translation, fb.translation) <= tol) {
          cert.status = SscStatus::Violated;
          cert.depth = depth;
          cert.witness =
              strip_common_prefix(nodes[order[a]].word, nodes[order[b]].word);
          return cert;
        }
      }
    }

    // Separation scan across distinct first-level cylinders: the minimal gap
    // over all cross pairs decides between Proved and another refinement.
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        if (nodes[i].word[0] == nodes[j].word[0]) continue;
        const double ri = nodes[i].map.ratio * root.radius;
        const double rj = nodes[j].map.ratio * root.radius;
        const double gap =
            dist(nodes[i].map(root.center), nodes[j].map(root.center)) -
            (ri + rj);
        min_gap = std::min(min_gap, gap);
        if (gap < -tol) goto scan_done;  // strict overlap settles this depth
      }
    }
  scan_done:
    const bool separated = min_gap > tol;
    const bool strict_overlap = min_gap < -tol;
    if (separated) {
      cert.status = SscStatus::Proved;
      cert.depth = depth;
      cert.persistent_overlap = false;
      return cert;
    }
    cert.depth = depth;
    cert.persistent_overlap = cert.persistent_overlap && strict_overlap;
  }

  cert.status = SscStatus::Undetermined;
  return cert;
}

}  // namespace fraclab
