#include "fraclab/subsystem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fraclab/error.hpp"

namespace fraclab {

namespace {

struct Node {
  Word word;
  Similitude map;
};

// Words whose composed contraction is exactly base^budget, where map i
// contributes exponent k[i]. For homogeneous systems (all k[i] = 1) this is
// the set of length-`budget` words. Lexicographic order.
void enumerate_level(const Ifs& ifs, const std::vector<int>& k, int budget,
                     std::int64_t cap, Node node, int used,
                     std::vector<Node>& out) {
  if (used == budget) {
    if (static_cast<std::int64_t>(out.size()) >= cap)
      throw ResourceError("subsystem: cell cap " + std::to_string(cap) +
                          " exceeded enumerating level " +
                          std::to_string(budget));
    out.push_back(std::move(node));
    return;
  }
  for (int s = 1; s <= ifs.size(); ++s) {
    const int ks = k[static_cast<std::size_t>(s - 1)];
    if (used + ks > budget) continue;
    Node child;
    child.word = node.word;
    child.word.symbols.push_back(s);
    const Similitude& f = ifs.maps[static_cast<std::size_t>(s - 1)];
    child.map = node.word.empty() ? f : node.map.after(f);
    enumerate_level(ifs, k, budget, cap, std::move(child), used + ks, out);
  }
}

std::vector<Node> level_nodes(const Ifs& ifs, const std::vector<int>& k,
                              int budget, std::int64_t cap) {
  std::vector<Node> out;
  Node root;
  root.map.ratio = 1.0;
  root.map.translation = Vec::zero(ifs.ambient_dim);
  enumerate_level(ifs, k, budget, cap, std::move(root), 0, out);
  return out;
}

// Detects a common base lambda0 with ratio_i = lambda0^{k_i} for integer
// k_i >= 1, to relative tolerance 1e-9. Returns {lambda0, k}.
std::pair<double, std::vector<int>> commensurable_base(const Ifs& ifs) {
  double lambda_max = 0.0;
  for (const auto& m : ifs.maps) lambda_max = std::max(lambda_max, m.ratio);
  const double rel_tol = 1e-9;
  for (int a = 1; a <= 16; ++a) {
    const double lambda0 = std::pow(lambda_max, 1.0 / a);
    std::vector<int> k;
    bool ok = true;
    for (const auto& m : ifs.maps) {
      const double e = std::log(m.ratio) / std::log(lambda0);
      const int ke = static_cast<int>(std::lround(e));
      if (ke < 1 || std::abs(e - ke) > rel_tol * std::max(1.0, std::abs(e))) {
        ok = false;
        break;
      }
      k.push_back(ke);
    }
    if (ok) return {lambda0, k};
  }
  throw UnsupportedError(
      "homogenize: contraction ratios are not commensurable (each ratio must "
      "be an integer power of a common base)");
}

// Greedy packing of equal-radius cylinder balls in lexicographic order.
std::vector<std::size_t> greedy_pack(const std::vector<Node>& nodes,
                                     const Ball& root, double tol) {
  std::vector<std::size_t> accepted;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Vec ci = nodes[i].map(root.center);
    const double ri = nodes[i].map.ratio * root.radius;
    bool ok = true;
    for (std::size_t a : accepted) {
      const Vec ca = nodes[a].map(root.center);
      const double ra = nodes[a].map.ratio * root.radius;
      if (dist(ci, ca) <= ri + ra + tol) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(i);
  }
  return accepted;
}

Ifs subsystem_from(const Ifs& parent, const std::vector<Node>& nodes,
                   const std::vector<std::size_t>& take) {
  Ifs out;
  out.ambient_dim = parent.ambient_dim;
  for (std::size_t i : take) {
    out.maps.push_back(nodes[i].map);
    out.provenance.push_back(nodes[i].word);
  }
  if (parent.has_weights()) {
    double sum = 0.0;
    for (std::size_t i : take) sum += word_weight(parent, nodes[i].word);
    for (std::size_t i : take)
      out.weights.push_back(word_weight(parent, nodes[i].word) / sum);
  }
  if (!parent.name.empty()) out.name = parent.name + "'";
  return out;
}

}  // namespace

Ifs iterate(const Ifs& ifs, int n, std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (n < 1) throw PreconditionError("iterate: n must be >= 1");
  double total = 1.0;
  for (int i = 0; i < n; ++i) total *= ifs.size();
  if (total > static_cast<double>(cell_cap))
    throw ResourceError("iterate: q^n = " + std::to_string(total) +
                        " exceeds cell cap " + std::to_string(cell_cap));
  std::vector<int> ones(static_cast<std::size_t>(ifs.size()), 1);
  const std::vector<Node> nodes = level_nodes(ifs, ones, n, cell_cap);

  Ifs out;
  out.ambient_dim = ifs.ambient_dim;
  out.name = ifs.name;
  for (const auto& node : nodes) {
    out.maps.push_back(node.map);
    out.provenance.push_back(node.word);
    if (ifs.has_weights()) out.weights.push_back(word_weight(ifs, node.word));
  }
  return out;
}

Ifs remove_words(const Ifs& iterated, const std::vector<Word>& words) {
  if (words.empty()) return iterated;
  std::map<Word, std::size_t> index;
  if (!iterated.provenance.empty()) {
    for (std::size_t i = 0; i < iterated.provenance.size(); ++i)
      index[iterated.provenance[i]] = i;
  } else {
    for (int s = 1; s <= iterated.size(); ++s)
      index[Word{{s}}] = static_cast<std::size_t>(s - 1);
  }
  std::vector<bool> drop(iterated.maps.size(), false);
  for (const auto& w : words) {
    auto it = index.find(w);
    if (it == index.end())
      throw NotFoundError("remove_words: word " + to_string(w) +
                          " not present in the system");
    drop[it->second] = true;
  }

  Ifs out;
  out.ambient_dim = iterated.ambient_dim;
  out.name = iterated.name;
  double kept_weight = 0.0;
  for (std::size_t i = 0; i < iterated.maps.size(); ++i)
    if (!drop[i] && iterated.has_weights()) kept_weight += iterated.weights[i];
  for (std::size_t i = 0; i < iterated.maps.size(); ++i) {
    if (drop[i]) continue;
    out.maps.push_back(iterated.maps[i]);
    if (!iterated.provenance.empty())
      out.provenance.push_back(iterated.provenance[i]);
    if (iterated.has_weights())
      out.weights.push_back(iterated.weights[i] / kept_weight);
  }
  validate_ifs(out);
  return out;
}

std::vector<std::pair<Word, Word>> detect_exact_overlaps(const Ifs& ifs,
                                                         int depth, double tol,
                                                         std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (depth < 1) throw PreconditionError("detect_exact_overlaps: depth >= 1");
  const Ball root = bounding_ball(ifs);
  const double trans_tol = tol * root.radius;
  std::vector<int> ones(static_cast<std::size_t>(ifs.size()), 1);

  std::vector<std::pair<Word, Word>> pairs;
  std::int64_t count = ifs.size();
  for (int n = 1; n <= depth; ++n, count *= ifs.size()) {
    if (count > cell_cap)
      throw ResourceError("detect_exact_overlaps: cell cap exceeded at depth " +
                          std::to_string(n));
    std::vector<Node> nodes = level_nodes(ifs, ones, n, cell_cap);
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
      return a.map.translation[0] < b.map.translation[0];
    });
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < nodes.size(); ++b) {
        if (nodes[b].map.translation[0] - nodes[a].map.translation[0] >
            trans_tol)
          break;
        if (std::abs(nodes[a].map.ratio - nodes[b].map.ratio) <= tol &&
            dist(nodes[a].map.translation, nodes[b].map.translation) <=
                trans_tol) {
          Word wa = nodes[a].word, wb = nodes[b].word;
          if (wb < wa) std::swap(wa, wb);
          pairs.emplace_back(std::move(wa), std::move(wb));
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

Ifs greedy_ssc_subsystem(const Ifs& ifs, int depth, std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (!ifs.homogeneous(1e-9))
    throw PreconditionError("greedy_ssc_subsystem: homogeneous input required");
  if (depth < 1) throw PreconditionError("greedy_ssc_subsystem: depth >= 1");

  const Ball root = bounding_ball(ifs);
  const double tol = 1e-9 * root.radius;
  std::vector<int> ones(static_cast<std::size_t>(ifs.size()), 1);
  const std::vector<Node> nodes = level_nodes(ifs, ones, depth, cell_cap);
  const std::vector<std::size_t> take = greedy_pack(nodes, root, tol);
  return subsystem_from(ifs, nodes, take);
}

HomogenizeResult homogenize(const Ifs& ifs, double epsilon, int max_depth,
                            std::int64_t cell_cap) {
  validate_ifs(ifs);
  if (!(epsilon > 0.0))
    throw PreconditionError("homogenize: epsilon must be positive");
  if (max_depth < 1) throw PreconditionError("homogenize: max_depth >= 1");

  const auto [lambda0, k] = commensurable_base(ifs);
  const double s_in = similarity_dimension(ifs);
  const double target =
      std::min(s_in, static_cast<double>(ifs.ambient_dim)) - epsilon;

  HomogenizeResult result;
  result.base_ratio = lambda0;
  result.target = target;

  // Fast path: a homogeneous system that already separates is its own
  // answer for every epsilon.
  if (ifs.homogeneous(1e-9)) {
    SscCertificate cert = check_ssc(ifs, 6, 1e-9, cell_cap);
    if (cert.proved()) {
      result.system = ifs;
      result.depth = 1;
      result.dimension = s_in;
      result.target_met = true;
      result.ssc = cert;
      return result;
    }
  }

  const Ball root = bounding_ball(ifs);
  const double tol = 1e-9 * root.radius;
  double best_dim = -1.0;

  for (int n = 1; n <= max_depth; ++n) {
    std::vector<Node> nodes;
    try {
      nodes = level_nodes(ifs, k, n, cell_cap);
    } catch (const ResourceError&) {
      break;
    }
    if (nodes.size() < 2) continue;
    const std::vector<std::size_t> take = greedy_pack(nodes, root, tol);
    if (take.size() < 2) continue;
    const double dim = std::log(static_cast<double>(take.size())) /
                       (static_cast<double>(n) * std::log(1.0 / lambda0));
    if (dim > best_dim) {
      best_dim = dim;
      result.system = subsystem_from(ifs, nodes, take);
      result.depth = n;
      result.dimension = dim;
    }
    if (best_dim > target) break;
  }

  if (best_dim < 0.0)
    throw ResourceError(
        "homogenize: no packing with at least two maps found within "
        "max_depth");
  result.target_met = best_dim > target;
  result.ssc = check_ssc(result.system, 6, 1e-9, cell_cap);
  return result;
}

}  // namespace fraclab
