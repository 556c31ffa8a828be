#include "fraclab/ifs.hpp"

#include <algorithm>
#include <cmath>

#include "fraclab/error.hpp"

namespace fraclab {

bool Ifs::homogeneous(double rel_tol) const {
  if (maps.empty()) return true;
  const double r0 = maps.front().ratio;
  for (const auto& m : maps)
    if (std::abs(m.ratio - r0) > rel_tol * r0) return false;
  return true;
}

void validate_ifs(const Ifs& ifs) {
  if (ifs.maps.size() < 2)
    throw PreconditionError("ifs: at least 2 maps required, got " +
                            std::to_string(ifs.maps.size()));
  if (ifs.ambient_dim < 1 || ifs.ambient_dim > 3)
    throw PreconditionError("ifs: ambient dimension must be 1, 2 or 3");
  for (const auto& m : ifs.maps) {
    if (!(m.ratio > 0.0 && m.ratio < 1.0))
      throw PreconditionError("ifs: contraction ratio must lie in (0,1), got " +
                              std::to_string(m.ratio));
    if (m.dim() != ifs.ambient_dim)
      throw PreconditionError("ifs: translation dimension mismatch");
  }
  if (!ifs.weights.empty()) {
    if (ifs.weights.size() != ifs.maps.size())
      throw PreconditionError("ifs: weight count must match map count");
    double sum = 0.0;
    for (double p : ifs.weights) {
      if (!(p > 0.0)) throw PreconditionError("ifs: weights must be positive");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw PreconditionError("ifs: weights must sum to 1, got " +
                              std::to_string(sum));
  }
}

Ifs make_ifs(std::vector<Similitude> maps, std::vector<double> weights,
             std::string name) {
  Ifs ifs;
  ifs.maps = std::move(maps);
  ifs.ambient_dim = ifs.maps.empty() ? 0 : ifs.maps.front().dim();
  ifs.weights = std::move(weights);
  ifs.name = std::move(name);
  validate_ifs(ifs);
  return ifs;
}

Similitude compose(const Ifs& ifs, const Word& word) {
  if (word.empty())
    throw PreconditionError(
        "compose: empty word denotes the identity, which is not a contraction");
  Similitude acc;
  bool first = true;
  for (int s : word.symbols) {
    if (s < 1 || s > ifs.size())
      throw PreconditionError("compose: symbol " + std::to_string(s) +
                              " out of range 1.." + std::to_string(ifs.size()));
    const Similitude& f = ifs.maps[static_cast<std::size_t>(s - 1)];
    acc = first ? f : acc.after(f);
    first = false;
  }
  return acc;
}

Vec fixed_point(const Similitude& s) {
  return (1.0 / (1.0 - s.ratio)) * s.translation;
}

Vec natural_projection_point(const Ifs& ifs, const Word& word) {
  return compose(ifs, word).translation;  // f_w(0)
}

Ball bounding_ball(const Ifs& ifs) {
  validate_ifs(ifs);
  Vec c = Vec::zero(ifs.ambient_dim);
  for (const auto& m : ifs.maps) c = c + fixed_point(m);
  c = (1.0 / static_cast<double>(ifs.size())) * c;

  double lambda_max = 0.0;
  double drift = 0.0;
  for (const auto& m : ifs.maps) {
    lambda_max = std::max(lambda_max, m.ratio);
    drift = std::max(drift, dist(m(c), c));
  }
  return Ball{c, drift / (1.0 - lambda_max)};
}

double similarity_dimension(const Ifs& ifs) {
  validate_ifs(ifs);
  auto excess = [&](double s) {
    double sum = 0.0;
    for (const auto& m : ifs.maps) sum += std::pow(m.ratio, s);
    return sum - 1.0;
  };
  double lo = 0.0;
  double hi = static_cast<double>(ifs.ambient_dim) + 1.0;
  while (excess(hi) > 0.0) hi *= 2.0;  // heavily overlapping systems
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Ifs product_ifs(const std::vector<Ifs>& factors) {
  if (factors.size() < 2 || factors.size() > 3)
    throw PreconditionError("product_ifs: 2 or 3 factors required");
  double lambda = factors.front().maps.front().ratio;
  for (const auto& f : factors) {
    validate_ifs(f);
    if (f.ambient_dim != 1)
      throw PreconditionError("product_ifs: factors must be one-dimensional");
    if (!f.homogeneous())
      throw PreconditionError("product_ifs: factors must be homogeneous");
    if (std::abs(f.maps.front().ratio - lambda) > 1e-12)
      throw PreconditionError(
          "product_ifs: factors must share a common contraction ratio");
  }

  const int d = static_cast<int>(factors.size());
  bool weighted = true;
  for (const auto& f : factors) weighted = weighted && f.has_weights();

  Ifs out;
  out.ambient_dim = d;
  std::vector<int> idx(factors.size(), 0);
  for (;;) {
    Similitude m;
    m.ratio = lambda;
    m.translation = Vec::zero(d);
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      const auto& fk = factors[static_cast<std::size_t>(k)];
      m.translation[k] = fk.maps[static_cast<std::size_t>(idx[k])].translation[0];
      if (weighted) w *= fk.weights[static_cast<std::size_t>(idx[k])];
    }
    out.maps.push_back(m);
    if (weighted) out.weights.push_back(w);
    int k = d - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] ==
                         factors[static_cast<std::size_t>(k)].size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  validate_ifs(out);
  return out;
}

Ifs translate_ifs(const Ifs& ifs, const Vec& offset) {
  Ifs out = ifs;
  for (auto& m : out.maps)
    m.translation = m.translation + (1.0 - m.ratio) * offset;
  return out;
}

Ifs cylinder_ifs(const Ifs& ifs, const Word& word) {
  // Conjugation f_w ∘ f_i ∘ f_w^{-1}: same ratios, translations
  // f_w(t_i) - ratio_i * t_w. The attractor is f_w(Λ).
  const Similitude fw = compose(ifs, word);
  Ifs out = ifs;
  for (std::size_t i = 0; i < out.maps.size(); ++i) {
    const Similitude& fi = ifs.maps[i];
    out.maps[i].translation = fw(fi.translation) - fi.ratio * fw.translation;
  }
  if (!ifs.name.empty()) out.name = ifs.name + "[" + to_string(word) + "]";
  return out;
}

double word_weight(const Ifs& ifs, const Word& word) {
  double w = 1.0;
  const double uniform = 1.0 / static_cast<double>(ifs.size());
  for (int s : word.symbols) {
    if (s < 1 || s > ifs.size())
      throw PreconditionError("word_weight: symbol out of range");
    w *= ifs.has_weights() ? ifs.weights[static_cast<std::size_t>(s - 1)]
                           : uniform;
  }
  return w;
}

}  // namespace fraclab
