#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fraclab/vec.hpp"
#include "fraclab/word.hpp"

namespace fraclab {

/// A contracting homothety x -> ratio * x + translation with 0 < ratio < 1.
struct Similitude {
  double ratio = 0.0;
  Vec translation;

  int dim() const { return translation.dim; }

  Vec operator()(const Vec& x) const { return ratio * x + translation; }

  /// Composition this ∘ g, i.e. the map x -> (*this)(g(x)).
  Similitude after(const Similitude& g) const {
    Similitude r;
    r.ratio = ratio * g.ratio;
    r.translation = ratio * g.translation + translation;
    return r;
  }
};

/// An iterated function system of homotheties on R^d, optionally carrying a
/// probability vector. `provenance`, when non-empty, records for each map the
/// word over some parent system's alphabet from which it was composed; it is
/// maintained by iterate/remove/greedy-subsystem style operations.
struct Ifs {
  std::vector<Similitude> maps;
  int ambient_dim = 0;
  std::vector<double> weights;
  std::vector<Word> provenance;
  std::string name;

  int size() const { return static_cast<int>(maps.size()); }
  bool has_weights() const { return !weights.empty(); }
  bool homogeneous(double rel_tol = 1e-12) const;
};

/// Certified enclosure of the attractor: f_i(B) ⊆ B for every map.
struct Ball {
  Vec center;
  double radius = 0.0;
};

/// Builds an Ifs and validates all type invariants (q >= 2, ratios in (0,1),
/// consistent dimensions, weights positive and normalized). Throws
/// PreconditionError on violation.
Ifs make_ifs(std::vector<Similitude> maps, std::vector<double> weights = {},
             std::string name = {});

/// Validates the invariants of an already-built system.
void validate_ifs(const Ifs& ifs);

/// The composed map f_w = f_{w0} ∘ f_{w1} ∘ ... ∘ f_{w(n-1)}.
/// Throws PreconditionError for the empty word (the identity is not a
/// contraction) and for out-of-range symbols.
Similitude compose(const Ifs& ifs, const Word& word);

/// Unique fixed point t / (1 - ratio), solved componentwise.
Vec fixed_point(const Similitude& s);

/// Depth-|w| truncation of the natural symbolic projection: f_w(0).
Vec natural_projection_point(const Ifs& ifs, const Word& word);

/// Invariant ball: center = mean of one-symbol fixed points,
/// radius = max_i ||f_i(c) - c|| / (1 - max_i ratio).
Ball bounding_ball(const Ifs& ifs);

/// The exponent s solving sum_i ratio_i^s = 1 (bisection to 1e-12).
double similarity_dimension(const Ifs& ifs);

/// Product system on R^(sum of dims) of 2 or 3 one-dimensional homogeneous
/// factors with a common ratio; its attractor is the Cartesian product of the
/// factor attractors. Throws PreconditionError on ratio mismatch.
Ifs product_ifs(const std::vector<Ifs>& factors);

/// The system whose attractor is Λ + offset (translations adjusted by
/// (1 - ratio_i) * offset).
Ifs translate_ifs(const Ifs& ifs, const Vec& offset);

/// The conjugated subsystem {f_w ∘ f_i ∘ f_w^{-1}} whose attractor is the
/// cylinder set f_w(Λ).
Ifs cylinder_ifs(const Ifs& ifs, const Word& word);

/// Bernoulli cylinder weight ν([w]); uniform 1/q per symbol when the system
/// carries no weights.
double word_weight(const Ifs& ifs, const Word& word);

inline constexpr std::int64_t kDefaultCellCap = 10'000'000;

}  // namespace fraclab
