#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fraclab/ifs.hpp"
#include "fraclab/ssc.hpp"

namespace fraclab {

/// The n-th iterate {f_w : |w| = n}, q^n maps in lexicographic word order.
/// Weights are Bernoulli products; provenance records the words.
Ifs iterate(const Ifs& ifs, int n, std::int64_t cell_cap = kDefaultCellCap);

/// Removes the maps identified by the given provenance words (for systems
/// without provenance, single-symbol words address maps directly). Weights
/// are renormalized. Throws NotFoundError if a word is not present.
Ifs remove_words(const Ifs& iterated, const std::vector<Word>& words);

/// All unordered pairs of distinct equal-length words (length <= depth) whose
/// composed maps agree: |Δratio| <= tol and ||Δtranslation|| <= tol * R.
std::vector<std::pair<Word, Word>> detect_exact_overlaps(
    const Ifs& ifs, int depth, double tol = 1e-9,
    std::int64_t cell_cap = kDefaultCellCap);

/// Greedy packing of depth-n cylinder balls in lexicographic order: a ball is
/// accepted iff strictly disjoint from all previously accepted balls. The
/// returned sub-system is homogeneous with ratio lambda^depth and carries
/// word provenance. May return a single-map (degenerate) system.
Ifs greedy_ssc_subsystem(const Ifs& ifs, int depth,
                         std::int64_t cell_cap = kDefaultCellCap);

struct HomogenizeResult {
  Ifs system;
  int depth = 1;            // common ratio is base_ratio^depth
  double base_ratio = 0.0;  // λ0 of the commensurable family
  double dimension = 0.0;   // similarity dimension of the output
  double target = 0.0;      // min(similarity dim, ambient dim) - epsilon
  bool target_met = false;
  SscCertificate ssc;
};

/// Extracts a homogeneous SSC sub-system whose maps are compositions of the
/// input maps and whose similarity dimension exceeds
/// min(similarity_dimension(ifs), ambient_dim) - epsilon when a depth
/// <= max_depth achieves it; otherwise returns the best achieved system with
/// target_met = false. Requires commensurable ratios (each ratio a power of a
/// common base); throws UnsupportedError otherwise.
HomogenizeResult homogenize(const Ifs& ifs, double epsilon, int max_depth,
                            std::int64_t cell_cap = kDefaultCellCap);

}  // namespace fraclab
