#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "fraclab/ifs.hpp"

namespace fraclab {

enum class SscStatus { Proved, Violated, Undetermined };

/// One-sided separation certificate.
///   Proved: at refinement depth `depth`, the cylinder-ball unions of any two
///           distinct first-level cylinders are pairwise disjoint (sound:
///           implies f_i(Λ) ∩ f_j(Λ) = ∅ for all i != j).
///   Violated: two distinct equal-length words compose to the same map
///           (witness pair, common prefix stripped).
///   Undetermined: neither certificate found up to the tested depth.
/// `persistent_overlap` is set when at every tested depth some cross-cylinder
/// ball pair still overlaps strictly (touching configurations do not set it).
struct SscCertificate {
  SscStatus status = SscStatus::Undetermined;
  int depth = 0;
  std::optional<std::pair<Word, Word>> witness;
  bool persistent_overlap = false;

  bool proved() const { return status == SscStatus::Proved; }
};

SscCertificate check_ssc(const Ifs& ifs, int max_depth,
                         double tol_scale = 1e-9,
                         std::int64_t cell_cap = kDefaultCellCap);

}  // namespace fraclab
