#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fraclab/ifs.hpp"
#include "fraclab/maps.hpp"

namespace fraclab {

/// Closed double cone with vertex x, axis v and half-angle alpha in
/// (0, pi/2): { y : |<x - y, v>| >= cos(alpha) ||x - y|| }.
struct DoubleCone {
  Vec vertex;
  Direction axis;
  double half_angle = 0.0;
};

/// Exact membership predicate (boundary included; the vertex belongs).
bool cone_contains(const DoubleCone& cone, const Vec& y);

/// Dimension of the affine hull: principal extents of the centered point set
/// thresholded at tol x spread. 0 = point, 1 = line, 2 = plane, 3 = full.
int affine_dimension(const std::vector<Vec>& points, double tol = 1e-7);

enum class ConeTestStatus { NonemptyWitness, EmptyCertified, Undetermined };

struct ConeTestResult {
  ConeTestStatus status = ConeTestStatus::Undetermined;
  std::optional<Word> witness;  // cylinder ball inside int(B_r ∩ cone)
  int depth = 0;
};

/// One-sided certificates for int(B_r(vertex) ∩ cone) ∩ Λ:
/// NonemptyWitness if some cylinder ball of depth <= depth lies entirely in
/// the open intersection; EmptyCertified if every depth-`depth` ball is
/// entirely outside the closed intersection; Undetermined otherwise.
ConeTestResult cone_intersect_test(const Ifs& ifs, const DoubleCone& cone,
                                   double r, int depth,
                                   std::int64_t cell_cap = kDefaultCellCap);

/// Certified bracket for sin of the minimal angle between attractor
/// difference vectors and the direction n, reduced to cross-cylinder pairs.
struct SeparationReport {
  Vec direction;
  double sin_lower = 0.0;
  double sin_upper = 1.0;
  std::pair<Word, Word> witness;
  double witness_value = 1.0;
  int depth = 0;
  bool reliable = true;  // false if one-symbol cylinder balls overlap
};

/// upper = min over cross-cylinder center pairs of ||n x (c1-c2)||/||c1-c2||;
/// lower = min over pairs of the interval bound
/// max(0, (||n x (c1-c2)|| - r1 - r2) / (||c1-c2|| + r1 + r2)).
/// Both are monotone under depth refinement; ties broken by lexicographic
/// word pair.
SeparationReport separation_spectrum(const Ifs& ifs, const Direction& n,
                                     int depth,
                                     std::int64_t cell_cap = kDefaultCellCap);

/// ||(b - a) x (c - a)|| <= tol * ||b - a|| * ||c - a||.
bool collinearity_check(const Vec& a, const Vec& b, const Vec& c, double tol);

/// Normalized difference of the separation witness pair: the candidate
/// direction whose orthogonal projection identifies exactly the extremal
/// pairs.
Direction two_to_one_direction(const Ifs& ifs, const Direction& n, int depth,
                               std::int64_t cell_cap = kDefaultCellCap);

}  // namespace fraclab
