#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "fraclab/cover.hpp"
#include "fraclab/error.hpp"
#include "fraclab/maps.hpp"
#include "fraclab/subsystem.hpp"

using namespace fraclab;
using fixtures::word;

TEST_CASE("iterate: depth-2 middle-third compositions") {
  const Ifs c = fixtures::cantor();
  const Ifs c2 = iterate(c, 2);
  REQUIRE(c2.size() == 4);
  // Enumeration oracle: translations f_w(0) over the four two-symbol words.
  const double expect[4] = {0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(c2.maps[static_cast<std::size_t>(i)].ratio ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(c2.maps[static_cast<std::size_t>(i)].translation.x() ==
          doctest::Approx(expect[i]).epsilon(1e-14));
  }
  CHECK(c2.provenance.size() == 4);
  CHECK(c2.provenance[1] == word({1, 2}));

  // n = 1 is the system itself.
  const Ifs c1 = iterate(c, 1);
  REQUIRE(c1.size() == c.size());
  for (int i = 0; i < c.size(); ++i)
    CHECK(c1.maps[static_cast<std::size_t>(i)].translation.x() ==
          c.maps[static_cast<std::size_t>(i)].translation.x());

  // Moran invariance under iteration.
  for (int n = 1; n <= 4; ++n)
    CHECK(similarity_dimension(iterate(c, n)) ==
          doctest::Approx(similarity_dimension(c)).epsilon(1e-10));

  CHECK_THROWS_AS(iterate(c, 30), ResourceError);
}

TEST_CASE("iterate carries Bernoulli weights") {
  const Ifs biased = make_ifs({Similitude{1.0 / 3.0, Vec(0.0)},
                               Similitude{1.0 / 3.0, Vec(2.0 / 3.0)}},
                              {0.3, 0.7});
  const Ifs b2 = iterate(biased, 2);
  REQUIRE(b2.has_weights());
  CHECK(b2.weights[0] == doctest::Approx(0.09));
  CHECK(b2.weights[1] == doctest::Approx(0.21));
  CHECK(b2.weights[2] == doctest::Approx(0.21));
  CHECK(b2.weights[3] == doctest::Approx(0.49));
}

TEST_CASE("remove_words") {
  const Ifs c2 = iterate(fixtures::cantor(), 2);

  // Closed form: removing k of q^n maps gives log(q^n - k) / (n log(1/λ)).
  const Ifs c2m1 = remove_words(c2, {word({1, 2})});
  CHECK(c2m1.size() == 3);
  CHECK(similarity_dimension(c2m1) ==
        doctest::Approx(std::log(3.0) / std::log(9.0)).epsilon(1e-10));

  const Ifs c3 = iterate(fixtures::cantor(), 3);
  const Ifs c3m3 =
      remove_words(c3, {word({1, 1, 1}), word({2, 2, 2}), word({1, 2, 1})});
  CHECK(similarity_dimension(c3m3) ==
        doctest::Approx(std::log(5.0) / (3.0 * std::log(3.0))).epsilon(1e-10));

  // Removing nothing is the identity.
  const Ifs same = remove_words(c2, {});
  CHECK(same.size() == c2.size());

  CHECK_THROWS_AS(remove_words(c2, {word({1, 1, 1})}), NotFoundError);
}

TEST_CASE("detect_exact_overlaps") {
  // Identical maps collide at depth 1.
  const Ifs dup =
      make_ifs({Similitude{0.5, Vec(0.0)}, Similitude{0.5, Vec(0.0)}});
  const auto dup_pairs = detect_exact_overlaps(dup, 1, 1e-9);
  REQUIRE(dup_pairs.size() == 1);
  CHECK(dup_pairs[0].first == word({1}));
  CHECK(dup_pairs[0].second == word({2}));

  // Separated system: no coincidences at any tested depth.
  for (int depth = 1; depth <= 5; ++depth)
    CHECK(detect_exact_overlaps(fixtures::cantor(), depth, 1e-9).empty());

  // Diagonal projection of the product square merges the two middle maps.
  const Ifs square = product_ifs({fixtures::cantor(), fixtures::cantor()});
  const Ifs diag = project_ifs(
      square, Direction(Vec(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0))));
  const auto pairs = detect_exact_overlaps(diag, 1, 1e-9);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first == word({2}));
  CHECK(pairs[0].second == word({3}));

  // Symmetry under map reordering, up to relabeling.
  Ifs swapped = diag;
  std::swap(swapped.maps[0], swapped.maps[1]);
  const auto pairs2 = detect_exact_overlaps(swapped, 1, 1e-9);
  REQUIRE(pairs2.size() == 1);
  CHECK(pairs2[0].first == word({1}));
  CHECK(pairs2[0].second == word({3}));
}

TEST_CASE("greedy_ssc_subsystem") {
  // All four depth-2 middle-third balls are pairwise separated.
  const Ifs g2 = greedy_ssc_subsystem(fixtures::cantor(), 2);
  CHECK(g2.size() == 4);

  // Touching halves: lexicographic packing drops the touching neighbours.
  const Ifs t2 = greedy_ssc_subsystem(fixtures::touching_halves(), 2);
  CHECK(t2.size() < 4);
  CHECK(t2.size() >= 1);

  // Defining postcondition: accepted cylinder balls pairwise disjoint.
  const Ifs o3 = greedy_ssc_subsystem(fixtures::overlapping(), 3);
  const Ball root = bounding_ball(fixtures::overlapping());
  for (int i = 0; i < o3.size(); ++i)
    for (int j = i + 1; j < o3.size(); ++j) {
      const Similitude& a = o3.maps[static_cast<std::size_t>(i)];
      const Similitude& b = o3.maps[static_cast<std::size_t>(j)];
      CHECK(dist(a(root.center), b(root.center)) >
            (a.ratio + b.ratio) * root.radius);
    }

  CHECK_THROWS_AS(
      greedy_ssc_subsystem(
          make_ifs({Similitude{0.5, Vec(0.0)}, Similitude{0.25, Vec(0.75)}}),
          2),
      PreconditionError);
}

TEST_CASE("homogenize: separated homogeneous input is the identity") {
  const Ifs c = fixtures::cantor();
  const HomogenizeResult r = homogenize(c, 0.01, 6);
  CHECK(r.target_met);
  CHECK(r.depth == 1);
  CHECK(r.system.size() == c.size());
  CHECK(r.dimension == doctest::Approx(similarity_dimension(c)));
  CHECK(r.ssc.proved());

  // A separated sub-iterate is likewise returned unchanged.
  const Ifs c2m1 = remove_words(iterate(c, 2), {word({1, 2})});
  const HomogenizeResult r2 = homogenize(c2m1, 0.01, 6);
  CHECK(r2.target_met);
  CHECK(r2.depth == 1);
  CHECK(r2.system.size() == c2m1.size());
}

TEST_CASE("homogenize: overlapping family meets min(s, d) - eps") {
  const Ifs o = fixtures::overlapping();
  const HomogenizeResult r = homogenize(o, 0.3, 8);
  CHECK(r.target == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r.target_met);
  CHECK(r.dimension > 0.7);
  CHECK(r.ssc.proved());
  // Moran verification of the reported dimension.
  CHECK(similarity_dimension(r.system) ==
        doctest::Approx(r.dimension).epsilon(1e-9));
  // Output maps are compositions of input maps (word provenance).
  REQUIRE(r.system.provenance.size() ==
          static_cast<std::size_t>(r.system.size()));
  for (int i = 0; i < r.system.size(); ++i) {
    const Similitude direct =
        compose(o, r.system.provenance[static_cast<std::size_t>(i)]);
    const Similitude& m = r.system.maps[static_cast<std::size_t>(i)];
    CHECK(std::abs(direct.ratio - m.ratio) <= 1e-12);
    CHECK(dist(direct.translation, m.translation) <= 1e-12);
  }
}

TEST_CASE("homogenize: best dimension improves with max_depth") {
  const Ifs o = fixtures::overlapping();
  double prev = 0.0;
  std::vector<double> dims;
  for (int md : {2, 4, 6, 8}) {
    const HomogenizeResult r = homogenize(o, 0.05, md);
    CHECK(r.dimension >= prev - 1e-12);
    prev = r.dimension;
    dims.push_back(r.dimension);
  }
  CHECK(dims.back() > dims.front());  // strictly better overall
}

TEST_CASE("homogenize: commensurable and non-commensurable ratios") {
  // {1/2, 1/4} with exponents {1, 2}: admissible compositions exist.
  const Ifs mixed =
      make_ifs({Similitude{0.5, Vec(0.0)}, Similitude{0.25, Vec(0.75)}});
  const HomogenizeResult r = homogenize(mixed, 0.5, 8);
  CHECK(r.base_ratio == doctest::Approx(0.5));
  CHECK(r.system.homogeneous(1e-9));
  CHECK(r.ssc.proved());

  const Ifs bad = make_ifs(
      {Similitude{0.5, Vec(0.0)}, Similitude{1.0 / 3.0, Vec(2.0 / 3.0)}});
  CHECK_THROWS_AS(homogenize(bad, 0.1, 4), UnsupportedError);
}
