#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "fraclab/cover.hpp"
#include "fraclab/error.hpp"
#include "fraclab/ifs.hpp"
#include "fraclab/ssc.hpp"

using namespace fraclab;
using fixtures::word;

namespace {

// Independent composition oracle: apply the maps one point at a time.
Vec apply_word_pointwise(const Ifs& ifs, const Word& w, Vec x) {
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it)
    x = ifs.maps[static_cast<std::size_t>(*it - 1)](x);
  return x;
}

}  // namespace

TEST_CASE("compose: middle-third examples") {
  const Ifs c = fixtures::cantor();

  const Similitude f1 = compose(c, word({1}));
  CHECK(f1.ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(f1.translation.x() == doctest::Approx(0.0));

  // f_1 ∘ f_2 (x) = (x/3 + 2/3)/3 by direct substitution.
  const Similitude f12 = compose(c, word({1, 2}));
  CHECK(f12.ratio == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(f12.translation.x() == doctest::Approx(2.0 / 9.0).epsilon(1e-15));

  const Similitude f22 = compose(c, word({2, 2}));
  CHECK(f22.ratio == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(f22.translation.x() == doctest::Approx(8.0 / 9.0).epsilon(1e-15));

  CHECK_THROWS_AS(compose(c, Word{}), PreconditionError);
  CHECK_THROWS_AS(compose(c, word({3})), PreconditionError);
}

TEST_CASE("compose agrees with pointwise application on random words") {
  auto gen = fixtures::rng();
  const Ifs c = fixtures::cantor();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Word w = fixtures::random_word(gen, c.size(), 10);
    const Similitude f = compose(c, w);
    const Vec x(unit(gen));
    const Vec direct = apply_word_pointwise(c, w, x);
    CHECK(f(x).x() == doctest::Approx(direct.x()).epsilon(1e-12));
  }
}

TEST_CASE("compose: juxtaposition homomorphism") {
  auto gen = fixtures::rng(7);
  const Ifs c = fixtures::corner3();
  for (int trial = 0; trial < 100; ++trial) {
    const Word a = fixtures::random_word(gen, c.size(), 6);
    const Word b = fixtures::random_word(gen, c.size(), 6);
    const Similitude fab = compose(c, concat(a, b));
    const Similitude fa = compose(c, a);
    const Similitude fb = compose(c, b);
    CHECK(fab.ratio == doctest::Approx(fa.ratio * fb.ratio).epsilon(1e-12));
    const Vec lhs = fab.translation;           // f_ab(0)
    const Vec rhs = fa(fb.translation);        // f_a(f_b(0))
    CHECK(dist(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("fixed_point") {
  CHECK(fixed_point(Similitude{1.0 / 3.0, Vec(0.0)}).x() == 0.0);
  // Solve t/(1 - lambda).
  CHECK(fixed_point(Similitude{1.0 / 3.0, Vec(2.0 / 3.0)}).x() ==
        doctest::Approx(1.0).epsilon(1e-15));
  const Vec fp = fixed_point(Similitude{0.5, Vec(1.0, 1.0, 0.0)});
  CHECK(fp.x() == doctest::Approx(2.0));
  CHECK(fp.y() == doctest::Approx(2.0));
  CHECK(fp.z() == doctest::Approx(0.0));

  // s(Fix) = Fix to 1e-12 on random contractions.
  auto gen = fixtures::rng(11);
  std::uniform_real_distribution<double> ratio(0.05, 0.95);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Similitude s{ratio(gen), Vec(coord(gen), coord(gen), coord(gen))};
    const Vec fx = fixed_point(s);
    CHECK(dist(s(fx), fx) <= 1e-12);
  }
}

TEST_CASE("natural projection point") {
  const Ifs c = fixtures::cantor();
  // Geometric-sum oracle: f_2^n(0) = (2/3) * sum_{k<n} 3^{-k} = 1 - 3^{-n}.
  for (int n = 1; n <= 12; ++n) {
    Word w;
    for (int i = 0; i < n; ++i) w.symbols.push_back(2);
    const double expected = 1.0 - std::pow(3.0, -n);
    CHECK(natural_projection_point(c, w).x() ==
          doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(natural_projection_point(c, word({1, 1, 1})).x() == 0.0);
  CHECK(natural_projection_point(c, word({1, 2})).x() ==
        doctest::Approx(compose(c, word({1, 2})).translation.x()));
}

TEST_CASE("bounding ball: middle-third gives [0,1]") {
  const Ball b = bounding_ball(fixtures::cantor());
  CHECK(b.center.x() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.radius == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bounding ball: invariance f_i(B) ⊆ B by boundary sampling") {
  auto check_invariant = [](const Ifs& ifs) {
    const Ball b = bounding_ball(ifs);
    auto gen = fixtures::rng(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      Vec u = Vec::zero(ifs.ambient_dim);
      for (int i = 0; i < ifs.ambient_dim; ++i) u[i] = normal(gen);
      const double len = norm(u);
      if (len == 0.0) continue;
      const Vec boundary = b.center + (b.radius / len) * u;
      for (const auto& m : ifs.maps)
        CHECK(dist(m(boundary), b.center) <= b.radius + 1e-12);
    }
  };
  check_invariant(fixtures::cantor());
  check_invariant(fixtures::corner3());
  check_invariant(fixtures::corner5_r3());
  // Planar two-map system: same attractor as the middle-third set on the
  // x-axis, so the formula gives c = (1/2, 0), R = 1/2.
  const Ifs pair2 = make_ifs({Similitude{1.0 / 3.0, Vec(0.0, 0.0)},
                              Similitude{1.0 / 3.0, Vec(2.0 / 3.0, 0.0)}});
  check_invariant(pair2);
  const Ball b = bounding_ball(pair2);
  CHECK(b.center.x() == doctest::Approx(0.5));
  CHECK(b.center.y() == doctest::Approx(0.0));
  CHECK(b.radius == doctest::Approx(0.5));
}

TEST_CASE("cylinder cover: homogeneous depth formula") {
  const Ifs c = fixtures::cantor();
  const Ball root = bounding_ball(c);

  // Closed-form oracle: depth = ceil(log(target/R)/log(lambda)), count = q^d.
  for (double target : {1.0 / 9.0, 1.0 / 27.0, 0.01, 0.4}) {
    const int depth = static_cast<int>(
        std::ceil(std::log(target / root.radius) / std::log(1.0 / 3.0)));
    const CylinderCover cover = cylinder_cover(c, target);
    CHECK(cover.max_depth == depth);
    CHECK(cover.cells.size() == static_cast<std::size_t>(std::llround(
                                    std::pow(2.0, depth))));
    for (const auto& cell : cover.cells) CHECK(cell.radius <= target);
    CHECK(cover.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
  }

  // target >= R: the root alone covers.
  const CylinderCover root_cover = cylinder_cover(c, 0.5);
  CHECK(root_cover.cells.size() == 1);
  CHECK(root_cover.cells[0].word.empty());
  CHECK(root_cover.cells[0].weight == 1.0);

  // Unbiased depth-n weights are exactly 2^{-n}.
  const CylinderCover cover3 = cylinder_cover(c, 1.0 / 54.0 - 1e-15);
  for (const auto& cell : cover3.cells)
    CHECK(cell.weight ==
          doctest::Approx(std::pow(0.5, cell.word.size())).epsilon(1e-14));
}

TEST_CASE("cylinder cover: cell radii certify containment of cylinder sets") {
  const Ifs c = fixtures::corner3();
  const CylinderCover cover = cylinder_cover(c, 0.05);
  const Ball root = bounding_ball(c);
  // Radius invariant: product of ratios along the word times root radius.
  for (const auto& cell : cover.cells) {
    double ratio = 1.0;
    for (int s : cell.word.symbols)
      ratio *= c.maps[static_cast<std::size_t>(s - 1)].ratio;
    CHECK(cell.radius == doctest::Approx(ratio * root.radius).epsilon(1e-12));
  }
}

TEST_CASE("cylinder cover: cell cap raises a resource error") {
  CHECK_THROWS_AS(cylinder_cover(fixtures::cantor(), 1e-9, 1000),
                  ResourceError);
}

TEST_CASE("similarity dimension") {
  CHECK(similarity_dimension(fixtures::cantor()) ==
        doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
  CHECK(similarity_dimension(fixtures::corner3()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(similarity_dimension(fixtures::corner5_r3()) ==
        doctest::Approx(std::log(5.0) / std::log(3.0)).epsilon(1e-12));

  // Monotone: removing a map strictly decreases s.
  const Ifs five = fixtures::corner5_r3();
  Ifs four = five;
  four.maps.pop_back();
  CHECK(similarity_dimension(four) < similarity_dimension(five));
}

TEST_CASE("check_ssc: separated, touching, overlapping") {
  const SscCertificate proved = check_ssc(fixtures::cantor(), 4);
  CHECK(proved.status == SscStatus::Proved);
  CHECK(proved.depth == 1);  // gap 1/3 already separates the depth-1 balls

  const SscCertificate touching = check_ssc(fixtures::touching_halves(), 8);
  CHECK(touching.status == SscStatus::Undetermined);
  CHECK_FALSE(touching.persistent_overlap);

  const SscCertificate overlap = check_ssc(fixtures::overlapping(), 8);
  CHECK(overlap.status != SscStatus::Proved);
  const bool violated_or_flagged =
      overlap.status == SscStatus::Violated || overlap.persistent_overlap;
  CHECK(violated_or_flagged);
}

TEST_CASE("check_ssc: exact duplicate maps are violations") {
  const Ifs dup =
      make_ifs({Similitude{0.5, Vec(0.0)}, Similitude{0.5, Vec(0.0)}});
  const SscCertificate cert = check_ssc(dup, 3);
  CHECK(cert.status == SscStatus::Violated);
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->first == fixtures::word({1}));
  CHECK(cert.witness->second == fixtures::word({2}));
}

TEST_CASE("product_ifs: pairs and triples") {
  const Ifs c = fixtures::cantor();
  const Ifs square = product_ifs({c, c});
  CHECK(square.size() == 4);
  CHECK(square.ambient_dim == 2);
  // Tuple enumeration oracle, second factor minor.
  const double a = 2.0 / 3.0;
  const double expect[4][2] = {{0, 0}, {0, a}, {a, 0}, {a, a}};
  for (int i = 0; i < 4; ++i) {
    CHECK(square.maps[static_cast<std::size_t>(i)].translation.x() ==
          doctest::Approx(expect[i][0]));
    CHECK(square.maps[static_cast<std::size_t>(i)].translation.y() ==
          doctest::Approx(expect[i][1]));
  }

  const Ifs c5 = fixtures::cantor_lambda(0.2);
  const Ifs cube = product_ifs({c5, c5, c5});
  CHECK(cube.size() == 8);
  CHECK(cube.ambient_dim == 3);

  // Moran solve: product dimension = sum of factor dimensions.
  CHECK(similarity_dimension(square) ==
        doctest::Approx(2.0 * similarity_dimension(c)).epsilon(1e-9));
  CHECK(similarity_dimension(cube) ==
        doctest::Approx(3.0 * similarity_dimension(c5)).epsilon(1e-9));

  // Mixed ratios are rejected.
  CHECK_THROWS_AS(product_ifs({c, fixtures::cantor_lambda(0.2)}),
                  PreconditionError);
}

TEST_CASE("sample_cloud: determinism, weights and covering") {
  const Ifs c = fixtures::cantor();
  const WeightedCloud cloud = sample_cloud(c, 1.0 / 54.0 + 1e-12);
  CHECK(cloud.size() == 8);  // depth 3
  for (double w : cloud.weights) CHECK(w == doctest::Approx(1.0 / 8.0));

  // Biased weights multiply along the word: word (1,2) has weight 0.21.
  const Ifs biased = make_ifs({Similitude{1.0 / 3.0, Vec(0.0)},
                               Similitude{1.0 / 3.0, Vec(2.0 / 3.0)}},
                              {0.3, 0.7});
  const CylinderCover cover = cylinder_cover(biased, 1.0 / 18.0 + 1e-15);
  bool seen = false;
  for (const auto& cell : cover.cells)
    if (cell.word == fixtures::word({1, 2})) {
      CHECK(cell.weight == doctest::Approx(0.3 * 0.7).epsilon(1e-14));
      seen = true;
    }
  CHECK(seen);

  // Reproducible: two runs give identical points.
  const WeightedCloud again = sample_cloud(c, 1.0 / 54.0 + 1e-12);
  REQUIRE(again.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    CHECK(again.points[i].x() == cloud.points[i].x());

  // Every point of a much finer cloud is within `resolution` of some point:
  // the cloud covers the attractor at its stated resolution.
  const WeightedCloud fine = sample_cloud(c, cloud.resolution / 81.0);
  for (const auto& p : fine.points) {
    double best = 1e300;
    for (const auto& q : cloud.points) best = std::min(best, dist(p, q));
    CHECK(best <= cloud.resolution + 1e-12);
  }
}

TEST_CASE("fixed point of a composed map lies in its cylinder ball") {
  const Ifs c = fixtures::corner3();
  const Ball root = bounding_ball(c);
  auto gen = fixtures::rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Word w = fixtures::random_word(gen, c.size(), 7);
    const Similitude f = compose(c, w);
    const Vec fp = fixed_point(f);
    CHECK(dist(fp, f(root.center)) <= f.ratio * root.radius + 1e-12);
  }
}

TEST_CASE("ifs validation") {
  CHECK_THROWS_AS(make_ifs({Similitude{1.2, Vec(0.0)},
                            Similitude{0.5, Vec(1.0)}}),
                  PreconditionError);
  CHECK_THROWS_AS(make_ifs({Similitude{0.5, Vec(0.0)}}), PreconditionError);
  CHECK_THROWS_AS(make_ifs({Similitude{0.5, Vec(0.0)},
                            Similitude{0.5, Vec(1.0)}},
                           {0.2, 0.7}),
                  PreconditionError);
}
