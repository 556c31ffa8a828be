#pragma once

// Shared test fixtures: the small separated systems used across the suites.

#include <random>
#include <vector>

#include "fraclab/ifs.hpp"

namespace fixtures {

using fraclab::Ifs;
using fraclab::Similitude;
using fraclab::Vec;
using fraclab::Word;
using fraclab::make_ifs;

// {x/3, x/3 + 2/3}: the middle-third construction on [0,1].
inline Ifs cantor() {
  return make_ifs({Similitude{1.0 / 3.0, Vec(0.0)},
                   Similitude{1.0 / 3.0, Vec(2.0 / 3.0)}});
}

// Two-map system with ratio lambda and gap: {lambda x, lambda x + (1-lambda)}.
inline Ifs cantor_lambda(double lambda) {
  return make_ifs(
      {Similitude{lambda, Vec(0.0)}, Similitude{lambda, Vec(1.0 - lambda)}});
}

// Touching halves of [0,1]: separated sets do not exist at any depth.
inline Ifs touching_halves() {
  return make_ifs({Similitude{0.5, Vec(0.0)}, Similitude{0.5, Vec(0.5)}});
}

// Genuinely overlapping pair: images [0, 0.6] and [0.4, 1].
inline Ifs overlapping() {
  return make_ifs({Similitude{0.6, Vec(0.0)}, Similitude{0.6, Vec(0.4)}});
}

// Planar corner system: q = 3, lambda = 1/3, right triangle of fixed points.
inline Ifs corner3(double lambda = 1.0 / 3.0) {
  const double a = 1.0 - lambda;
  return make_ifs({Similitude{lambda, Vec(0.0, 0.0)},
                   Similitude{lambda, Vec(a, 0.0)},
                   Similitude{lambda, Vec(0.0, a)}});
}

// Four corners of the unit square.
inline Ifs corner4(double lambda) {
  const double a = 1.0 - lambda;
  return make_ifs(
      {Similitude{lambda, Vec(0.0, 0.0)}, Similitude{lambda, Vec(0.0, a)},
       Similitude{lambda, Vec(a, 0.0)}, Similitude{lambda, Vec(a, a)}});
}

// q = 5, lambda = 1/3 separated system in R^3 with full-rank geometry.
inline Ifs corner5_r3() {
  const double a = 2.0 / 3.0;
  return make_ifs({Similitude{1.0 / 3.0, Vec(0.0, 0.0, 0.0)},
                   Similitude{1.0 / 3.0, Vec(a, 0.0, 0.0)},
                   Similitude{1.0 / 3.0, Vec(0.0, a, 0.0)},
                   Similitude{1.0 / 3.0, Vec(0.0, 0.0, a)},
                   Similitude{1.0 / 3.0, Vec(a, a, a)}});
}

// All eight corners of the unit cube; lambda = 1/2 tiles the cube exactly.
inline Ifs cube8(double lambda) {
  const double a = 1.0 - lambda;
  std::vector<Similitude> maps;
  for (int i = 0; i < 8; ++i)
    maps.push_back(Similitude{
        lambda, Vec(i & 1 ? a : 0.0, i & 2 ? a : 0.0, i & 4 ? a : 0.0)});
  return make_ifs(maps);
}

// Planar four-corner system embedded in the z = 0 plane of R^3.
inline Ifs planar_in_r3() {
  const double a = 2.0 / 3.0;
  return make_ifs({Similitude{1.0 / 3.0, Vec(0.0, 0.0, 0.0)},
                   Similitude{1.0 / 3.0, Vec(a, 0.0, 0.0)},
                   Similitude{1.0 / 3.0, Vec(0.0, a, 0.0)},
                   Similitude{1.0 / 3.0, Vec(a, a, 0.0)}});
}

// Strictly positive factor: attractor inside [1/4, 1].
inline Ifs positive_fifth() {
  return make_ifs(
      {Similitude{0.2, Vec(0.2)}, Similitude{0.2, Vec(0.8)}});
}

inline Word word(std::initializer_list<int> symbols) {
  return Word{std::vector<int>(symbols)};
}

// Seeded generators for the property suites.
inline std::mt19937_64 rng(std::uint64_t seed = 20250810) {
  return std::mt19937_64(seed);
}

inline Word random_word(std::mt19937_64& gen, int q, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> sym(1, q);
  Word w;
  const int n = len(gen);
  for (int i = 0; i < n; ++i) w.symbols.push_back(sym(gen));
  return w;
}

}  // namespace fixtures
