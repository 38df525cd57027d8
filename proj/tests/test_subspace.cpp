#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "pfr/errors.hpp"
#include "pfr/field.hpp"
#include "pfr/subspace.hpp"

using namespace pfr;

namespace {

Point pt(std::initializer_list<Residue> coords, std::uint32_t p) {
  return Point(std::vector<Residue>(coords), p);
}

Subspace random_subspace(const ProblemParams& params, std::mt19937_64& rng,
                         std::uint32_t max_generators) {
  std::vector<Point> gens;
  const std::uint32_t count = rng() % (max_generators + 1);
  for (std::uint32_t i = 0; i < count; ++i) {
    gens.push_back(Point::from_index(rng() % params.point_count, params));
  }
  return Subspace::span(params, gens);
}

std::set<std::uint64_t> element_indices(const Subspace& V) {
  std::set<std::uint64_t> out;
  for (const Point& v : V.elements()) out.insert(v.index());
  return out;
}

}  // namespace

TEST_CASE("span and membership") {
  const ProblemParams p2n2(2, 2, 0);
  const ProblemParams p2n3(2, 3, 0);

  CHECK(Subspace::span(p2n2, {}).dimension() == 0);
  CHECK(Subspace::span(p2n2, {pt({1, 0}, 2), pt({0, 1}, 2)}) == Subspace::full(p2n2));

  // the third generator is the sum of the first two
  const Subspace W =
      Subspace::span(p2n3, {pt({1, 1, 0}, 2), pt({0, 1, 1}, 2), pt({1, 0, 1}, 2)});
  CHECK(W.dimension() == 2);

  CHECK(W.contains(Point::zero(p2n3)));
  const Subspace V2 = Subspace::span(p2n3, {pt({1, 1, 0}, 2), pt({0, 1, 1}, 2)});
  CHECK_FALSE(V2.contains(pt({1, 1, 1}, 2)));
  for (std::uint64_t i = 0; i < p2n3.point_count; ++i) {
    const Point v = Point::from_index(i, p2n3);
    CHECK(Subspace::span(p2n3, {v}).contains(v));
  }

  // spanning a point from the wrong parameter block is rejected
  CHECK_THROWS_AS(Subspace::span(p2n3, {pt({1, 1}, 2)}), std::invalid_argument);
}

TEST_CASE("span canonicity under generator shuffling and rescaling") {
  const ProblemParams params(3, 4, 0);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> gens;
    for (int k = 0; k < 3; ++k) {
      gens.push_back(Point::from_index(rng() % params.point_count, params));
    }
    const Subspace A = Subspace::span(params, gens);

    std::shuffle(gens.begin(), gens.end(), rng);
    for (Point& g : gens) {
      const Residue lambda = static_cast<Residue>(1 + rng() % 2);  // nonzero scalar
      g = g.scaled(lambda);
    }
    CHECK(Subspace::span(params, gens) == A);
  }
}

TEST_CASE("sum and intersection") {
  const ProblemParams p2n2(2, 2, 0);
  const ProblemParams p2n3(2, 3, 0);

  const Subspace A = Subspace::span(p2n3, {pt({1, 1, 0}, 2), pt({0, 1, 1}, 2)});
  CHECK(A.sum(Subspace::zero(p2n3)) == A);
  CHECK(A.sum(A) == A);
  CHECK(Subspace::span(p2n2, {pt({1, 0}, 2)}).sum(Subspace::span(p2n2, {pt({0, 1}, 2)})) ==
        Subspace::full(p2n2));

  CHECK(A.intersect(A) == A);
  CHECK(A.intersect(Subspace::zero(p2n3)) == Subspace::zero(p2n3));
  const Subspace e01 = Subspace::span(p2n3, {pt({1, 0, 0}, 2), pt({0, 1, 0}, 2)});
  const Subspace e12 = Subspace::span(p2n3, {pt({0, 1, 0}, 2), pt({0, 0, 1}, 2)});
  CHECK(e01.intersect(e12) == Subspace::span(p2n3, {pt({0, 1, 0}, 2)}));
}

TEST_CASE("intersection matches brute-force element intersection") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u}) {
    const ProblemParams params(p, 4, 0);
    for (int trial = 0; trial < 60; ++trial) {
      const Subspace A = random_subspace(params, rng, 3);
      const Subspace B = random_subspace(params, rng, 3);
      const Subspace I = A.intersect(B);

      std::set<std::uint64_t> expected;
      const auto bset = element_indices(B);
      for (std::uint64_t idx : element_indices(A)) {
        if (bset.count(idx)) expected.insert(idx);
      }
      CHECK(element_indices(I) == expected);
    }
  }
}

TEST_CASE("dimension formula") {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const ProblemParams params(p, 6, 0);
    for (int trial = 0; trial < 100; ++trial) {
      const Subspace A = random_subspace(params, rng, 4);
      const Subspace B = random_subspace(params, rng, 4);
      CHECK(A.sum(B).dimension() + A.intersect(B).dimension() ==
            A.dimension() + B.dimension());
    }
  }
}

TEST_CASE("membership distributes over intersection") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u}) {
    const ProblemParams params(p, p == 2 ? 4 : 3, 0);
    for (int trial = 0; trial < 20; ++trial) {
      const Subspace A = random_subspace(params, rng, 3);
      const Subspace B = random_subspace(params, rng, 3);
      const Subspace I = A.intersect(B);
      for (std::uint64_t i = 0; i < params.point_count; ++i) {
        const Point v = Point::from_index(i, params);
        CHECK(I.contains(v) == (A.contains(v) && B.contains(v)));
      }
    }
  }
}

TEST_CASE("element enumeration") {
  const ProblemParams p2n2(2, 2, 0);
  const ProblemParams p3n3(3, 3, 0);

  const auto zero_elems = Subspace::zero(p2n2).elements();
  REQUIRE(zero_elems.size() == 1);
  CHECK(zero_elems[0].is_zero());

  // deterministic order: coefficient 0 before coefficient 1
  const auto line = Subspace::span(p2n2, {pt({1, 0}, 2)}).elements();
  REQUIRE(line.size() == 2);
  CHECK(line[0] == pt({0, 0}, 2));
  CHECK(line[1] == pt({1, 0}, 2));

  const Subspace plane = Subspace::span(p3n3, {pt({1, 0, 0}, 3), pt({0, 1, 2}, 3)});
  REQUIRE(plane.dimension() == 2);
  const auto elems = plane.elements();
  CHECK(elems.size() == 9);
  std::set<std::uint64_t> distinct;
  for (const Point& v : elems) {
    CHECK(plane.contains(v));
    distinct.insert(v.index());
  }
  CHECK(distinct.size() == 9);
}

TEST_CASE("linear extension") {
  const ProblemParams p2n2(2, 2, 0);
  const ProblemParams p3n2(3, 2, 0);

  // forced by linearity on a one-dimensional span
  const Point z2 = pt({1, 1}, 2);
  const Subspace Vz2 = Subspace::span(p2n2, {z2});
  const auto ell2 = linear_extension(Vz2, Subspace::zero(p2n2), z2);
  REQUIRE(ell2.size() == 2);
  CHECK(ell2[0] == 0);
  CHECK(ell2[1] == 1);

  // ℓ(λz) = λ at p=3
  const Point z3 = pt({1, 2}, 3);
  const Subspace Vz3 = Subspace::span(p3n2, {z3});
  const auto ell3 = linear_extension(Vz3, Subspace::zero(p3n2), z3);
  const auto elems3 = Vz3.elements();
  REQUIRE(elems3.size() == 3);
  for (std::size_t i = 0; i < elems3.size(); ++i) {
    for (Residue lambda = 0; lambda < 3; ++lambda) {
      if (elems3[i] == z3.scaled(lambda)) CHECK(ell3[i] == lambda);
    }
  }

  // z inside Z: no extension can exist
  CHECK_THROWS_AS(linear_extension(Vz2, Vz2, z2), NoExtensionError);
  CHECK_THROWS_AS(linear_extension(Vz2, Subspace::zero(p2n2), Point::zero(p2n2)),
                  NoExtensionError);

  // precondition violations
  const Subspace full2 = Subspace::full(p2n2);
  CHECK_THROWS_AS(linear_extension(Vz2, full2, z2), std::invalid_argument);      // Z ⊄ V
  CHECK_THROWS_AS(linear_extension(Vz2, Subspace::zero(p2n2), pt({1, 0}, 2)),
                  std::invalid_argument);  // z ∉ V
}

TEST_CASE("linear extension is linear, vanishes on Z, and hits 1 at z") {
  std::mt19937_64 rng(23);
  for (std::uint32_t p : {2u, 3u}) {
    const ProblemParams params(p, 5, 0);
    int done = 0;
    while (done < 40) {
      const Subspace V = random_subspace(params, rng, 4);
      if (V.dimension() == 0) continue;
      const auto velems = V.elements();

      // random Z ⊆ V and z ∈ V \ Z
      std::vector<Point> zgens;
      for (int k = 0; k < 2; ++k) zgens.push_back(velems[rng() % velems.size()]);
      const Subspace Z = Subspace::span(params, zgens);
      const Point z = velems[rng() % velems.size()];
      if (Z.contains(z)) continue;
      ++done;

      const auto ell = linear_extension(V, Z, z);
      REQUIRE(ell.size() == velems.size());

      // table lookup by element index for the additivity check
      std::vector<Residue> by_index(params.point_count, 0);
      for (std::size_t i = 0; i < velems.size(); ++i) by_index[velems[i].index()] = ell[i];

      for (std::size_t i = 0; i < velems.size(); ++i) {
        if (Z.contains(velems[i])) CHECK(ell[i] == 0);
        if (velems[i] == z) CHECK(ell[i] == 1);
        for (std::size_t j = 0; j < velems.size(); ++j) {
          const Point sum = velems[i] + velems[j];
          CHECK(by_index[sum.index()] == add_mod(ell[i], ell[j], p));
        }
      }
    }
  }
}
