#include <doctest.h>

#include "subsum/errors.hpp"
#include "subsum/oracle.hpp"

using namespace subsum;
using oracle::affine_cube_count;
using oracle::brute_force_subset_sum;
using oracle::shortest_vector_brute;

namespace {

// Plain 2^n enumeration, used to check the meet-in-the-middle split.
std::vector<BitVector> exhaustive(const std::vector<mpz_class>& w, const mpz_class& b0, const mpz_class& tol) {
  const std::size_t n = w.size();
  std::vector<BitVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    mpz_class s = 0;
    BitVector e(n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = (mask >> i) & 1U;
      if (e[i]) s += w[i];
    }
    if (abs(s - b0) <= tol) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("subset-sum enumeration examples") {
  CHECK(brute_force_subset_sum({3, 5}, 8, 0) == std::vector<BitVector>{{1, 1}});
  CHECK(brute_force_subset_sum({2, 2}, 2, 0) == std::vector<BitVector>{{0, 1}, {1, 0}});
  // 3 + 12 = 15 and 5 + 12 = 17 are both within 1 of 16
  CHECK(brute_force_subset_sum({3, 5, 12}, 16, 1) == std::vector<BitVector>{{0, 1, 1}, {1, 0, 1}});
  CHECK(brute_force_subset_sum({3, 5, 12}, 15, 1) == std::vector<BitVector>{{1, 0, 1}});
  CHECK(brute_force_subset_sum({}, 0, 0) == std::vector<BitVector>{{}});
  CHECK(brute_force_subset_sum({4}, 4, 0) == std::vector<BitVector>{{1}});
  CHECK(brute_force_subset_sum({4}, 3, 0).empty());
}

TEST_CASE("meet-in-the-middle agrees with plain enumeration") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.bounded(12);
    std::vector<mpz_class> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(uniform_weight(rng, 5));
    const mpz_class b0 = rng.bounded(40);
    const mpz_class tol = rng.bounded(3);
    CHECK(brute_force_subset_sum(w, b0, tol) == exhaustive(w, b0, tol));
  }
}

TEST_CASE("ground truth is always among the enumerated solutions") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    InstanceParams p;
    p.n = 16;
    p.density = ExplicitDensity{20};
    p.seed = seed;
    const auto inst = gen_instance(p);
    const auto sols = brute_force_subset_sum(inst.observed.weights, inst.observed.b0, 0);
    CHECK(std::binary_search(sols.begin(), sols.end(), inst.truth.e));
  }
}

TEST_CASE("subset-sum enumeration limits") {
  CHECK_THROWS_AS(brute_force_subset_sum(std::vector<mpz_class>(35, 1), 3, 0), TooLarge);
  CHECK_THROWS_AS(brute_force_subset_sum({1, 2}, 3, -1), ValidationError);
}

TEST_CASE("shortest_vector_brute") {
  IntegerBasis id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(shortest_vector_brute(id, 2).norm_sq == 1);

  const auto b = IntegerBasis::from_columns({{2, 0}, {1, 2}});
  const auto sv = shortest_vector_brute(b, 5);
  CHECK(sv.norm_sq == 4);
  CHECK(abs(sv.vector[0]) == 2);
  CHECK(sv.vector[1] == 0);

  CHECK_THROWS_AS(shortest_vector_brute(IntegerBasis(7, 7), 1), TooLarge);
  CHECK_THROWS_AS(shortest_vector_brute(id, 0), ValidationError);
}

TEST_CASE("affine_cube_count examples") {
  CHECK(affine_cube_count(2, 3, {1, -1}, 0) == 3);
  CHECK(affine_cube_count(2, 3, {1, 1}, 100) == 0);
  CHECK(affine_cube_count(3, 2, {1, 1, 1}, 3) == 1);
  CHECK(affine_cube_count(3, 2, {0, 0, 1}, 2) == 4);  // z3 = 2, z1 and z2 free
  CHECK_THROWS_AS(affine_cube_count(6, 2, {1, 1, 1, 1, 1, 1}, 0), TooLarge);
  CHECK_THROWS_AS(affine_cube_count(2, 9, {1, 1}, 0), TooLarge);
  CHECK_THROWS_AS(affine_cube_count(2, 3, {0, 0}, 0), ValidationError);
  CHECK_THROWS_AS(affine_cube_count(2, 3, {1}, 0), LengthMismatch);
}

TEST_CASE("hyperplane counts never exceed side^(n-1)") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.bounded(5);
    const std::uint64_t side = 1 + rng.bounded(8);
    std::vector<std::int64_t> a(n, 0);
    while (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; }))
      for (auto& x : a) x = static_cast<std::int64_t>(rng.bounded(7)) - 3;
    const auto rhs = static_cast<std::int64_t>(rng.bounded(41)) - 20;
    std::uint64_t cap = 1;
    for (std::size_t i = 1; i < n; ++i) cap *= side;
    CHECK(affine_cube_count(n, side, a, rhs) <= cap);
  }
}
