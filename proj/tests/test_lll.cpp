#include <doctest.h>

#include <algorithm>

#include "subsum/errors.hpp"
#include "subsum/lll.hpp"
#include "subsum/oracle.hpp"
#include "test_support.hpp"

using namespace subsum;

namespace {

IntegerBasis identity(std::size_t d) {
  IntegerBasis b(d, d);
  for (std::size_t i = 0; i < d; ++i) b(i, i) = 1;
  return b;
}

// Column equal to the identity's up to sign.
bool is_signed_identity(const IntegerBasis& b) {
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t r = 0; r < b.rows(); ++r)
      if (abs(b(r, c)) != (r == c ? 1 : 0)) return false;
  return true;
}

// Textbook LLL over exact rationals, recomputing Gram-Schmidt from scratch
// after every basis change. Same step order as lll_reduce.
IntegerBasis textbook_lll(IntegerBasis b, const mpq_class& delta) {
  const std::size_t d = b.cols();
  std::size_t k = 1;
  auto round_nearest = [](const mpq_class& q) {
    mpz_class num = 2 * q.get_num() + q.get_den();
    mpz_class den = 2 * q.get_den();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
  };
  auto size_reduce = [&](std::size_t i, std::size_t j) {
    const auto gs = gram_schmidt(b);
    if (abs(gs.mu[i][j]) <= mpq_class(1, 2)) return;
    const mpz_class r = round_nearest(gs.mu[i][j]);
    for (std::size_t row = 0; row < b.rows(); ++row) b(row, i) -= r * b(row, j);
  };
  while (k < d) {
    size_reduce(k, k - 1);
    const auto gs = gram_schmidt(b);
    const mpq_class& mu = gs.mu[k][k - 1];
    if (gs.bstar_norms_sq[k] < (delta - mu * mu) * gs.bstar_norms_sq[k - 1]) {
      b.swap_columns(k, k - 1);
      k = std::max<std::size_t>(1, k - 1);
      continue;
    }
    for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
    ++k;
  }
  return b;
}

}  // namespace

TEST_CASE("gram_schmidt of the identity") {
  const auto gs = gram_schmidt(identity(2));
  CHECK(gs.mu[0][0] == 1);
  CHECK(gs.mu[1][1] == 1);
  CHECK(gs.mu[1][0] == 0);
  CHECK(gs.bstar_norms_sq == std::vector<mpq_class>{1, 1});
}

TEST_CASE("gram_schmidt of (1,0),(1,1)") {
  const auto b = IntegerBasis::from_columns({{1, 0}, {1, 1}});
  const auto gs = gram_schmidt(b);
  CHECK(gs.mu[1][0] == 1);
  CHECK(gs.bstar_norms_sq == std::vector<mpq_class>{1, 1});
}

TEST_CASE("gram_schmidt reconstructs random bases exactly") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const auto b = testing::random_basis(rng, 4, 4, 12);
    const auto gs = gram_schmidt(b);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(gs.mu[i][i] == 1);
      CHECK(gs.bstar_norms_sq[i] > 0);
      for (std::size_t r = 0; r < 4; ++r) {
        mpq_class acc = 0;
        for (std::size_t j = 0; j <= i; ++j) acc += gs.mu[i][j] * gs.bstar[j][r];
        CHECK(acc == mpq_class(b(r, i)));
      }
    }
  }
}

TEST_CASE("dependent columns are rejected") {
  const auto b = IntegerBasis::from_columns({{1, 2, 3}, {2, 4, 6}});
  CHECK_THROWS_AS(gram_schmidt(b), DependentColumns);
  CHECK_THROWS_AS(lll_reduce(b), DependentColumns);
  CHECK_THROWS_AS(is_size_reduced(b), DependentColumns);
  CHECK_THROWS_AS(lll_reduce(IntegerBasis::from_columns({{0, 0}, {1, 0}})), DependentColumns);
  // more columns than rows
  CHECK_THROWS_AS(lll_reduce(IntegerBasis::from_columns({{1, 0}, {0, 1}, {1, 1}})), DependentColumns);
}

TEST_CASE("delta must lie in (1/4, 1)") {
  CHECK_THROWS_AS(ReductionParams(mpq_class(1, 4)), ValidationError);
  CHECK_THROWS_AS(ReductionParams(mpq_class(1)), ValidationError);
  CHECK_NOTHROW(ReductionParams(mpq_class(99, 100)));
  CHECK(ReductionParams().delta() == mpq_class(3, 4));
}

TEST_CASE("lll_reduce of the identity is the identity up to signs") {
  const auto out = lll_reduce(identity(4));
  CHECK(is_signed_identity(out));
}

TEST_CASE("a single column is already reduced") {
  const auto b = IntegerBasis::from_columns({{6, -9, 15}});
  const auto out = lll_reduce(b);
  CHECK((out == b || out(0, 0) == -6));
  CHECK(squared_norm(out.column(0)) == squared_norm(b.column(0)));
}

TEST_CASE("two-dimensional example reaches the brute-force minimum") {
  const auto b = IntegerBasis::from_columns({{201, 37}, {1648, 296}});
  const auto lambda = oracle::shortest_vector_brute(b, 50);
  CHECK(lambda.norm_sq == 1370);  // frozen from exhaustive enumeration over [-50, 50]^2
  // delta = 3/4 stops at (40, 0): within the factor-2 guarantee, not minimal.
  const auto out = lll_reduce(b);
  CHECK(squared_norm(out.column(0)) == 1600);
  CHECK(testing::within_lll_factor(squared_norm(out.column(0)), lambda.norm_sq, 2));
  CHECK(same_lattice(b, out));
  CHECK(is_size_reduced(out));
  CHECK(satisfies_lovasz(out));
  // Near-Gauss reduction finds the minimum.
  const auto tight = lll_reduce(b, ReductionParams(mpq_class(99, 100)));
  CHECK(squared_norm(tight.column(0)) == 1370);
}

TEST_CASE("same_lattice") {
  const auto id = identity(3);
  CHECK(same_lattice(id, id));
  auto neg = id;
  neg(1, 1) = -1;
  CHECK(same_lattice(id, neg));
  auto twice = id;
  for (std::size_t i = 0; i < 3; ++i) twice(i, i) = 2;
  CHECK_FALSE(same_lattice(id, twice));
  CHECK_FALSE(same_lattice(twice, id));
  CHECK_THROWS_AS(same_lattice(id, identity(2)), ShapeMismatch);

  // Non-square: same span, different lattice.
  const auto a = IntegerBasis::from_columns({{1, 0, 1}, {0, 1, 1}});
  const auto sheared = IntegerBasis::from_columns({{1, 0, 1}, {1, 1, 2}});
  const auto halved = IntegerBasis::from_columns({{1, 0, 1}, {0, 2, 2}});
  CHECK(same_lattice(a, sheared));
  CHECK_FALSE(same_lattice(a, halved));
  // Different span.
  const auto other = IntegerBasis::from_columns({{1, 0, 0}, {0, 1, 0}});
  CHECK_FALSE(same_lattice(a, other));
}

TEST_CASE("size reduction and Lovász checkers") {
  CHECK(is_size_reduced(identity(3)));
  CHECK(satisfies_lovasz(identity(3)));
  const auto skew = IntegerBasis::from_columns({{1, 0}, {100, 1}});
  CHECK_FALSE(is_size_reduced(skew));
  const auto unordered = IntegerBasis::from_columns({{10, 0}, {0, 1}});
  CHECK(is_size_reduced(unordered));
  CHECK_FALSE(satisfies_lovasz(unordered));
}

TEST_CASE("lll_reduce postconditions on seeded random bases") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.bounded(5));
    const std::size_t rows = d + static_cast<std::size_t>(rng.bounded(2));
    const auto b = testing::random_basis(rng, rows, d, 20);
    const auto out = lll_reduce(b);
    CHECK(same_lattice(b, out));
    CHECK(is_size_reduced(out));
    CHECK(satisfies_lovasz(out));
    CHECK(gram_determinant(b) == gram_determinant(out));
  }
}

TEST_CASE("integral LLL matches the textbook rational LLL step for step") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.bounded(4));
    const auto b = testing::random_basis(rng, d + 1, d, 16);
    CHECK(lll_reduce(b) == textbook_lll(b, mpq_class(3, 4)));
    CHECK(lll_reduce(b, ReductionParams(mpq_class(99, 100))) == textbook_lll(b, mpq_class(99, 100)));
  }
}

TEST_CASE("reduction with delta = 99/100 meets its own Lovász condition") {
  SplitMix64 rng(5);
  const auto b = testing::random_basis(rng, 6, 6, 30);
  const auto loose = lll_reduce(b);
  const auto tight = lll_reduce(b, ReductionParams(mpq_class(99, 100)));
  CHECK(satisfies_lovasz(tight, ReductionParams(mpq_class(99, 100))));
  CHECK(same_lattice(loose, tight));
}

TEST_CASE("expired deadline aborts reduction") {
  SplitMix64 rng(3);
  const auto b = testing::random_basis(rng, 6, 6, 40);
  const ReductionParams params(mpq_class(3, 4), std::chrono::steady_clock::now() - std::chrono::seconds(1));
  CHECK_THROWS_AS(lll_reduce(b, params), Timeout);
}

TEST_CASE("gram_determinant") {
  CHECK(gram_determinant(identity(3)) == 1);
  CHECK(gram_determinant(IntegerBasis::from_columns({{2, 0}, {1, 3}})) == 36);
  CHECK(gram_determinant(IntegerBasis::from_columns({{1, 1, 0}, {0, 1, 1}})) == 3);
}
