#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "subsum/instance.hpp"
#include "subsum/lll.hpp"

namespace subsum::oracle {

// Every e with |sum w_i e_i - B0| <= tolerance, in lexicographic order.
// Meet-in-the-middle over two halves of the index set; n <= 34.
std::vector<BitVector> brute_force_subset_sum(const std::vector<mpz_class>& weights, const mpz_class& b0,
                                              const mpz_class& tolerance);

struct ShortVector {
  std::vector<mpz_class> vector;
  mpz_class norm_sq;
};

// Minimum-norm nonzero combination over all coefficient tuples with
// |c_i| <= coeff_bound. At most 6 columns.
ShortVector shortest_vector_brute(const IntegerBasis& basis, std::uint64_t coeff_bound);

// Number of z in {1..side}^n with sum a_i z_i = rhs. n <= 5, side <= 8.
std::uint64_t affine_cube_count(std::size_t n, std::uint64_t side, const std::vector<std::int64_t>& coeffs,
                                std::int64_t rhs);

}  // namespace subsum::oracle
