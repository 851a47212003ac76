#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "subsum/instance.hpp"
#include "subsum/lll.hpp"

namespace subsum {

enum class Shape { classic, extra_row };
enum class Constant { without_p, with_p };
enum class Flip { off, on };

struct Variant {
  Shape shape = Shape::extra_row;
  Constant constant = Constant::without_p;
  Flip flip = Flip::off;

  friend bool operator==(const Variant&, const Variant&) = default;
};

// "classic+flip+p", "classic", "extrarow+p", ... Shape first, then "+flip",
// then "+p".
std::string to_string(const Variant& v);
Variant parse_variant(std::string_view text);  // throws ValidationError

// The six methods compared in the experiments: classic with and without
// test-and-flip, and the extra-row lattice, each with and without p.
std::vector<Variant> six_variants();
std::vector<Variant> without_p_variants();
std::vector<Variant> with_p_variants();

// Smallest integer strictly greater than n * 2^{n/2}: isqrt(n^2 2^n) + 1.
mpz_class large_constant(std::size_t n);

struct FlipRecord {
  bool flipped = false;
  mpz_class original_b0;
};

struct FlipResult {
  ObservedInstance instance;
  FlipRecord record;
};

// Test-and-flip: keeps the instance when 2 B0 >= sum of weights, otherwise
// replaces B0 by (sum of weights) - B0.
FlipResult apply_flip(const ObservedInstance& observed);

BitVector unflip_solution(const BitVector& e, const FlipRecord& record);

// Generator matrix with the lattice basis in its columns. Row 0 is
// (B0, -B_1, ..., -B_n), times p for Constant::with_p; the extra-row shape
// inserts (1, 0, ..., 0) as row 1; an identity block fills the rest.
IntegerBasis build_basis(const ObservedInstance& observed, const Variant& variant);

}  // namespace subsum
