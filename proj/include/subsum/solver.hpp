#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "subsum/construct.hpp"
#include "subsum/instance.hpp"
#include "subsum/lll.hpp"

namespace subsum {

enum class SolveStatus { Solved, NoCandidate };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::NoCandidate;
  std::optional<BitVector> e;  // already unflipped
  std::optional<std::size_t> matched_column;
  std::optional<mpz_class> k;
  bool flipped = false;
  mpz_class norm_bound_m;
  mpz_class first_vector_norm_sq;
  bool timed_out = false;
  std::chrono::nanoseconds wall_time{0};

  bool first_norm_within_m() const { return first_vector_norm_sq <= norm_bound_m * norm_bound_m; }
};

struct CandidatePattern {
  Shape shape = Shape::extra_row;
  mpz_class noise_tolerance = 0;  // 0 when noiseless, n when noisy
};

struct Candidate {
  std::size_t column;
  mpz_class k;  // positive scale factor
  BitVector e;
  mpz_class f0;  // header coordinate after sign normalization

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Scans every column x (and -x) for the target pattern k*[f0; (1;) e] with
// |f0| <= tolerance * k. Classic shape needs a nonzero payload; the
// extra-row shape takes k from its second coordinate, so e = 0 is allowed.
// Throws ShapeMismatch when the row count does not fit the shape.
std::vector<Candidate> extract_candidates(const IntegerBasis& reduced, const CandidatePattern& pattern);

// |sum_i w_i e_i - B0| <= tolerance.
bool verify(const ObservedInstance& observed, const BitVector& e, const mpz_class& tolerance);

// The first-vector norm bound m: classic ceil(2^{n/2} n^{1/2}), extra-row
// twice that, noisy three times that (each rounded up after scaling).
mpz_class norm_bound(std::size_t n, Shape shape, bool noisy);

struct SolveOptions {
  std::optional<std::chrono::nanoseconds> time_limit;
};

SolveReport solve(const ObservedInstance& observed, const Variant& variant, bool noisy,
                  const SolveOptions& options = {});

}  // namespace subsum
