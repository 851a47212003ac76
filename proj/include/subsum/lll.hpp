#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace subsum {

// Column-major matrix of big integers; each column is one lattice generator.
class IntegerBasis {
 public:
  IntegerBasis() = default;
  IntegerBasis(std::size_t rows, std::size_t cols);

  static IntegerBasis from_rows(const std::vector<std::vector<mpz_class>>& rows);
  static IntegerBasis from_columns(const std::vector<std::vector<mpz_class>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const mpz_class& operator()(std::size_t r, std::size_t c) const {
    return entries_[c * rows_ + r];
  }
  mpz_class& operator()(std::size_t r, std::size_t c) { return entries_[c * rows_ + r]; }

  std::span<const mpz_class> column(std::size_t c) const {
    return {entries_.data() + c * rows_, rows_};
  }
  std::span<mpz_class> column(std::size_t c) { return {entries_.data() + c * rows_, rows_}; }

  void swap_columns(std::size_t a, std::size_t b);

  friend bool operator==(const IntegerBasis& a, const IntegerBasis& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> entries_;
};

// Exact Gram-Schmidt data. mu is square (cols x cols), lower triangular with a
// unit diagonal; bstar[i] is the i-th orthogonalized column.
struct GramSchmidtState {
  std::vector<std::vector<mpq_class>> mu;
  std::vector<mpq_class> bstar_norms_sq;
  std::vector<std::vector<mpq_class>> bstar;
};

// Lovász parameter delta in (1/4, 1), plus an optional wall-clock deadline
// after which reduction aborts with Timeout.
class ReductionParams {
 public:
  using Deadline = std::chrono::steady_clock::time_point;

  ReductionParams() : delta_(3, 4) {}
  explicit ReductionParams(mpq_class delta, std::optional<Deadline> deadline = std::nullopt);

  const mpq_class& delta() const { return delta_; }
  const std::optional<Deadline>& deadline() const { return deadline_; }

 private:
  mpq_class delta_;
  std::optional<Deadline> deadline_;
};

mpz_class dot(std::span<const mpz_class> a, std::span<const mpz_class> b);
mpz_class squared_norm(std::span<const mpz_class> v);

GramSchmidtState gram_schmidt(const IntegerBasis& basis);

/// LLL-reduce the columns of `basis`.
///
/// Uses the integral formulation (Gram determinants d_i and scaled
/// coefficients lambda_{i,j} = d_j * mu_{i,j}), so every intermediate value is
/// an exact integer. Size-reduction is against column k-1 first, then the
/// Lovász test decides between swapping and finishing the size reduction of
/// column k. Throws DependentColumns when the columns are not independent.
IntegerBasis lll_reduce(const IntegerBasis& basis, const ReductionParams& params = {});

// True iff both bases generate the same lattice. Throws ShapeMismatch when
// the dimensions differ.
bool same_lattice(const IntegerBasis& a, const IntegerBasis& b);

bool is_size_reduced(const IntegerBasis& basis);
bool satisfies_lovasz(const IntegerBasis& basis, const ReductionParams& params = {});

// det(B^T B), computed by fraction-free elimination.
mpz_class gram_determinant(const IntegerBasis& basis);

}  // namespace subsum
