#include "subsum/lll.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "subsum/errors.hpp"

namespace subsum {

IntegerBasis::IntegerBasis(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntegerBasis IntegerBasis::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  if (rows.empty()) return {};
  IntegerBasis basis(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != basis.cols_) throw ShapeMismatch("ragged row " + std::to_string(r));
    for (std::size_t c = 0; c < basis.cols_; ++c) basis(r, c) = rows[r][c];
  }
  return basis;
}

IntegerBasis IntegerBasis::from_columns(const std::vector<std::vector<mpz_class>>& cols) {
  if (cols.empty()) return {};
  IntegerBasis basis(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != basis.rows_) throw ShapeMismatch("ragged column " + std::to_string(c));
    std::copy(cols[c].begin(), cols[c].end(), basis.column(c).begin());
  }
  return basis;
}

void IntegerBasis::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(column(a).begin(), column(a).end(), column(b).begin());
}

ReductionParams::ReductionParams(mpq_class delta, std::optional<Deadline> deadline)
    : delta_(std::move(delta)), deadline_(deadline) {
  delta_.canonicalize();
  if (delta_ <= mpq_class(1, 4) || delta_ >= 1)
    throw ValidationError("delta must lie strictly between 1/4 and 1");
}

mpz_class dot(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  if (a.size() != b.size()) throw ShapeMismatch("dot product of vectors with different lengths");
  mpz_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return acc;
}

mpz_class squared_norm(std::span<const mpz_class> v) { return dot(v, v); }

GramSchmidtState gram_schmidt(const IntegerBasis& basis) {
  const std::size_t d = basis.cols();
  const std::size_t m = basis.rows();
  GramSchmidtState gs;
  gs.mu.assign(d, std::vector<mpq_class>(d, mpq_class(0)));
  gs.bstar.assign(d, std::vector<mpq_class>(m, mpq_class(0)));
  gs.bstar_norms_sq.assign(d, mpq_class(0));

  for (std::size_t i = 0; i < d; ++i) {
    auto& star = gs.bstar[i];
    for (std::size_t r = 0; r < m; ++r) star[r] = basis(r, i);
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class proj = 0;
      for (std::size_t r = 0; r < m; ++r) proj += mpq_class(basis(r, i)) * gs.bstar[j][r];
      proj /= gs.bstar_norms_sq[j];
      gs.mu[i][j] = proj;
      if (proj != 0)
        for (std::size_t r = 0; r < m; ++r) star[r] -= proj * gs.bstar[j][r];
    }
    gs.mu[i][i] = 1;
    mpq_class norm = 0;
    for (const auto& x : star) norm += x * x;
    if (norm == 0) throw DependentColumns("column " + std::to_string(i) + " lies in the span of earlier columns");
    gs.bstar_norms_sq[i] = norm;
  }
  return gs;
}

namespace {

// Integral LLL state. dets_[i + 1] holds d_i = prod_{j<=i} |b*_j|^2, with
// dets_[0] = d_{-1} = 1.
class IntegralLll {
 public:
  IntegralLll(IntegerBasis basis, const ReductionParams& params)
      : b_(std::move(basis)),
        params_(params),
        num_(params.delta().get_num()),
        den_(params.delta().get_den()),
        dets_(b_.cols() + 1),
        lambda_(b_.cols(), std::vector<mpz_class>(b_.cols())) {}

  IntegerBasis run() {
    const std::size_t d = b_.cols();
    if (d == 0) throw ValidationError("basis has no columns");
    det(-1) = 1;
    det(0) = squared_norm(b_.column(0));
    if (det(0) == 0) throw DependentColumns("column 0 is zero");

    std::size_t k = 1;
    std::size_t kmax = 0;
    while (k < d) {
      check_deadline();
      if (k > kmax) {
        kmax = k;
        incorporate(k);
      }
      reduce(k, k - 1);
      if (lovasz_fails(k)) {
        swap(k, kmax);
        k = std::max<std::size_t>(1, k - 1);
        continue;
      }
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
    return std::move(b_);
  }

 private:
  mpz_class& det(std::ptrdiff_t i) { return dets_[static_cast<std::size_t>(i + 1)]; }

  void check_deadline() const {
    if (params_.deadline() && std::chrono::steady_clock::now() > *params_.deadline())
      throw Timeout("lattice reduction exceeded its time budget");
  }

  // Computes lambda_{k,j} for j < k and d_k from fresh inner products.
  void incorporate(std::size_t k) {
    const auto sk = static_cast<std::ptrdiff_t>(k);
    for (std::size_t j = 0; j <= k; ++j) {
      mpz_class u = dot(b_.column(k), b_.column(j));
      for (std::size_t i = 0; i < j; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        u = det(si) * u - lambda_[k][i] * lambda_[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), det(si - 1).get_mpz_t());
      }
      if (j < k) {
        lambda_[k][j] = std::move(u);
      } else {
        if (u == 0) throw DependentColumns("column " + std::to_string(k) + " lies in the span of earlier columns");
        det(sk) = std::move(u);
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    const mpz_class& dl = det(static_cast<std::ptrdiff_t>(l));
    mpz_class twice = 2 * lambda_[k][l];
    if (abs(twice) <= dl) return;
    // nearest integer to lambda/d_l
    mpz_class r = twice + dl;
    mpz_class denom = 2 * dl;
    mpz_fdiv_q(r.get_mpz_t(), r.get_mpz_t(), denom.get_mpz_t());

    auto target = b_.column(k);
    auto source = b_.column(l);
    for (std::size_t i = 0; i < target.size(); ++i)
      mpz_submul(target[i].get_mpz_t(), r.get_mpz_t(), source[i].get_mpz_t());
    mpz_submul(lambda_[k][l].get_mpz_t(), r.get_mpz_t(), dl.get_mpz_t());
    for (std::size_t i = 0; i < l; ++i)
      mpz_submul(lambda_[k][i].get_mpz_t(), r.get_mpz_t(), lambda_[l][i].get_mpz_t());
  }

  // den * (d_k d_{k-2} + lambda^2) < num * d_{k-1}^2  <=>  delta-Lovász violated.
  bool lovasz_fails(std::size_t k) {
    const auto sk = static_cast<std::ptrdiff_t>(k);
    const mpz_class& lam = lambda_[k][k - 1];
    mpz_class lhs = den_ * (det(sk) * det(sk - 2) + lam * lam);
    mpz_class rhs = num_ * det(sk - 1) * det(sk - 1);
    return lhs < rhs;
  }

  void swap(std::size_t k, std::size_t kmax) {
    const auto sk = static_cast<std::ptrdiff_t>(k);
    b_.swap_columns(k, k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lambda_[k][j], lambda_[k - 1][j]);
    const mpz_class lam = lambda_[k][k - 1];
    mpz_class bnew = det(sk - 2) * det(sk) + lam * lam;
    mpz_divexact(bnew.get_mpz_t(), bnew.get_mpz_t(), det(sk - 1).get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const mpz_class t = lambda_[i][k];
      mpz_class upper = det(sk) * lambda_[i][k - 1] - lam * t;
      mpz_divexact(upper.get_mpz_t(), upper.get_mpz_t(), det(sk - 1).get_mpz_t());
      lambda_[i][k] = upper;
      mpz_class lower = bnew * t + lam * upper;
      mpz_divexact(lower.get_mpz_t(), lower.get_mpz_t(), det(sk).get_mpz_t());
      lambda_[i][k - 1] = std::move(lower);
    }
    det(sk - 1) = std::move(bnew);
  }

  IntegerBasis b_;
  const ReductionParams& params_;
  mpz_class num_;
  mpz_class den_;
  std::vector<mpz_class> dets_;
  std::vector<std::vector<mpz_class>> lambda_;
};

std::vector<std::vector<mpz_class>> gram_matrix(const IntegerBasis& a, const IntegerBasis& b) {
  std::vector<std::vector<mpz_class>> g(a.cols(), std::vector<mpz_class>(b.cols()));
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) g[i][j] = dot(a.column(i), b.column(j));
  return g;
}

// Solves (A^T A) X = A^T B exactly; the columns of X are the rational
// coordinates of B's columns in terms of A's columns.
std::vector<std::vector<mpq_class>> coordinates(const IntegerBasis& a, const IntegerBasis& b) {
  const std::size_t d = a.cols();
  const std::size_t w = b.cols();
  auto g = gram_matrix(a, a);
  auto rhs = gram_matrix(a, b);
  std::vector<std::vector<mpq_class>> aug(d, std::vector<mpq_class>(d + w));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug[i][j] = g[i][j];
    for (std::size_t j = 0; j < w; ++j) aug[i][d + j] = rhs[i][j];
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && aug[pivot][col] == 0) ++pivot;
    if (pivot == d) throw DependentColumns("basis columns are linearly dependent");
    std::swap(aug[pivot], aug[col]);
    const mpq_class inv = 1 / aug[col][col];
    for (auto& x : aug[col]) x *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const mpq_class f = aug[r][col];
      for (std::size_t c = col; c < d + w; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  std::vector<std::vector<mpq_class>> x(w, std::vector<mpq_class>(d));
  for (std::size_t j = 0; j < w; ++j)
    for (std::size_t i = 0; i < d; ++i) x[j][i] = aug[i][d + j];
  return x;
}

// Every column of `b` is an integer combination of the columns of `a`.
bool contains(const IntegerBasis& a, const IntegerBasis& b) {
  const auto coords = coordinates(a, b);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (const auto& c : coords[j])
      if (c.get_den() != 1) return false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i < a.cols(); ++i) acc += coords[j][i].get_num() * a(r, i);
      if (acc != b(r, j)) return false;
    }
  }
  return true;
}

}  // namespace

IntegerBasis lll_reduce(const IntegerBasis& basis, const ReductionParams& params) {
  return IntegralLll(basis, params).run();
}

bool same_lattice(const IntegerBasis& a, const IntegerBasis& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("bases have different dimensions");
  return contains(a, b) && contains(b, a);
}

bool is_size_reduced(const IntegerBasis& basis) {
  const auto gs = gram_schmidt(basis);
  const mpq_class half(1, 2);
  for (std::size_t i = 0; i < basis.cols(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > half) return false;
  return true;
}

bool satisfies_lovasz(const IntegerBasis& basis, const ReductionParams& params) {
  const auto gs = gram_schmidt(basis);
  for (std::size_t i = 1; i < basis.cols(); ++i) {
    const mpq_class& mu = gs.mu[i][i - 1];
    if ((params.delta() - mu * mu) * gs.bstar_norms_sq[i - 1] > gs.bstar_norms_sq[i]) return false;
  }
  return true;
}

mpz_class gram_determinant(const IntegerBasis& basis) {
  auto g = gram_matrix(basis, basis);
  const std::size_t d = g.size();
  if (d == 0) return 1;
  // Bareiss elimination; every division is exact.
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (g[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < d && g[swap_row][k] == 0) ++swap_row;
      if (swap_row == d) return 0;
      std::swap(g[k], g[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        mpz_class v = g[i][j] * g[k][k] - g[i][k] * g[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        g[i][j] = std::move(v);
      }
    }
    prev = g[k][k];
  }
  return sign * g[d - 1][d - 1];
}

}  // namespace subsum
