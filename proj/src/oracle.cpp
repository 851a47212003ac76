#include "subsum/oracle.hpp"

#include <algorithm>
#include <string>

#include "subsum/errors.hpp"

namespace subsum::oracle {

namespace {

struct HalfSum {
  mpz_class sum;
  std::uint32_t mask;
};

std::vector<HalfSum> half_sums(const std::vector<mpz_class>& weights, std::size_t begin, std::size_t end) {
  const std::size_t len = end - begin;
  std::vector<HalfSum> sums(std::size_t{1} << len);
  sums[0] = {0, 0};
  // sums[m | bit] = sums[m] + w_i
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t m = 0; m < bit; ++m)
      sums[m | bit] = {sums[m].sum + weights[begin + i], static_cast<std::uint32_t>(m | bit)};
  }
  return sums;
}

}  // namespace

std::vector<BitVector> brute_force_subset_sum(const std::vector<mpz_class>& weights, const mpz_class& b0,
                                              const mpz_class& tolerance) {
  const std::size_t n = weights.size();
  if (n > 34) throw TooLarge("subset-sum enumeration supports n <= 34, got " + std::to_string(n));
  if (tolerance < 0) throw ValidationError("tolerance must be non-negative");

  const std::size_t split = n / 2;
  const auto left = half_sums(weights, 0, split);
  auto right = half_sums(weights, split, n);
  std::sort(right.begin(), right.end(), [](const HalfSum& a, const HalfSum& b) { return a.sum < b.sum; });

  std::vector<BitVector> out;
  for (const auto& l : left) {
    const mpz_class lo = b0 - tolerance - l.sum;
    const mpz_class hi = b0 + tolerance - l.sum;
    auto it = std::lower_bound(right.begin(), right.end(), lo,
                               [](const HalfSum& h, const mpz_class& v) { return h.sum < v; });
    for (; it != right.end() && it->sum <= hi; ++it) {
      BitVector e(n, 0);
      for (std::size_t i = 0; i < split; ++i) e[i] = (l.mask >> i) & 1U;
      for (std::size_t i = split; i < n; ++i) e[i] = (it->mask >> (i - split)) & 1U;
      out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ShortVector shortest_vector_brute(const IntegerBasis& basis, std::uint64_t coeff_bound) {
  const std::size_t d = basis.cols();
  const std::size_t m = basis.rows();
  if (d > 6) throw TooLarge("shortest-vector enumeration supports at most 6 columns");
  if (d == 0 || coeff_bound == 0) throw ValidationError("need at least one column and a positive coefficient bound");

  const auto bound = static_cast<long>(coeff_bound);
  std::vector<long> coeff(d, -bound);
  // Running vector for the current coefficients, updated one odometer step at a time.
  std::vector<mpz_class> v(m, 0);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < m; ++r) v[r] -= bound * basis(r, c);

  ShortVector best;
  bool found = false;
  for (;;) {
    if (std::any_of(coeff.begin(), coeff.end(), [](long x) { return x != 0; })) {
      const mpz_class norm = squared_norm(v);
      if (norm != 0 && (!found || norm < best.norm_sq)) {
        best = {v, norm};
        found = true;
      }
    }
    std::size_t pos = 0;
    while (pos < d && coeff[pos] == bound) {
      // wrap this digit back to -bound
      for (std::size_t r = 0; r < m; ++r) v[r] -= 2 * bound * basis(r, pos);
      coeff[pos] = -bound;
      ++pos;
    }
    if (pos == d) break;
    ++coeff[pos];
    for (std::size_t r = 0; r < m; ++r) v[r] += basis(r, pos);
  }
  if (!found) throw DependentColumns("no nonzero combination found");
  return best;
}

std::uint64_t affine_cube_count(std::size_t n, std::uint64_t side, const std::vector<std::int64_t>& coeffs,
                                std::int64_t rhs) {
  if (n > 5 || side > 8) throw TooLarge("affine_cube_count supports n <= 5 and side <= 8");
  if (n == 0 || side == 0) throw ValidationError("n and side must be positive");
  if (coeffs.size() != n) throw LengthMismatch("expected " + std::to_string(n) + " coefficients");
  if (std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t a) { return a == 0; }))
    throw ValidationError("hyperplane coefficients must not all be zero");

  std::vector<std::int64_t> z(n, 1);
  std::uint64_t count = 0;
  for (;;) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += coeffs[i] * z[i];
    if (s == rhs) ++count;
    std::size_t pos = 0;
    while (pos < n && z[pos] == static_cast<std::int64_t>(side)) z[pos++] = 1;
    if (pos == n) break;
    ++z[pos];
  }
  return count;
}

}  // namespace subsum::oracle
