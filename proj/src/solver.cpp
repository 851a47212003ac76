#include "subsum/solver.hpp"

#include <string>

#include "subsum/errors.hpp"

namespace subsum {

const char* to_string(SolveStatus status) {
  return status == SolveStatus::Solved ? "Solved" : "NoCandidate";
}

namespace {

std::optional<Candidate> match_column(std::span<const mpz_class> x, int sign, const CandidatePattern& pattern,
                                      std::size_t column) {
  const std::size_t header = pattern.shape == Shape::extra_row ? 2 : 1;
  const std::size_t n = x.size() - header;
  mpz_class k = 0;
  if (pattern.shape == Shape::extra_row) {
    k = sign * x[1];
  } else {
    for (std::size_t i = 0; i < n && k == 0; ++i) k = sign * x[header + i];
  }
  if (k <= 0) return std::nullopt;

  Candidate c{column, k, BitVector(n, 0), sign * x[0]};
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class v = sign * x[header + i];
    if (v == 0) continue;
    if (v != k) return std::nullopt;
    c.e[i] = 1;
  }
  if (abs(c.f0) > pattern.noise_tolerance * k) return std::nullopt;
  return c;
}

}  // namespace

std::vector<Candidate> extract_candidates(const IntegerBasis& reduced, const CandidatePattern& pattern) {
  const std::size_t header = pattern.shape == Shape::extra_row ? 2 : 1;
  if (reduced.cols() == 0 || reduced.rows() != reduced.cols() - 1 + header)
    throw ShapeMismatch("basis rows do not match the " +
                        std::string(pattern.shape == Shape::extra_row ? "extra-row" : "classic") + " layout");
  if (pattern.noise_tolerance < 0 || pattern.noise_tolerance > reduced.cols() - 1)
    throw ValidationError("noise tolerance must lie in [0, n]");

  std::vector<Candidate> out;
  for (std::size_t col = 0; col < reduced.cols(); ++col) {
    for (int sign : {1, -1}) {
      if (auto c = match_column(reduced.column(col), sign, pattern, col)) {
        out.push_back(std::move(*c));
        break;
      }
    }
  }
  return out;
}

bool verify(const ObservedInstance& observed, const BitVector& e, const mpz_class& tolerance) {
  if (e.size() != observed.weights.size())
    throw LengthMismatch("selection has length " + std::to_string(e.size()) + ", instance has " +
                         std::to_string(observed.weights.size()) + " weights");
  mpz_class sum = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) sum += observed.weights[i];
  return abs(sum - observed.b0) <= tolerance;
}

mpz_class norm_bound(std::size_t n, Shape shape, bool noisy) {
  const unsigned factor = noisy ? 3 : (shape == Shape::extra_row ? 2 : 1);
  // ceil(factor * sqrt(2^n * n)) = ceil(sqrt(factor^2 * 2^n * n))
  mpz_class radicand = mpz_class(factor * factor) * mpz_class(n);
  radicand <<= n;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  if (root * root != radicand) ++root;
  return root;
}

SolveReport solve(const ObservedInstance& observed, const Variant& variant, bool noisy, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = observed.n;
  const mpz_class tolerance = noisy ? mpz_class(n) : mpz_class(0);

  SolveReport report;
  report.norm_bound_m = norm_bound(n, variant.shape, noisy);

  FlipResult prepared{observed, {false, observed.b0}};
  if (variant.flip == Flip::on) prepared = apply_flip(observed);
  report.flipped = prepared.record.flipped;

  const auto finish = [&] {
    report.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
    return report;
  };

  IntegerBasis basis = build_basis(prepared.instance, variant);
  // A zero B0 leaves the classic generator with a zero column; the only
  // lattice point it could encode is e = 0, which the classic pattern cannot
  // express.
  if (variant.shape == Shape::classic && prepared.instance.b0 == 0) return finish();

  std::optional<ReductionParams::Deadline> deadline;
  if (options.time_limit) deadline = start + *options.time_limit;
  IntegerBasis reduced;
  try {
    reduced = lll_reduce(basis, ReductionParams(mpq_class(3, 4), deadline));
  } catch (const Timeout&) {
    report.timed_out = true;
    return finish();
  }
  report.first_vector_norm_sq = squared_norm(reduced.column(0));

  for (auto& c : extract_candidates(reduced, {variant.shape, tolerance})) {
    BitVector e = unflip_solution(c.e, prepared.record);
    if (!verify(observed, e, tolerance)) continue;
    report.status = SolveStatus::Solved;
    report.e = std::move(e);
    report.matched_column = c.column;
    report.k = std::move(c.k);
    break;
  }
  return finish();
}

}  // namespace subsum
