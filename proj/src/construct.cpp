#include "subsum/construct.hpp"

#include "subsum/errors.hpp"

namespace subsum {

std::string to_string(const Variant& v) {
  std::string s = v.shape == Shape::classic ? "classic" : "extrarow";
  if (v.flip == Flip::on) s += "+flip";
  if (v.constant == Constant::with_p) s += "+p";
  return s;
}

Variant parse_variant(std::string_view text) {
  Variant v;
  std::string_view rest = text;
  if (rest.starts_with("classic")) {
    v.shape = Shape::classic;
    rest.remove_prefix(7);
  } else if (rest.starts_with("extrarow")) {
    v.shape = Shape::extra_row;
    rest.remove_prefix(8);
  } else {
    throw ValidationError("unknown variant \"" + std::string(text) + "\"");
  }
  if (rest.starts_with("+flip")) {
    v.flip = Flip::on;
    rest.remove_prefix(5);
  }
  if (rest == "+p") {
    v.constant = Constant::with_p;
    rest = {};
  }
  if (!rest.empty()) throw ValidationError("unknown variant \"" + std::string(text) + "\"");
  return v;
}

std::vector<Variant> without_p_variants() {
  return {{Shape::classic, Constant::without_p, Flip::on},
          {Shape::classic, Constant::without_p, Flip::off},
          {Shape::extra_row, Constant::without_p, Flip::off}};
}

std::vector<Variant> with_p_variants() {
  auto vs = without_p_variants();
  for (auto& v : vs) v.constant = Constant::with_p;
  return vs;
}

std::vector<Variant> six_variants() {
  auto vs = without_p_variants();
  for (const auto& v : with_p_variants()) vs.push_back(v);
  return vs;
}

mpz_class large_constant(std::size_t n) {
  if (n == 0) throw ValidationError("large_constant requires n >= 1");
  mpz_class radicand = mpz_class(n) * mpz_class(n);
  radicand <<= n;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  return root + 1;
}

FlipResult apply_flip(const ObservedInstance& observed) {
  mpz_class total = 0;
  for (const auto& w : observed.weights) total += w;
  FlipResult out{observed, {false, observed.b0}};
  if (2 * observed.b0 < total) {
    out.instance.b0 = total - observed.b0;
    out.record.flipped = true;
  }
  return out;
}

BitVector unflip_solution(const BitVector& e, const FlipRecord& record) {
  if (!record.flipped) return e;
  BitVector out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[i] ? 0 : 1;
  return out;
}

IntegerBasis build_basis(const ObservedInstance& observed, const Variant& variant) {
  const std::size_t n = observed.n;
  if (observed.weights.size() != n) throw LengthMismatch("instance has " + std::to_string(observed.weights.size()) + " weights, expected " + std::to_string(n));
  const std::size_t header = variant.shape == Shape::extra_row ? 2 : 1;
  IntegerBasis basis(n + header, n + 1);
  const mpz_class scale = variant.constant == Constant::with_p ? large_constant(n) : mpz_class(1);

  basis(0, 0) = scale * observed.b0;
  for (std::size_t i = 0; i < n; ++i) basis(0, i + 1) = -scale * observed.weights[i];
  if (variant.shape == Shape::extra_row) basis(1, 0) = 1;
  for (std::size_t i = 0; i < n; ++i) basis(header + i, i + 1) = 1;
  return basis;
}

}  // namespace subsum
