#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace subsum {

// A 0/1 selection vector.
using BitVector = std::vector<std::uint8_t>;

// SplitMix64: 64-bit state, golden-gamma increment, two xor-shift-multiply
// rounds. Streams are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform on [0, bound) by rejection; bound must be nonzero.
  std::uint64_t bounded(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Uniform on [0, 2^bits): ceil(bits/64) words, most significant first, with
// the leading word masked to the remaining bit count.
mpz_class uniform_bits(SplitMix64& rng, unsigned bits);

// Uniform on [1, 2^exponent].
mpz_class uniform_weight(SplitMix64& rng, unsigned exponent);

struct TheoreticalDensity {
  double epsilon;  // exponent = ceil((1/2 + epsilon) n^2)
};
struct ExplicitDensity {
  unsigned exponent;
};

struct InstanceParams {
  std::size_t n = 1;
  std::variant<TheoreticalDensity, ExplicitDensity> density = ExplicitDensity{1};
  std::uint64_t seed = 0;
  // When set, e has exactly this many ones instead of iid Bernoulli(1/2).
  std::optional<std::size_t> hamming_weight;

  void validate() const;
  unsigned exponent() const;
};

// ceil(n^2 / 2), the exponent of B = 2^{n^2/2}.
unsigned half_square_exponent(std::size_t n);

struct GroundTruth {
  BitVector e;
  std::vector<mpz_class> clean_weights;
  std::vector<int> noise;  // entries in {-1, 0, 1}

  bool noisy() const;
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

// What the solver is allowed to see.
struct ObservedInstance {
  std::size_t n = 0;
  mpz_class b0;
  std::vector<mpz_class> weights;

  friend bool operator==(const ObservedInstance&, const ObservedInstance&) = default;
};

struct GeneratedInstance {
  GroundTruth truth;
  ObservedInstance observed;
};

GeneratedInstance gen_instance(const InstanceParams& params);

// Perturbs every observed weight by an independent uniform draw from
// {-1, 0, 1}; B0 stays exact. Throws AlreadyNoisy if noise is present.
GeneratedInstance add_noise(const GeneratedInstance& instance, std::uint64_t seed);

// On-disk form of one instance. exponent and seed are informational.
struct InstanceRecord {
  std::optional<unsigned> exponent;
  std::optional<std::uint64_t> seed;
  std::optional<GroundTruth> truth;
  ObservedInstance observed;

  friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

void save(const InstanceRecord& record, const std::filesystem::path& path);
InstanceRecord load(const std::filesystem::path& path);

std::string to_json(const InstanceRecord& record);
InstanceRecord from_json(const std::string& text);

}  // namespace subsum
