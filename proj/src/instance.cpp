#include "subsum/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include <json.hpp>

#include "subsum/errors.hpp"

namespace subsum {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::bounded(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("bounded() requires a positive bound");
  // 2^64 mod bound; draws below it are rejected.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

mpz_class uniform_bits(SplitMix64& rng, unsigned bits) {
  mpz_class value = 0;
  if (bits == 0) return value;
  const unsigned words = (bits + 63) / 64;
  const unsigned lead_bits = bits - 64 * (words - 1);
  for (unsigned w = 0; w < words; ++w) {
    std::uint64_t word = rng.next();
    if (w == 0 && lead_bits < 64) word &= (std::uint64_t{1} << lead_bits) - 1;
    value <<= 64;
    mpz_class part;
    mpz_import(part.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
    value += part;
  }
  return value;
}

mpz_class uniform_weight(SplitMix64& rng, unsigned exponent) {
  return uniform_bits(rng, exponent) + 1;
}

void InstanceParams::validate() const {
  if (n == 0) throw ValidationError("n must be at least 1");
  if (const auto* t = std::get_if<TheoreticalDensity>(&density)) {
    if (!(t->epsilon > 0)) throw ValidationError("epsilon must be positive");
  } else if (std::get<ExplicitDensity>(density).exponent == 0) {
    throw ValidationError("exponent must be at least 1");
  }
  if (hamming_weight && *hamming_weight > n)
    throw ValidationError("Hamming weight exceeds n");
}

unsigned InstanceParams::exponent() const {
  if (const auto* t = std::get_if<TheoreticalDensity>(&density)) {
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    // Absorb rounding noise so exact products like 0.6 * 100 are not bumped up.
    return static_cast<unsigned>(std::ceil((0.5 + t->epsilon) * nn - 1e-9));
  }
  return std::get<ExplicitDensity>(density).exponent;
}

unsigned half_square_exponent(std::size_t n) {
  return static_cast<unsigned>((n * n + 1) / 2);
}

bool GroundTruth::noisy() const {
  return std::any_of(noise.begin(), noise.end(), [](int x) { return x != 0; });
}

GeneratedInstance gen_instance(const InstanceParams& params) {
  params.validate();
  const unsigned exponent = params.exponent();
  SplitMix64 rng(params.seed);

  GeneratedInstance out;
  auto& truth = out.truth;
  truth.clean_weights.reserve(params.n);
  for (std::size_t i = 0; i < params.n; ++i) truth.clean_weights.push_back(uniform_weight(rng, exponent));

  truth.e.assign(params.n, 0);
  if (params.hamming_weight) {
    // Partial Fisher-Yates over the index set.
    std::vector<std::size_t> idx(params.n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < *params.hamming_weight; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.bounded(params.n - i));
      std::swap(idx[i], idx[j]);
      truth.e[idx[i]] = 1;
    }
  } else {
    for (auto& bit : truth.e) bit = static_cast<std::uint8_t>(rng.next() >> 63);
  }
  truth.noise.assign(params.n, 0);

  auto& obs = out.observed;
  obs.n = params.n;
  obs.weights = truth.clean_weights;
  obs.b0 = 0;
  for (std::size_t i = 0; i < params.n; ++i)
    if (truth.e[i]) obs.b0 += truth.clean_weights[i];
  return out;
}

GeneratedInstance add_noise(const GeneratedInstance& instance, std::uint64_t seed) {
  if (instance.truth.noisy()) throw AlreadyNoisy("instance already carries noise");
  GeneratedInstance out = instance;
  SplitMix64 rng(seed);
  const std::size_t n = out.observed.n;
  out.truth.noise.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int eps = static_cast<int>(rng.bounded(3)) - 1;
    out.truth.noise[i] = eps;
    out.observed.weights[i] = out.truth.clean_weights[i] + eps;
  }
  return out;
}

namespace {

using nlohmann::ordered_json;

std::string decimal(const mpz_class& x) { return x.get_str(10); }

mpz_class parse_decimal(const ordered_json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + ": expected a decimal string");
  const auto s = j.get<std::string>();
  const bool digits = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!digits) throw ParseError(std::string(what) + ": malformed non-negative decimal \"" + s + "\"");
  return mpz_class(s, 10);
}

std::vector<mpz_class> parse_decimal_array(const ordered_json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw ParseError(std::string(what) + ": expected an array of length " + std::to_string(n));
  std::vector<mpz_class> out;
  out.reserve(n);
  for (const auto& item : j) out.push_back(parse_decimal(item, what));
  return out;
}

template <typename T>
std::vector<T> parse_small_array(const ordered_json& j, std::size_t n, int lo, int hi, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw ParseError(std::string(what) + ": expected an array of length " + std::to_string(n));
  std::vector<T> out;
  out.reserve(n);
  for (const auto& item : j) {
    if (!item.is_number_integer()) throw ParseError(std::string(what) + ": expected integers");
    const auto v = item.get<long long>();
    if (v < lo || v > hi) throw ParseError(std::string(what) + ": value out of range");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

}  // namespace

std::string to_json(const InstanceRecord& record) {
  ordered_json j;
  const auto& obs = record.observed;
  j["n"] = obs.n;
  if (record.exponent) j["exponent"] = *record.exponent;
  if (record.seed) j["seed"] = *record.seed;
  j["B0"] = decimal(obs.b0);
  j["weights"] = ordered_json::array();
  for (const auto& w : obs.weights) j["weights"].push_back(decimal(w));
  if (record.truth) {
    const auto& t = *record.truth;
    j["e"] = ordered_json::array();
    for (auto bit : t.e) j["e"].push_back(static_cast<int>(bit));
    j["clean_weights"] = ordered_json::array();
    for (const auto& w : t.clean_weights) j["clean_weights"].push_back(decimal(w));
    j["noise"] = t.noise;
  }
  return j.dump(2) + "\n";
}

InstanceRecord from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  if (!j.is_object()) throw ParseError("instance file must hold a JSON object");
  static const char* const known[] = {"n", "exponent", "seed", "B0", "weights", "e", "clean_weights", "noise"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ParseError("unknown key \"" + key + "\"");
  }
  for (const char* required : {"n", "B0", "weights"})
    if (!j.contains(required)) throw ParseError(std::string("missing key \"") + required + "\"");

  InstanceRecord rec;
  if (!j["n"].is_number_unsigned()) throw ParseError("n must be a non-negative integer");
  const auto n = j["n"].get<std::size_t>();
  rec.observed.n = n;
  rec.observed.b0 = parse_decimal(j["B0"], "B0");
  rec.observed.weights = parse_decimal_array(j["weights"], n, "weights");
  if (j.contains("exponent")) {
    if (!j["exponent"].is_number_unsigned()) throw ParseError("exponent must be a non-negative integer");
    rec.exponent = j["exponent"].get<unsigned>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
    rec.seed = j["seed"].get<std::uint64_t>();
  }

  const bool has_e = j.contains("e");
  if (!has_e && (j.contains("clean_weights") || j.contains("noise")))
    throw ParseError("clean_weights/noise given without e");
  if (has_e) {
    GroundTruth t;
    t.e = parse_small_array<std::uint8_t>(j["e"], n, 0, 1, "e");
    t.noise = j.contains("noise") ? parse_small_array<int>(j["noise"], n, -1, 1, "noise") : std::vector<int>(n, 0);
    if (j.contains("clean_weights")) {
      t.clean_weights = parse_decimal_array(j["clean_weights"], n, "clean_weights");
    } else {
      t.clean_weights.reserve(n);
      for (std::size_t i = 0; i < n; ++i) t.clean_weights.push_back(rec.observed.weights[i] - t.noise[i]);
    }
    mpz_class sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (t.clean_weights[i] + t.noise[i] != rec.observed.weights[i])
        throw ParseError("weights differ from clean_weights + noise at index " + std::to_string(i));
      if (t.e[i]) sum += t.clean_weights[i];
    }
    if (sum != rec.observed.b0) throw ParseError("B0 is not the e-subset sum of clean_weights");
    rec.truth = std::move(t);
  }
  return rec;
}

void save(const InstanceRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(record);
  if (!out) throw IoError("failed writing " + path.string());
}

InstanceRecord load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace subsum
