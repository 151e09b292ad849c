#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string_view>

#include "evote/common/hash.hpp"

namespace evote {

// Source of uniform integers. Every nondeterministic step in the library
// draws from one of these, so an election is a pure function of its seed.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform in [0, bound). bound must be positive.
  virtual mpz_class below(const mpz_class& bound) = 0;

  virtual std::uint64_t below_u64(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 bits of precision.
  double unit();
};

// Deterministic hash-based generator: SHA-256 in counter mode over a key
// derived from (seed material, label). Output is bit-exact across platforms.
class Drbg final : public RandomSource {
 public:
  explicit Drbg(std::uint64_t seed, std::string_view label = {});
  Drbg(std::span<const std::uint8_t> seed_material, std::string_view label);

  // Independent child stream; the parent's position does not affect it.
  Drbg fork(std::string_view label) const;
  Drbg fork(std::string_view label, std::uint64_t index) const;

  void fill(std::span<std::uint8_t> out);
  mpz_class below(const mpz_class& bound) override;
  std::uint64_t below_u64(std::uint64_t bound) override;

 private:
  explicit Drbg(const Digest& key) : key_(key) {}
  void refill();

  Digest key_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = block_.size();
};

}  // namespace evote
