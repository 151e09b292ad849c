#include "evote/common/random.hpp"

#include <algorithm>
#include <vector>

#include "evote/common/errors.hpp"

namespace evote {

std::uint64_t RandomSource::below_u64(std::uint64_t bound) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return below(mpz_class(static_cast<unsigned long>(bound))).get_ui();
}

double RandomSource::unit() {
  constexpr std::uint64_t kSpan = std::uint64_t{1} << 53;
  return static_cast<double>(below_u64(kSpan)) / static_cast<double>(kSpan);
}

namespace {

Digest derive_key(std::span<const std::uint8_t> material, std::string_view label) {
  Encoder enc;
  enc.put_string("evote/drbg/v1").put_bytes(material).put_string(label);
  return sha256(enc);
}

}  // namespace

Drbg::Drbg(std::uint64_t seed, std::string_view label) {
  Encoder seed_enc;
  seed_enc.put_uint(seed);
  key_ = derive_key(seed_enc.bytes(), label);
}

Drbg::Drbg(std::span<const std::uint8_t> seed_material, std::string_view label)
    : key_(derive_key(seed_material, label)) {}

Drbg Drbg::fork(std::string_view label) const { return Drbg(derive_key(key_, label)); }

Drbg Drbg::fork(std::string_view label, std::uint64_t index) const {
  Encoder enc;
  enc.put_bytes(key_).put_uint(index);
  return Drbg(derive_key(enc.bytes(), label));
}

void Drbg::refill() {
  Encoder enc;
  enc.put_bytes(key_).put_uint(counter_++);
  block_ = sha256(enc);
  used_ = 0;
}

void Drbg::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), n, out.begin() + static_cast<std::ptrdiff_t>(pos));
    used_ += n;
    pos += n;
  }
}

mpz_class Drbg::below(const mpz_class& bound) {
  if (sgn(bound) <= 0) throw InvalidArgument("random bound must be positive");
  if (bound == 1) return 0;
  mpz_class top = bound - 1;
  std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  std::size_t nbytes = (bits + 7) / 8;
  auto mask = static_cast<std::uint8_t>(0xff >> (nbytes * 8 - bits));
  std::vector<std::uint8_t> buf(nbytes);
  for (;;) {
    fill(buf);
    buf[0] &= mask;
    mpz_class candidate = from_magnitude(buf);
    if (candidate < bound) return candidate;
  }
}

std::uint64_t Drbg::below_u64(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("random bound must be positive");
  if (bound == 1) return 0;
  std::uint64_t top = bound - 1;
  int bits = 64 - __builtin_clzll(top);
  std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  std::uint8_t buf[8];
  for (;;) {
    fill(buf);
    std::uint64_t v = 0;
    for (auto b : buf) v = (v << 8) | b;
    v &= mask;
    if (v < bound) return v;
  }
}

}  // namespace evote
