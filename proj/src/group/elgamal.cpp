#include "evote/group/elgamal.hpp"

#include <string>

#include "evote/common/errors.hpp"

namespace evote {

namespace {

mpz_class to_mpz(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

}  // namespace

KeyPair keygen(const Group& group, RandomSource& rng) {
  return keypair_from_secret(group, group.random_nonzero_scalar(rng));
}

KeyPair keypair_from_secret(const Group& group, const Scalar& sk) {
  if (sgn(sk.value) <= 0 || sk.value >= group.q()) throw InvalidArgument("secret key outside [1, q-1]");
  return {sk, group.g_pow(sk)};
}

Ciphertext encrypt(const Group& group, const GroupElement& pk, std::uint64_t m, const Scalar& r) {
  if (sgn(r.value) == 0) throw InvalidArgument("encryption randomness must be nonzero");
  return {group.g_pow(r), group.mul(group.g_pow(to_mpz(m)), group.pow(pk, r))};
}

Ciphertext encrypt(const Group& group, const GroupElement& pk, std::uint64_t m, RandomSource& rng) {
  return encrypt(group, pk, m, group.random_nonzero_scalar(rng));
}

std::uint64_t decode_exponent(const Group& group, const GroupElement& encoded, std::uint64_t decode_bound) {
  GroupElement acc = group.identity();
  const GroupElement g = group.generator();
  for (std::uint64_t m = 0;; ++m) {
    if (acc == encoded) return m;
    if (m == decode_bound) break;
    acc = group.mul(acc, g);
  }
  throw DecodeRangeError("plaintext exceeds decode bound " + std::to_string(decode_bound));
}

std::uint64_t decrypt(const Group& group, const Scalar& sk, const Ciphertext& ct, std::uint64_t decode_bound) {
  GroupElement shared = group.pow(ct.c1, sk);
  return decode_exponent(group, group.div(ct.c2, shared), decode_bound);
}

Ciphertext reencrypt(const Group& group, const GroupElement& pk, const Ciphertext& ct, const Scalar& r) {
  return {group.mul(ct.c1, group.g_pow(r)), group.mul(ct.c2, group.pow(pk, r))};
}

Ciphertext combine(const Group& group, const Ciphertext& a, const Ciphertext& b) {
  return {group.mul(a.c1, b.c1), group.mul(a.c2, b.c2)};
}

Ciphertext combine_all(const Group& group, std::span<const Ciphertext> cts) {
  Ciphertext acc{group.identity(), group.identity()};
  for (const auto& ct : cts) acc = combine(group, acc, ct);
  return acc;
}

bool contains(const Group& group, const Ciphertext& ct) { return group.contains(ct.c1) && group.contains(ct.c2); }

Ciphertext get_ciphertext(Decoder& dec, const Group& group) {
  GroupElement c1 = get_element(dec, group);
  GroupElement c2 = get_element(dec, group);
  return {c1, c2};
}

}  // namespace evote
