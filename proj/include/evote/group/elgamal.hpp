#pragma once

#include <cstdint>
#include <span>

#include "evote/group/group.hpp"

namespace evote {

// Exponential ElGamal ciphertext (g^r, g^m * pk^r).
struct Ciphertext {
  GroupElement c1;
  GroupElement c2;

  friend bool operator==(const Ciphertext& a, const Ciphertext& b) { return a.c1 == b.c1 && a.c2 == b.c2; }
};

struct KeyPair {
  Scalar sk;
  GroupElement pk;
};

// sk uniform in [1, q - 1].
KeyPair keygen(const Group& group, RandomSource& rng);
// Throws InvalidArgument for sk outside [1, q - 1].
KeyPair keypair_from_secret(const Group& group, const Scalar& sk);

// r = 0 is rejected: the result would be distinguishable from any
// re-encryption of the same plaintext.
Ciphertext encrypt(const Group& group, const GroupElement& pk, std::uint64_t m, const Scalar& r);
Ciphertext encrypt(const Group& group, const GroupElement& pk, std::uint64_t m, RandomSource& rng);

// Recovers m by scanning 0..decode_bound; DecodeRangeError if none match.
std::uint64_t decrypt(const Group& group, const Scalar& sk, const Ciphertext& ct, std::uint64_t decode_bound);
std::uint64_t decode_exponent(const Group& group, const GroupElement& encoded, std::uint64_t decode_bound);

// r = 0 yields the input unchanged; production callers always pass a
// nonzero scalar.
Ciphertext reencrypt(const Group& group, const GroupElement& pk, const Ciphertext& ct, const Scalar& r);

// Componentwise product: decrypts to the sum of the plaintext exponents.
Ciphertext combine(const Group& group, const Ciphertext& a, const Ciphertext& b);
// Product of a list; the identity ciphertext (1, 1) for an empty list.
Ciphertext combine_all(const Group& group, std::span<const Ciphertext> cts);

bool contains(const Group& group, const Ciphertext& ct);

inline Encoder& put_ciphertext(Encoder& enc, const Ciphertext& ct) {
  put_element(enc, ct.c1);
  return put_element(enc, ct.c2);
}
Ciphertext get_ciphertext(Decoder& dec, const Group& group);

}  // namespace evote
