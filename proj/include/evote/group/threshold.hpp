#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "evote/group/elgamal.hpp"
#include "evote/zkp/proofs.hpp"

namespace evote {

// Additive n-of-n sharing of the election secret: x = sum of x_i mod q.
struct TrusteeKeyShare {
  std::uint32_t index = 0;  // 1..n
  Scalar secret;
  GroupElement commitment;  // g^{x_i}
};

struct ElectionKey {
  GroupElement h;                        // product of all commitments
  std::vector<GroupElement> commitments;  // commitments[i - 1] belongs to trustee i

  std::size_t trustee_count() const { return commitments.size(); }
};

struct PartialDecryption {
  std::uint32_t index = 0;
  GroupElement share;  // c1^{x_i}
  zkp::DecryptionProof proof;
};

// Throws InvalidArgument for n = 0. Redraws the last share if the shares
// would sum to zero, which would make h the identity.
std::pair<ElectionKey, std::vector<TrusteeKeyShare>> threshold_keygen(const Group& group, std::size_t n,
                                                                      RandomSource& rng);

// Ceremony with caller-chosen shares (each in [1, q - 1]).
std::pair<ElectionKey, std::vector<TrusteeKeyShare>> threshold_keygen_from_secrets(const Group& group,
                                                                                   std::span<const Scalar> secrets);

// Checks h = prod(commitments) and membership of every component.
bool is_consistent(const Group& group, const ElectionKey& key);

PartialDecryption partial_decrypt(const Group& group, const TrusteeKeyShare& share, const Ciphertext& ct);

bool verify_partial(const Group& group, const ElectionKey& key, const Ciphertext& ct, const PartialDecryption& pd);

// Requires exactly one partial per trustee 1..n, each with a valid proof.
// Errors, checked in this order: DuplicateShareError, MissingShareError
// (also for unknown indices), InvalidPartialProof, DecodeRangeError.
std::uint64_t threshold_decrypt(const Group& group, const ElectionKey& key, const Ciphertext& ct,
                                std::span<const PartialDecryption> partials, std::uint64_t decode_bound);

// g^m recovered from the partials without decoding; same checks as
// threshold_decrypt.
GroupElement threshold_unblind(const Group& group, const ElectionKey& key, const Ciphertext& ct,
                               std::span<const PartialDecryption> partials);

void encode(Encoder& enc, const PartialDecryption& pd);
PartialDecryption decode_partial(Decoder& dec, const Group& group);

}  // namespace evote
