#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evote/group/elgamal.hpp"
#include "evote/zkp/transcript.hpp"

namespace evote::zkp {

// Chaum-Pedersen proof that log_g(pk_component) = log_{c1}(d).
struct DecryptionProof {
  GroupElement commit_g;
  GroupElement commit_c1;
  Scalar challenge;
  Scalar response;

  friend bool operator==(const DecryptionProof&, const DecryptionProof&) = default;
};

// Prover knows x with d = c1^x. The nonce is derived from x and the
// statement, so the proof is a pure function of its inputs.
DecryptionProof prove_correct_decryption(const Group& group, const Scalar& x, const Ciphertext& ct,
                                         const GroupElement& d);

bool verify_correct_decryption(const Group& group, const GroupElement& pk_component, const Ciphertext& ct,
                               const GroupElement& d, const DecryptionProof& proof);

// Disjunctive proof that one slot encrypts 0 or 1. Branch k proves
// log_g(c1) = log_pk(c2 / g^k); exactly one branch is real.
struct BitProof {
  GroupElement a0, b0, a1, b1;
  Scalar e0, e1, z0, z1;

  friend bool operator==(const BitProof&, const BitProof&) = default;
};

struct WellformedProof {
  std::vector<BitProof> slots;
  // Shows the slotwise product encrypts exactly 1: log_g(C1) = log_pk(C2 / g).
  DecryptionProof sum_proof;

  friend bool operator==(const WellformedProof&, const WellformedProof&) = default;
};

// slots[i] must encrypt (i == choice_index ? 1 : 0) with randomness[i].
WellformedProof prove_wellformed(const Group& group, const GroupElement& pk, std::span<const Ciphertext> slots,
                                 std::span<const Scalar> randomness, std::size_t choice_index);

// General form used by prove_wellformed. Runs the honest prover algorithm on
// arbitrary slot values; for anything but a unit vector of bits the result
// does not verify. Tests use it to build malformed ballots.
WellformedProof prove_wellformed_bits(const Group& group, const GroupElement& pk, std::span<const Ciphertext> slots,
                                      std::span<const Scalar> randomness, std::span<const std::uint64_t> bits);

bool verify_wellformed(const Group& group, const GroupElement& pk, std::span<const Ciphertext> slots,
                       const WellformedProof& proof);

void encode(Encoder& enc, const DecryptionProof& proof);
void encode(Encoder& enc, const WellformedProof& proof);
DecryptionProof decode_decryption_proof(Decoder& dec, const Group& group);
WellformedProof decode_wellformed_proof(Decoder& dec, const Group& group);

// Standalone record forms: decoding rejects trailing bytes.
Bytes serialize(const DecryptionProof& proof);
Bytes serialize(const WellformedProof& proof);
DecryptionProof parse_decryption_proof(std::span<const std::uint8_t> bytes, const Group& group);
WellformedProof parse_wellformed_proof(std::span<const std::uint8_t> bytes, const Group& group);

}  // namespace evote::zkp
