#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evote/bulletin/board.hpp"
#include "evote/group/elgamal.hpp"
#include "evote/registry/registry.hpp"
#include "evote/zkp/proofs.hpp"

namespace evote {

// Simulator clock units; never wall-clock time.
using LogicalTime = std::uint64_t;

inline constexpr LogicalTime kDefaultReceiptTtl = 30;

// One bit per candidate; a valid choice is a unit vector.
struct ChoiceVector {
  std::vector<std::uint8_t> bits;

  bool is_unit() const;
  std::string to_string() const;  // e.g. "010"

  friend bool operator==(const ChoiceVector&, const ChoiceVector&) = default;
};

// Throws IndexOutOfRange unless 0 <= candidate_index < n_candidates.
ChoiceVector encode_choice(std::size_t candidate_index, std::size_t n_candidates);

struct EncryptedBallot {
  std::vector<Ciphertext> slots;
  zkp::WellformedProof wellformed;

  friend bool operator==(const EncryptedBallot&, const EncryptedBallot&) = default;
};

// The double envelope: inner encryption under the election key, outer
// signature under the voter's eID key.
struct SignedBallot {
  std::string voter_id;
  EncryptedBallot encrypted;
  LogicalTime timestamp = 0;
  Signature signature;  // over signed_message()

  friend bool operator==(const SignedBallot&, const SignedBallot&) = default;
};

// Canonical encoding of (slots, proof, timestamp): the bytes the voter signs.
Bytes signed_message(const SignedBallot& ballot);

// Fresh randomness per slot; throws MalformedChoice unless choice is a unit
// vector.
SignedBallot compose_ballot(const Group& group, const VoterCredential& voter, const GroupElement& election_pk,
                            const ChoiceVector& choice, LogicalTime timestamp, RandomSource& rng);

// Encrypts arbitrary slot values and signs the result. The attached proof is
// produced by the honest prover algorithm and fails verification for anything
// but a unit vector. Exists to model malicious clients.
SignedBallot compose_raw_ballot(const Group& group, const VoterCredential& voter, const GroupElement& election_pk,
                                std::span<const std::uint64_t> slot_values, LogicalTime timestamp,
                                RandomSource& rng);

// Eligible voter, valid signature and valid well-formedness proof.
bool verify_ballot(const Group& group, const SignedBallot& ballot, const Registry& registry,
                   const GroupElement& election_pk);

Digest ballot_digest(const SignedBallot& ballot);

struct FilterResult {
  std::vector<SignedBallot> kept;     // input order
  std::vector<SignedBallot> revoked;  // input order
  std::size_t revoked_count = 0;
};

// Keeps, per voter, the ballot with the largest (timestamp, position) where
// position is the ingestion order of the input.
FilterResult filter_latest(std::span<const SignedBallot> ballots);

struct Receipt {
  Digest ballot_digest{};
  LogicalTime issued_at = 0;
  LogicalTime ttl = kDefaultReceiptTtl;

  LogicalTime expiry() const { return issued_at + ttl; }
};

enum class ReceiptStatus { Confirmed, Expired, NotFound };

std::string_view to_string(ReceiptStatus status);

Receipt issue_receipt(const SignedBallot& ballot, LogicalTime now, LogicalTime ttl = kDefaultReceiptTtl);
// Confirmed while now < expiry and a BallotCast entry carries the digest.
ReceiptStatus check_receipt(const Receipt& receipt, const BulletinBoard& board, LogicalTime now);

enum class BallotValidity { Ok, Invalid };

// Ok iff every slot is 0 or 1 and exactly one slot is 1.
BallotValidity validate_decrypted(std::span<const std::uint64_t> exponents);

void encode(Encoder& enc, const EncryptedBallot& ballot);
void encode(Encoder& enc, const SignedBallot& ballot);
EncryptedBallot decode_encrypted_ballot(Decoder& dec, const Group& group);
SignedBallot decode_signed_ballot(Decoder& dec, const Group& group);

Bytes serialize(const SignedBallot& ballot);
SignedBallot parse_signed_ballot(std::span<const std::uint8_t> bytes, const Group& group);

// Published form of an accepted ballot: its digest and the encrypted part.
// Voter identity, timestamp and signature stay off the public board.
struct BallotCastRecord {
  Digest ballot_digest{};
  EncryptedBallot ballot;
};

Bytes encode_record(const BallotCastRecord& record);
BallotCastRecord decode_ballot_cast(std::span<const std::uint8_t> payload, const Group& group);
// Reads only the leading digest; no group needed.
Digest ballot_cast_digest(std::span<const std::uint8_t> payload);

}  // namespace evote
