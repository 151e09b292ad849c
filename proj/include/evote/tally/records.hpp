#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evote/group/threshold.hpp"
#include "evote/mixnet/mixnet.hpp"

namespace evote {

// Payload formats of the bulletin entries the tally pipeline posts. BallotCast
// lives with the ballot module. All payloads use the canonical encoding and
// decoding rejects trailing bytes.

Digest voter_id_digest(std::string_view voter_id);

// Login: someone tried to authenticate to cast. Only a digest of the id.
struct LoginRecord {
  Digest voter_digest{};
  bool accepted = false;
};

struct ReceiptRecord {
  Digest ballot_digest{};
};

// Transfer: data moved between servers.
struct TransferRecord {
  std::string route;
  std::uint64_t count = 0;
  Digest content_digest{};
};

struct MixStageRecord {
  std::uint64_t stage = 0;
  MixBatch input;
  MixBatch output;
  ShuffleProof proof;
};

// All partial decryptions of one trustee for one mixed ballot, slot by slot.
struct PartialDecryptionRecord {
  std::uint64_t item = 0;
  std::uint32_t trustee = 0;
  std::vector<PartialDecryption> slots;
};

struct SlotPlaintext {
  bool decoded = false;  // false: exponent above the diagnostic bound
  std::uint64_t value = 0;

  friend bool operator==(const SlotPlaintext&, const SlotPlaintext&) = default;
};

struct DecryptedBallotRecord {
  std::uint64_t item = 0;
  std::vector<SlotPlaintext> slots;
  bool valid = false;
};

struct ResultRecord {
  std::vector<std::uint64_t> counts;
  std::uint64_t invalid_count = 0;
  std::uint64_t revoked_count = 0;
  std::uint64_t kept_count = 0;
  std::string coercion_threshold;  // shortest round-trip decimal
  bool coercion_flagged = false;
  Digest final_batch_digest{};
};

Bytes encode_record(const LoginRecord& r);
Bytes encode_record(const ReceiptRecord& r);
Bytes encode_record(const TransferRecord& r);
Bytes encode_record(const MixStageRecord& r);
Bytes encode_record(const PartialDecryptionRecord& r);
Bytes encode_record(const DecryptedBallotRecord& r);
Bytes encode_record(const ResultRecord& r);

LoginRecord decode_login(std::span<const std::uint8_t> payload);
ReceiptRecord decode_receipt(std::span<const std::uint8_t> payload);
TransferRecord decode_transfer(std::span<const std::uint8_t> payload);
MixStageRecord decode_mix_stage(std::span<const std::uint8_t> payload, const Group& group);
PartialDecryptionRecord decode_partial_decryption(std::span<const std::uint8_t> payload, const Group& group);
DecryptedBallotRecord decode_decrypted_ballot(std::span<const std::uint8_t> payload);
ResultRecord decode_result(std::span<const std::uint8_t> payload);

std::string format_threshold(double threshold);

}  // namespace evote
