#include "evote/ballot/ballot.hpp"

#include <map>

#include "evote/common/errors.hpp"

namespace evote {

bool ChoiceVector::is_unit() const {
  std::size_t ones = 0;
  for (auto b : bits) {
    if (b > 1) return false;
    ones += b;
  }
  return ones == 1;
}

std::string ChoiceVector::to_string() const {
  std::string out;
  for (auto b : bits) out.push_back(static_cast<char>('0' + b));
  return out;
}

ChoiceVector encode_choice(std::size_t candidate_index, std::size_t n_candidates) {
  if (n_candidates == 0 || candidate_index >= n_candidates) {
    throw IndexOutOfRange("candidate index " + std::to_string(candidate_index) + " outside 0.." +
                          std::to_string(n_candidates));
  }
  ChoiceVector v;
  v.bits.assign(n_candidates, 0);
  v.bits[candidate_index] = 1;
  return v;
}

Bytes signed_message(const SignedBallot& ballot) {
  Encoder enc;
  encode(enc, ballot.encrypted);
  enc.put_uint(ballot.timestamp);
  return enc.take();
}

SignedBallot compose_raw_ballot(const Group& group, const VoterCredential& voter, const GroupElement& election_pk,
                                std::span<const std::uint64_t> slot_values, LogicalTime timestamp,
                                RandomSource& rng) {
  SignedBallot ballot;
  ballot.voter_id = voter.voter_id;
  ballot.timestamp = timestamp;
  std::vector<Scalar> randomness;
  randomness.reserve(slot_values.size());
  for (auto m : slot_values) {
    randomness.push_back(group.random_nonzero_scalar(rng));
    ballot.encrypted.slots.push_back(encrypt(group, election_pk, m, randomness.back()));
  }
  ballot.encrypted.wellformed =
      zkp::prove_wellformed_bits(group, election_pk, ballot.encrypted.slots, randomness, slot_values);
  ballot.signature = sign(group, voter.signing_key, signed_message(ballot));
  return ballot;
}

SignedBallot compose_ballot(const Group& group, const VoterCredential& voter, const GroupElement& election_pk,
                            const ChoiceVector& choice, LogicalTime timestamp, RandomSource& rng) {
  if (!choice.is_unit()) throw MalformedChoice("choice is not a unit vector: " + choice.to_string());
  std::vector<std::uint64_t> values(choice.bits.begin(), choice.bits.end());
  return compose_raw_ballot(group, voter, election_pk, values, timestamp, rng);
}

bool verify_ballot(const Group& group, const SignedBallot& ballot, const Registry& registry,
                   const GroupElement& election_pk) {
  if (!registry.is_eligible(ballot.voter_id)) return false;
  auto vk = registry.verify_key(ballot.voter_id);
  if (!vk || !verify_sig(group, *vk, signed_message(ballot), ballot.signature)) return false;
  return zkp::verify_wellformed(group, election_pk, ballot.encrypted.slots, ballot.encrypted.wellformed);
}

Digest ballot_digest(const SignedBallot& ballot) { return sha256(serialize(ballot)); }

FilterResult filter_latest(std::span<const SignedBallot> ballots) {
  // voter -> position of the current winner
  std::map<std::string, std::size_t> latest;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    auto [it, inserted] = latest.try_emplace(ballots[i].voter_id, i);
    if (!inserted && ballots[i].timestamp >= ballots[it->second].timestamp) it->second = i;
  }
  std::vector<bool> keep(ballots.size(), false);
  for (const auto& [voter, pos] : latest) keep[pos] = true;

  FilterResult result;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    (keep[i] ? result.kept : result.revoked).push_back(ballots[i]);
  }
  result.revoked_count = result.revoked.size();
  return result;
}

std::string_view to_string(ReceiptStatus status) {
  switch (status) {
    case ReceiptStatus::Confirmed:
      return "Confirmed";
    case ReceiptStatus::Expired:
      return "Expired";
    case ReceiptStatus::NotFound:
      return "NotFound";
  }
  return "Unknown";
}

Receipt issue_receipt(const SignedBallot& ballot, LogicalTime now, LogicalTime ttl) {
  return {ballot_digest(ballot), now, ttl};
}

ReceiptStatus check_receipt(const Receipt& receipt, const BulletinBoard& board, LogicalTime now) {
  for (const auto& e : board.entries()) {
    if (e.kind != EntryKind::BallotCast) continue;
    Digest d;
    try {
      d = ballot_cast_digest(e.payload);
    } catch (const FormatError&) {
      continue;
    }
    if (d == receipt.ballot_digest) {
      return now < receipt.expiry() ? ReceiptStatus::Confirmed : ReceiptStatus::Expired;
    }
  }
  return ReceiptStatus::NotFound;
}

BallotValidity validate_decrypted(std::span<const std::uint64_t> exponents) {
  std::uint64_t sum = 0;
  for (auto m : exponents) {
    if (m > 1) return BallotValidity::Invalid;
    sum += m;
  }
  return sum == 1 ? BallotValidity::Ok : BallotValidity::Invalid;
}

void encode(Encoder& enc, const EncryptedBallot& ballot) {
  enc.put_uint(ballot.slots.size());
  for (const auto& s : ballot.slots) put_ciphertext(enc, s);
  zkp::encode(enc, ballot.wellformed);
}

void encode(Encoder& enc, const SignedBallot& ballot) {
  enc.put_string(ballot.voter_id);
  encode(enc, ballot.encrypted);
  enc.put_uint(ballot.timestamp);
  encode(enc, ballot.signature);
}

EncryptedBallot decode_encrypted_ballot(Decoder& dec, const Group& group) {
  EncryptedBallot b;
  std::uint64_t n = dec.get_uint();
  if (n > (1u << 16)) throw FormatError("implausible slot count");
  b.slots.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) b.slots.push_back(get_ciphertext(dec, group));
  b.wellformed = zkp::decode_wellformed_proof(dec, group);
  return b;
}

SignedBallot decode_signed_ballot(Decoder& dec, const Group& group) {
  SignedBallot b;
  b.voter_id = dec.get_string();
  b.encrypted = decode_encrypted_ballot(dec, group);
  b.timestamp = dec.get_uint();
  b.signature = decode_signature(dec, group);
  return b;
}

Bytes serialize(const SignedBallot& ballot) {
  Encoder enc;
  encode(enc, ballot);
  return enc.take();
}

SignedBallot parse_signed_ballot(std::span<const std::uint8_t> bytes, const Group& group) {
  Decoder dec(bytes);
  auto b = decode_signed_ballot(dec, group);
  dec.expect_done();
  return b;
}

Bytes encode_record(const BallotCastRecord& record) {
  Encoder enc;
  put_digest(enc, record.ballot_digest);
  encode(enc, record.ballot);
  return enc.take();
}

BallotCastRecord decode_ballot_cast(std::span<const std::uint8_t> payload, const Group& group) {
  Decoder dec(payload);
  BallotCastRecord r;
  r.ballot_digest = get_digest(dec);
  r.ballot = decode_encrypted_ballot(dec, group);
  dec.expect_done();
  return r;
}

Digest ballot_cast_digest(std::span<const std::uint8_t> payload) {
  Decoder dec(payload);
  return get_digest(dec);
}

}  // namespace evote
