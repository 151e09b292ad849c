#include "evote/tally/election.hpp"

#include <algorithm>
#include <set>

#include "evote/common/errors.hpp"
#include "evote/tally/records.hpp"

namespace evote {

namespace {

// Fails before anything is posted if the trustee set is not exactly 1..n.
void check_trustee_set(const ElectionKey& key, std::span<const TrusteeKeyShare> trustees) {
  std::set<std::uint32_t> seen;
  for (const auto& t : trustees) {
    if (!seen.insert(t.index).second) {
      throw DuplicateShareError("trustee " + std::to_string(t.index) + " listed twice");
    }
  }
  for (std::uint32_t i = 1; i <= key.trustee_count(); ++i) {
    if (!seen.contains(i)) throw MissingShareError("trustee " + std::to_string(i) + " is absent");
  }
  if (seen.size() != key.trustee_count()) throw MissingShareError("unknown trustee index");
}

std::vector<const TrusteeKeyShare*> by_index(std::span<const TrusteeKeyShare> trustees) {
  std::vector<const TrusteeKeyShare*> out;
  for (const auto& t : trustees) out.push_back(&t);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->index < b->index; });
  return out;
}

Digest ballot_list_digest(std::span<const SignedBallot> ballots) {
  Encoder enc;
  enc.put_string("evote/ballot-box/v1").put_uint(ballots.size());
  for (const auto& b : ballots) put_digest(enc, ballot_digest(b));
  return sha256(enc);
}

}  // namespace

void ElectionConfig::validate() const {
  if (candidates.empty()) throw InvalidArgument("an election needs at least one candidate");
  if (trustee_count == 0) throw InvalidArgument("trustee_count must be at least 1");
  if (mix_server_count == 0) throw InvalidArgument("mix_server_count must be at least 1");
  if (proof_rounds == 0) throw InvalidArgument("proof_rounds must be at least 1");
  if (!(coercion_threshold >= 0.0 && coercion_threshold <= 1.0)) {
    throw InvalidArgument("coercion_threshold must lie in [0, 1]");
  }
  Group::by_name(group);
}

CoercionVerdict coercion_evidence(std::uint64_t revoked_count, std::uint64_t kept_count, double threshold) {
  CoercionVerdict v;
  v.threshold = threshold;
  const std::uint64_t total = revoked_count + kept_count;
  v.revoked_fraction = total == 0 ? 0.0 : static_cast<double>(revoked_count) / static_cast<double>(total);
  v.flagged = v.revoked_fraction > threshold;
  return v;
}

TallyOutcome run_tally(const ElectionConfig& config, const Group& group, const ElectionKey& key,
                       std::span<const SignedBallot> collected, std::span<const TrusteeKeyShare> trustees,
                       std::span<MixServer* const> mix_servers, BulletinBoard& board) {
  check_trustee_set(key, trustees);
  TallyOutcome out;
  ElectionResult& result = out.result;
  auto post = [&](EntryKind kind, Bytes payload) { result.proof_bundle.push_back(board.append(kind, std::move(payload)).seq); };

  FilterResult filtered = filter_latest(collected);
  result.kept_count = filtered.kept.size();
  result.revoked_count = filtered.revoked_count;
  result.coercion = coercion_evidence(result.revoked_count, result.kept_count, config.coercion_threshold);

  MixBatch batch = strip_signatures(filtered.kept);
  post(EntryKind::Transfer, encode_record(TransferRecord{"filter->mixnet", batch.size(), batch.digest()}));

  MixnetRun mixed = run_mixnet(group, key.h, mix_servers, batch, config.proof_rounds);
  for (std::size_t s = 0; s < mixed.stages.size(); ++s) {
    const auto& stage = mixed.stages[s];
    if (!verify_mix(group, key.h, stage.input, stage.output, stage.proof, config.proof_rounds)) {
      throw MixRejected("shuffle proof of mix stage " + std::to_string(s) + " rejected");
    }
    post(EntryKind::MixStage, encode_record(MixStageRecord{s, stage.input, stage.output, stage.proof}));
  }

  const auto ordered = by_index(trustees);
  const std::uint64_t n_items = mixed.final_batch.size();
  result.counts.assign(config.candidates.size(), 0);
  for (std::uint64_t item = 0; item < n_items; ++item) {
    const SlotTuple& tuple = mixed.final_batch.items[item];
    std::vector<std::vector<PartialDecryption>> per_slot(tuple.size());
    for (const auto* trustee : ordered) {
      PartialDecryptionRecord rec{item, trustee->index, {}};
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        rec.slots.push_back(partial_decrypt(group, *trustee, tuple[k]));
        per_slot[k].push_back(rec.slots.back());
      }
      post(EntryKind::PartialDecryption, encode_record(rec));
    }

    DecryptedBallotRecord dec{item, {}, false};
    std::vector<std::uint64_t> exponents;
    bool all_decoded = true;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      GroupElement encoded = threshold_unblind(group, key, tuple[k], per_slot[k]);
      SlotPlaintext slot;
      try {
        slot.value = decode_exponent(group, encoded, 1);
        slot.decoded = true;
      } catch (const DecodeRangeError&) {
        try {
          slot.value = decode_exponent(group, encoded, n_items);
          slot.decoded = true;
        } catch (const DecodeRangeError&) {
          all_decoded = false;
        }
      }
      dec.slots.push_back(slot);
      exponents.push_back(slot.value);
    }
    dec.valid = all_decoded && tuple.size() == config.candidates.size() &&
                validate_decrypted(exponents) == BallotValidity::Ok;
    if (dec.valid) {
      for (std::size_t k = 0; k < exponents.size(); ++k) result.counts[k] += exponents[k];
    } else {
      ++result.invalid_count;
    }
    post(EntryKind::DecryptedBallot, encode_record(dec));
  }

  result.final_batch_digest = mixed.final_batch.digest();
  ResultRecord rec;
  rec.counts = result.counts;
  rec.invalid_count = result.invalid_count;
  rec.revoked_count = result.revoked_count;
  rec.kept_count = result.kept_count;
  rec.coercion_threshold = format_threshold(config.coercion_threshold);
  rec.coercion_flagged = result.coercion.flagged;
  rec.final_batch_digest = result.final_batch_digest;
  post(EntryKind::Result, encode_record(rec));

  out.mixed = std::move(mixed.final_batch);
  return out;
}

std::vector<std::uint64_t> aggregate_check(const Group& group, const ElectionKey& key, const MixBatch& mixed,
                                           std::size_t n_candidates, std::span<const TrusteeKeyShare> trustees) {
  check_trustee_set(key, trustees);
  const std::size_t width = mixed.empty() ? n_candidates : mixed.width();
  if (width != n_candidates) throw InvalidArgument("batch width differs from the candidate count");
  std::vector<std::uint64_t> counts(width, 0);
  for (std::size_t k = 0; k < width; ++k) {
    std::vector<Ciphertext> column;
    column.reserve(mixed.size());
    for (const auto& t : mixed.items) column.push_back(t[k]);
    Ciphertext total = combine_all(group, column);
    std::vector<PartialDecryption> partials;
    for (const auto& t : trustees) partials.push_back(partial_decrypt(group, t, total));
    counts[k] = threshold_decrypt(group, key, total, partials, mixed.size());
  }
  return counts;
}

std::string_view to_string(ElectionPhase phase) {
  switch (phase) {
    case ElectionPhase::Open:
      return "Open";
    case ElectionPhase::Closed:
      return "Closed";
    case ElectionPhase::Tallied:
      return "Tallied";
  }
  return "Unknown";
}

Election::Election(ElectionConfig config, const Group& group, ElectionKey key, const Registry& registry,
                   BulletinBoard& board)
    : config_(std::move(config)), group_(group), key_(std::move(key)), registry_(registry), board_(board) {
  config_.validate();
  if (key_.trustee_count() != config_.trustee_count || !is_consistent(group_, key_)) {
    throw InvalidArgument("election key does not match the trustee configuration");
  }
}

CastOutcome Election::cast(const SignedBallot& ballot, LogicalTime now) {
  if (phase_ != ElectionPhase::Open) throw ElectionClosed("ballot box is closed");
  CastOutcome out;
  bool ok = ballot.encrypted.slots.size() == config_.candidates.size() &&
            verify_ballot(group_, ballot, registry_, key_.h);
  if (!ok) {
    out.reason = "ballot failed eligibility, signature or well-formedness checks";
  } else if (!config_.revote_allowed && std::binary_search(voted_.begin(), voted_.end(), ballot.voter_id)) {
    ok = false;
    out.reason = "re-voting is disabled for this election";
  }
  board_.append(EntryKind::Login, encode_record(LoginRecord{voter_id_digest(ballot.voter_id), ok}));
  if (!ok) return out;

  Receipt receipt = issue_receipt(ballot, now, config_.receipt_ttl);
  board_.append(EntryKind::BallotCast, encode_record(BallotCastRecord{receipt.ballot_digest, ballot.encrypted}));
  board_.append(EntryKind::Receipt, encode_record(ReceiptRecord{receipt.ballot_digest}));
  ballot_box_.push_back(ballot);
  voted_.insert(std::upper_bound(voted_.begin(), voted_.end(), ballot.voter_id), ballot.voter_id);
  out.accepted = true;
  out.receipt = receipt;
  return out;
}

std::vector<SignedBallot> Election::close() {
  if (phase_ != ElectionPhase::Open) throw AlreadyClosed("election already closed");
  phase_ = ElectionPhase::Closed;
  board_.append(EntryKind::Transfer,
                encode_record(TransferRecord{"ballot-box->tally", ballot_box_.size(), ballot_list_digest(ballot_box_)}));
  return ballot_box_;
}

void Election::require_closed(const char* what) const {
  if (phase_ == ElectionPhase::Open) {
    throw FairnessViolation(std::string(what) + " refused: the election is still open");
  }
}

TallyOutcome Election::tally(std::span<const SignedBallot> collected, std::span<const TrusteeKeyShare> trustees,
                             std::span<MixServer* const> mix_servers) {
  require_closed("tally");
  if (phase_ == ElectionPhase::Tallied) throw InvalidArgument("election already tallied");
  TallyOutcome out = run_tally(config_, group_, key_, collected, trustees, mix_servers, board_);
  phase_ = ElectionPhase::Tallied;
  return out;
}

std::vector<std::uint64_t> Election::aggregate(const MixBatch& mixed, std::span<const TrusteeKeyShare> trustees) const {
  require_closed("aggregate decryption");
  return aggregate_check(group_, key_, mixed, config_.candidates.size(), trustees);
}

}  // namespace evote
