#include "evote/bulletin/audit.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "evote/common/errors.hpp"
#include "evote/tally/records.hpp"

namespace evote {

namespace {

struct Parsed {
  std::vector<BallotCastRecord> casts;
  std::vector<TransferRecord> transfers;
  std::vector<MixStageRecord> stages;
  std::vector<PartialDecryptionRecord> partials;
  std::vector<DecryptedBallotRecord> decrypted;
  std::vector<ResultRecord> results;
  // First decode failure per kind.
  std::map<EntryKind, std::string> errors;
};

Parsed parse_board(const BulletinBoard& board, const Group& group) {
  Parsed p;
  for (const auto& e : board.entries()) {
    try {
      switch (e.kind) {
        case EntryKind::BallotCast:
          p.casts.push_back(decode_ballot_cast(e.payload, group));
          break;
        case EntryKind::Transfer:
          p.transfers.push_back(decode_transfer(e.payload));
          break;
        case EntryKind::MixStage:
          p.stages.push_back(decode_mix_stage(e.payload, group));
          break;
        case EntryKind::PartialDecryption:
          p.partials.push_back(decode_partial_decryption(e.payload, group));
          break;
        case EntryKind::DecryptedBallot:
          p.decrypted.push_back(decode_decrypted_ballot(e.payload));
          break;
        case EntryKind::Result:
          p.results.push_back(decode_result(e.payload));
          break;
        case EntryKind::Login:
          decode_login(e.payload);
          break;
        case EntryKind::Receipt:
          decode_receipt(e.payload);
          break;
      }
    } catch (const Error& err) {
      p.errors.try_emplace(e.kind, "entry " + std::to_string(e.seq) + ": " + err.what());
    }
  }
  return p;
}

CheckOutcome pass(std::string_view name, std::string detail = "ok") {
  return {std::string(name), true, std::move(detail)};
}

CheckOutcome fail(std::string_view name, std::string detail) { return {std::string(name), false, std::move(detail)}; }

std::optional<CheckOutcome> decode_failure(const Parsed& p, std::string_view name,
                                           std::initializer_list<EntryKind> kinds) {
  for (EntryKind k : kinds) {
    auto it = p.errors.find(k);
    if (it != p.errors.end()) return fail(name, "undecodable " + std::string(to_string(k)) + " " + it->second);
  }
  return std::nullopt;
}

Bytes tuple_key(const SlotTuple& tuple) {
  Encoder enc;
  for (const auto& ct : tuple) put_ciphertext(enc, ct);
  return enc.take();
}

const MixBatch* final_batch(const Parsed& p) { return p.stages.empty() ? nullptr : &p.stages.back().output; }

CheckOutcome check_chain(const BulletinBoard& board) {
  if (!verify_chain(board)) return fail(checks::kChainIntegrity, "hash chain broken");
  return pass(checks::kChainIntegrity, std::to_string(board.size()) + " entries");
}

CheckOutcome check_key(const ElectionConfig& config, const Group& group, const ElectionKey& key) {
  if (key.trustee_count() != config.trustee_count) {
    return fail(checks::kElectionKey, "trustee commitment count differs from configuration");
  }
  for (const auto& c : key.commitments) {
    if (!group.contains(c)) return fail(checks::kElectionKey, "commitment outside the group");
  }
  if (!is_consistent(group, key)) return fail(checks::kElectionKey, "h is not the product of the commitments");
  return pass(checks::kElectionKey);
}

CheckOutcome check_wellformed(const Parsed& p, const ElectionConfig& config, const Group& group,
                              const ElectionKey& key) {
  if (auto f = decode_failure(p, checks::kWellformedness, {EntryKind::BallotCast})) return *f;
  for (std::size_t i = 0; i < p.casts.size(); ++i) {
    const auto& b = p.casts[i].ballot;
    if (b.slots.size() != config.candidates.size()) {
      return fail(checks::kWellformedness, "cast ballot " + std::to_string(i) + " has the wrong width");
    }
    if (!zkp::verify_wellformed(group, key.h, b.slots, b.wellformed)) {
      return fail(checks::kWellformedness, "cast ballot " + std::to_string(i) + " proof rejected");
    }
  }
  return pass(checks::kWellformedness, std::to_string(p.casts.size()) + " ballots");
}

CheckOutcome check_mix_input(const Parsed& p) {
  if (auto f = decode_failure(p, checks::kMixInput, {EntryKind::BallotCast, EntryKind::MixStage, EntryKind::Transfer})) {
    return *f;
  }
  if (p.stages.empty()) return fail(checks::kMixInput, "no mix stage published");
  const MixBatch& input = p.stages.front().input;
  const TransferRecord* handoff = nullptr;
  for (const auto& t : p.transfers) {
    if (t.route == "filter->mixnet") handoff = &t;
  }
  if (handoff == nullptr) return fail(checks::kMixInput, "no filter->mixnet transfer published");
  if (handoff->count != input.size() || handoff->content_digest != input.digest()) {
    return fail(checks::kMixInput, "first mix input differs from the published hand-off");
  }
  std::map<Bytes, std::size_t> available;
  for (const auto& c : p.casts) ++available[tuple_key(c.ballot.slots)];
  for (std::size_t i = 0; i < input.size(); ++i) {
    auto it = available.find(tuple_key(input.items[i]));
    if (it == available.end() || it->second == 0) {
      return fail(checks::kMixInput, "mix input item " + std::to_string(i) + " was never cast");
    }
    --it->second;
  }
  return pass(checks::kMixInput, std::to_string(input.size()) + " items");
}

CheckOutcome check_mix_stages(const Parsed& p, const ElectionConfig& config, const Group& group,
                              const ElectionKey& key) {
  if (auto f = decode_failure(p, checks::kMixStages, {EntryKind::MixStage})) return *f;
  if (p.stages.size() < config.mix_server_count) {
    return fail(checks::kMixStages, std::to_string(p.stages.size()) + " stages published, " +
                                        std::to_string(config.mix_server_count) + " required");
  }
  for (std::size_t s = 0; s < p.stages.size(); ++s) {
    const auto& st = p.stages[s];
    if (st.stage != s) return fail(checks::kMixStages, "stage numbering broken at " + std::to_string(s));
    if (s > 0 && !(p.stages[s - 1].output == st.input)) {
      return fail(checks::kMixStages, "stage " + std::to_string(s) + " input is not its predecessor's output");
    }
    if (!verify_mix(group, key.h, st.input, st.output, st.proof, config.proof_rounds)) {
      return fail(checks::kMixStages, "stage " + std::to_string(s) + " shuffle proof rejected");
    }
  }
  return pass(checks::kMixStages, std::to_string(p.stages.size()) + " stages");
}

CheckOutcome check_decryption(const Parsed& p, const Group& group, const ElectionKey& key) {
  if (auto f = decode_failure(p, checks::kDecryptionProofs,
                              {EntryKind::MixStage, EntryKind::PartialDecryption, EntryKind::DecryptedBallot})) {
    return *f;
  }
  const MixBatch* batch = final_batch(p);
  if (batch == nullptr) return fail(checks::kDecryptionProofs, "no mixed batch to decrypt");
  const std::size_t n = batch->size();
  const std::size_t trustees = key.trustee_count();

  // partial[item][trustee - 1]
  std::vector<std::vector<const PartialDecryptionRecord*>> partial(n, std::vector<const PartialDecryptionRecord*>(trustees));
  for (const auto& r : p.partials) {
    if (r.item >= n || r.trustee == 0 || r.trustee > trustees) {
      return fail(checks::kDecryptionProofs, "partial decryption for an unknown item or trustee");
    }
    auto& slot = partial[r.item][r.trustee - 1];
    if (slot != nullptr) return fail(checks::kDecryptionProofs, "duplicate partial decryption");
    slot = &r;
  }
  std::vector<const DecryptedBallotRecord*> decrypted(n);
  for (const auto& r : p.decrypted) {
    if (r.item >= n || decrypted[r.item] != nullptr) {
      return fail(checks::kDecryptionProofs, "decrypted ballot record for an unknown or repeated item");
    }
    decrypted[r.item] = &r;
  }

  for (std::size_t item = 0; item < n; ++item) {
    const SlotTuple& tuple = batch->items[item];
    const std::string where = "item " + std::to_string(item);
    if (decrypted[item] == nullptr) return fail(checks::kDecryptionProofs, where + " has no decryption");
    const auto& dec = *decrypted[item];
    if (dec.slots.size() != tuple.size()) return fail(checks::kDecryptionProofs, where + " slot count mismatch");

    std::vector<GroupElement> blind(tuple.size(), group.identity());
    for (std::size_t t = 0; t < trustees; ++t) {
      const auto* r = partial[item][t];
      if (r == nullptr) {
        return fail(checks::kDecryptionProofs, where + " lacks trustee " + std::to_string(t + 1));
      }
      if (r->slots.size() != tuple.size()) return fail(checks::kDecryptionProofs, where + " partial width mismatch");
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        const auto& pd = r->slots[k];
        if (pd.index != t + 1 || !verify_partial(group, key, tuple[k], pd)) {
          return fail(checks::kDecryptionProofs,
                      where + " slot " + std::to_string(k) + " trustee " + std::to_string(t + 1) + " proof rejected");
        }
        blind[k] = group.mul(blind[k], pd.share);
      }
    }

    std::vector<std::uint64_t> exponents;
    bool all_decoded = true;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      const GroupElement encoded = group.div(tuple[k].c2, blind[k]);
      const auto& claimed = dec.slots[k];
      if (claimed.decoded) {
        if (!(group.g_pow(mpz_class(static_cast<unsigned long>(claimed.value))) == encoded)) {
          return fail(checks::kDecryptionProofs, where + " slot " + std::to_string(k) + " plaintext inconsistent");
        }
      } else {
        bool in_range = true;
        try {
          decode_exponent(group, encoded, n);
        } catch (const DecodeRangeError&) {
          in_range = false;
        }
        if (in_range) {
          return fail(checks::kDecryptionProofs, where + " slot " + std::to_string(k) + " wrongly marked undecodable");
        }
        all_decoded = false;
      }
      exponents.push_back(claimed.value);
    }
    const bool valid = all_decoded && validate_decrypted(exponents) == BallotValidity::Ok;
    if (valid != dec.valid) return fail(checks::kDecryptionProofs, where + " validity flag inconsistent");
  }
  return pass(checks::kDecryptionProofs, std::to_string(n) + " items, " + std::to_string(trustees) + " trustees");
}

CheckOutcome check_counts(const Parsed& p, const ElectionConfig& config) {
  if (auto f = decode_failure(p, checks::kCountRecomputation,
                              {EntryKind::MixStage, EntryKind::DecryptedBallot, EntryKind::Result})) {
    return *f;
  }
  if (p.results.size() != 1) {
    return fail(checks::kCountRecomputation, std::to_string(p.results.size()) + " result records, expected 1");
  }
  const ResultRecord& r = p.results.front();
  const MixBatch* batch = final_batch(p);
  if (batch == nullptr) return fail(checks::kCountRecomputation, "no mixed batch");

  std::vector<std::uint64_t> counts(config.candidates.size(), 0);
  std::uint64_t invalid = 0;
  for (const auto& d : p.decrypted) {
    if (!d.valid || d.slots.size() != counts.size()) {
      ++invalid;
      continue;
    }
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += d.slots[k].value;
  }
  if (r.counts != counts) return fail(checks::kCountRecomputation, "published counts differ from recount");
  if (r.invalid_count != invalid) return fail(checks::kCountRecomputation, "invalid count differs from recount");
  std::uint64_t total = invalid;
  for (auto c : counts) total += c;
  if (p.decrypted.size() != batch->size() || total != batch->size()) {
    return fail(checks::kCountRecomputation, "counted ballots do not match the mixed batch size");
  }
  if (r.kept_count != batch->size()) return fail(checks::kCountRecomputation, "kept count differs from batch size");
  if (r.final_batch_digest != batch->digest()) {
    return fail(checks::kCountRecomputation, "result names a different final batch");
  }
  if (r.coercion_threshold != format_threshold(config.coercion_threshold)) {
    return fail(checks::kCountRecomputation, "result uses a different coercion threshold");
  }
  const auto verdict = coercion_evidence(r.revoked_count, r.kept_count, config.coercion_threshold);
  if (verdict.flagged != r.coercion_flagged) {
    return fail(checks::kCountRecomputation, "coercion flag inconsistent with the published counts");
  }
  return pass(checks::kCountRecomputation);
}

}  // namespace

const CheckOutcome* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool VerificationReport::passed(std::string_view name) const {
  const auto* c = find(name);
  return c != nullptr && c->passed;
}

VerificationReport universal_verify(const BulletinBoard& board, const ElectionConfig& config, const Group& group,
                                    const ElectionKey& key) {
  VerificationReport report;
  const Parsed parsed = parse_board(board, group);
  report.checks.push_back(check_chain(board));
  report.checks.push_back(check_key(config, group, key));
  report.checks.push_back(pass(checks::kSignatures, "skipped: signatures are removed before publication"));
  report.checks.push_back(check_wellformed(parsed, config, group, key));
  report.checks.push_back(check_mix_input(parsed));
  report.checks.push_back(check_mix_stages(parsed, config, group, key));
  report.checks.push_back(check_decryption(parsed, group, key));
  report.checks.push_back(check_counts(parsed, config));
  report.overall = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.passed; });
  return report;
}

}  // namespace evote
