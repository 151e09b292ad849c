#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evote/ballot/ballot.hpp"
#include "evote/bulletin/board.hpp"
#include "evote/group/threshold.hpp"
#include "evote/mixnet/mixnet.hpp"
#include "evote/registry/registry.hpp"

namespace evote {

struct ElectionConfig {
  std::vector<std::string> candidates;
  std::string group = "test256";
  std::size_t trustee_count = 3;
  std::size_t mix_server_count = 3;
  std::size_t proof_rounds = kDefaultProofRounds;
  bool revote_allowed = true;
  // No adequate default exists; 1.0 never flags.
  double coercion_threshold = 1.0;
  LogicalTime receipt_ttl = kDefaultReceiptTtl;

  // Throws InvalidArgument on an unusable configuration.
  void validate() const;
};

struct CoercionVerdict {
  double revoked_fraction = 0.0;
  double threshold = 0.0;
  bool flagged = false;  // revoked_fraction > threshold, strictly
};

// fraction = revoked / (revoked + kept), 0 when both are 0.
CoercionVerdict coercion_evidence(std::uint64_t revoked_count, std::uint64_t kept_count, double threshold);

struct ElectionResult {
  std::vector<std::uint64_t> counts;  // per candidate, config order
  std::uint64_t invalid_count = 0;
  std::uint64_t revoked_count = 0;
  std::uint64_t kept_count = 0;
  CoercionVerdict coercion;
  Digest final_batch_digest{};
  std::vector<std::uint64_t> proof_bundle;  // seq of every entry the tally posted
};

struct TallyOutcome {
  ElectionResult result;
  MixBatch mixed;
};

// filter_latest -> coercion_evidence -> strip_signatures -> mixnet (each stage
// verified, MixRejected otherwise) -> per ballot: partial decryptions with
// proofs by every trustee -> threshold decryption -> validate_decrypted ->
// count. Every intermediate artifact is posted to the board.
//
// Errors: MissingShareError / DuplicateShareError when the trustee set is not
// exactly 1..n, InvalidPartialProof, MixRejected.
TallyOutcome run_tally(const ElectionConfig& config, const Group& group, const ElectionKey& key,
                       std::span<const SignedBallot> collected, std::span<const TrusteeKeyShare> trustees,
                       std::span<MixServer* const> mix_servers, BulletinBoard& board);

// Homomorphic cross-check: slotwise product over the batch, one threshold
// decryption per candidate with decode bound = batch size.
// An empty batch yields n_candidates zeros.
std::vector<std::uint64_t> aggregate_check(const Group& group, const ElectionKey& key, const MixBatch& mixed,
                                           std::size_t n_candidates, std::span<const TrusteeKeyShare> trustees);

enum class ElectionPhase { Open, Closed, Tallied };

std::string_view to_string(ElectionPhase phase);

struct CastOutcome {
  bool accepted = false;
  std::optional<Receipt> receipt;
  std::string reason;  // set when rejected
};

// The single serialized election authority. Ballots are accepted only while
// Open; nothing that can decrypt runs before close().
class Election {
 public:
  Election(ElectionConfig config, const Group& group, ElectionKey key, const Registry& registry,
           BulletinBoard& board);

  // Logs the attempt, verifies the double envelope and on success publishes
  // the encrypted ballot and returns a receipt. Rejected ballots are not
  // stored. Throws ElectionClosed after close().
  CastOutcome cast(const SignedBallot& ballot, LogicalTime now);

  // Open -> Closed; returns the verified ballots in ingestion order.
  // Throws AlreadyClosed on a second call.
  std::vector<SignedBallot> close();

  // Requires Closed (FairnessViolation while Open); moves to Tallied.
  TallyOutcome tally(std::span<const SignedBallot> collected, std::span<const TrusteeKeyShare> trustees,
                     std::span<MixServer* const> mix_servers);

  // Requires Closed or Tallied (FairnessViolation while Open).
  std::vector<std::uint64_t> aggregate(const MixBatch& mixed, std::span<const TrusteeKeyShare> trustees) const;

  ElectionPhase phase() const { return phase_; }
  const ElectionConfig& config() const { return config_; }
  const ElectionKey& key() const { return key_; }

 private:
  void require_closed(const char* what) const;

  ElectionConfig config_;
  Group group_;
  ElectionKey key_;
  const Registry& registry_;
  BulletinBoard& board_;
  ElectionPhase phase_ = ElectionPhase::Open;
  std::vector<SignedBallot> ballot_box_;
  std::vector<std::string> voted_;  // sorted, only used when re-voting is off
};

}  // namespace evote
