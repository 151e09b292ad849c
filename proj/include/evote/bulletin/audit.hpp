#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evote/bulletin/board.hpp"
#include "evote/group/threshold.hpp"
#include "evote/tally/election.hpp"

namespace evote {

// Names of the checks universal_verify reports, in report order.
namespace checks {
inline constexpr std::string_view kChainIntegrity = "chain_integrity";
inline constexpr std::string_view kElectionKey = "election_key";
inline constexpr std::string_view kSignatures = "signatures";
inline constexpr std::string_view kWellformedness = "wellformedness";
inline constexpr std::string_view kMixInput = "mix_input";
inline constexpr std::string_view kMixStages = "mix_stages";
inline constexpr std::string_view kDecryptionProofs = "decryption_proofs";
inline constexpr std::string_view kCountRecomputation = "count_recomputation";
}  // namespace checks

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckOutcome> checks;
  bool overall = false;  // every check passed

  // nullptr if no check carries that name.
  const CheckOutcome* find(std::string_view name) const;
  bool passed(std::string_view name) const;
};

// Replays everything a voter or observer can check from public data only:
// chain integrity, the election key against the trustee commitments, every
// well-formedness proof, every mix stage, every decryption proof, and the
// final counts. Signatures are reported as skipped: the outer envelope is
// stripped before anything is published.
VerificationReport universal_verify(const BulletinBoard& board, const ElectionConfig& config, const Group& group,
                                    const ElectionKey& key);

}  // namespace evote
