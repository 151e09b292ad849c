#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evote/ballotcoin/chain.hpp"

namespace evote::coin {

struct SimConfig {
  std::string group = "test256";
  std::size_t candidates = 3;
  std::size_t nodes = 100;  // one voter per node
  std::size_t rounds = 50;
  double online_probability = 1.0;
  double malicious_fraction = 0.0;
  ForgerMode mode = ForgerMode::Uniform;
  // Voters broadcast their transaction in a round drawn from [0, vote_window).
  // 0 means the whole run.
  std::size_t vote_window = 0;
  // Relative weight per candidate for the simulated choices; empty is uniform.
  std::vector<double> preferences;

  // Throws InvalidArgument.
  void validate() const;
};

struct RoundRecord {
  std::uint64_t round = 0;
  bool skipped = false;  // nobody could forge
  std::uint32_t forger = 0;
  bool malicious = false;
  std::uint64_t best_height = 0;
  std::size_t block_txs = 0;
};

struct SimReport {
  std::vector<std::uint64_t> tally;         // best chain, candidate order
  std::vector<std::uint64_t> ground_truth;  // what the voters chose
  std::uint64_t votes_cast = 0;
  std::uint64_t best_height = 0;
  Digest best_tip{};
  std::size_t fork_count = 0;  // blocks whose parent already had a child
  std::size_t skipped_rounds = 0;
  std::size_t forged_rounds = 0;
  std::size_t malicious_forged = 0;
  double malicious_frequency = 0.0;  // malicious_forged / forged_rounds
  std::size_t pending_txs = 0;       // broadcast but not on the best chain
  std::vector<RoundRecord> rounds;
  std::optional<Chain> best_chain;
};

// Round loop: churn -> voters broadcast -> select_forger -> forge ->
// broadcast -> fork_choice. Honest forgers extend the best chain with every
// pending transaction; malicious forgers put an empty block on the parent of
// the best tip. A round where nobody can forge is recorded as skipped.
// Pure function of (config, seed).
SimReport simulate(const SimConfig& config, std::uint64_t seed);

}  // namespace evote::coin
