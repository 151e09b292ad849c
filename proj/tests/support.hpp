#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "evote/bulletin/audit.hpp"
#include "evote/tally/election.hpp"

namespace evote::testing {

// Enrolled voters, trustees and honest mix servers around one board.
struct Harness {
  ElectionConfig config;
  const Group& group;
  Drbg rng;
  Registry registry;
  ElectionKey key;
  std::vector<TrusteeKeyShare> shares;
  std::map<std::string, VoterCredential> creds;
  BulletinBoard board;
  std::vector<std::unique_ptr<MixServer>> servers;
  std::vector<MixServer*> chain;

  Harness(ElectionConfig cfg, std::size_t n_voters, std::uint64_t seed)
      : config(std::move(cfg)), group(Group::by_name(config.group)), rng(seed, "harness"), registry(group) {
    auto [k, s] = threshold_keygen(group, config.trustee_count, rng);
    key = k;
    shares = s;
    for (std::size_t i = 0; i < n_voters; ++i) {
      const std::string id = "v" + std::to_string(i);
      creds.emplace(id, registry.enroll(id, rng));
    }
    for (std::size_t i = 0; i < config.mix_server_count; ++i) {
      servers.push_back(std::make_unique<HonestMixServer>(rng.fork("mix", i)));
      chain.push_back(servers.back().get());
    }
  }

  SignedBallot vote(const std::string& voter, std::size_t choice, LogicalTime t) {
    return compose_ballot(group, creds.at(voter), key.h, encode_choice(choice, config.candidates.size()), t, rng);
  }

  SignedBallot raw(const std::string& voter, const std::vector<std::uint64_t>& values, LogicalTime t) {
    return compose_raw_ballot(group, creds.at(voter), key.h, values, t, rng);
  }
};

inline ElectionConfig small_config(std::size_t candidates = 3, std::size_t rounds = 8) {
  ElectionConfig c;
  for (std::size_t i = 0; i < candidates; ++i) c.candidates.push_back(std::string(1, static_cast<char>('A' + i)));
  c.mix_server_count = 2;
  c.proof_rounds = rounds;
  return c;
}

}  // namespace evote::testing

namespace evote::testing {

// Recomputes seq, prev links and digests so only the semantic checks can
// notice an edit.
inline BulletinBoard reseal(std::vector<BulletinEntry> entries) {
  Digest prev = BulletinBoard::genesis_digest();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = entries[i];
    e.seq = i;
    e.prev_digest = prev;
    e.digest = BulletinBoard::entry_digest(prev, e.seq, e.kind, e.payload);
    prev = e.digest;
  }
  return BulletinBoard::from_entries(std::move(entries));
}

inline std::vector<std::size_t> entries_of(const BulletinBoard& board, EntryKind kind) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < board.size(); ++i) {
    if (board.entries()[i].kind == kind) idx.push_back(i);
  }
  return idx;
}

}  // namespace evote::testing
