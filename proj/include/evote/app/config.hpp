#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evote/ballotcoin/simulator.hpp"
#include "evote/common/errors.hpp"
#include "evote/tally/election.hpp"

namespace evote::app {

// Bad input files or flags; maps to the usage exit code.
class UsageError : public Error {
 public:
  using Error::Error;
};

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Election config file:
//   {"candidates": [...], "group": "test256", "trustees": 3, "mix_servers": 3,
//    "proof_rounds": 20, "revote_allowed": true, "coercion_threshold": 1.0,
//    "receipt_ttl": 30}
// Only "candidates" is required. Unknown keys are rejected.
ElectionConfig election_config_from_json(const json& j);
json to_json(const ElectionConfig& config);

// What a verifier needs besides the board: configuration and the trustees'
// public commitments.
struct PublicParams {
  ElectionConfig config;
  ElectionKey key;
};

json to_json(const PublicParams& params);
PublicParams public_params_from_json(const json& j);

struct VoteEvent {
  std::string voter;
  std::size_t choice = 0;
  LogicalTime time = 0;
};

enum class TamperKind {
  ModifyAfterSigning,  // ciphertext altered after the voter signed
  Unenrolled,          // signed with a key the registry never issued
  MalformedBypass,     // non-unit plaintext slipped into the tally input past the ballot box
};

struct TamperEvent {
  TamperKind kind = TamperKind::ModifyAfterSigning;
  std::string voter;
  std::size_t choice = 0;
  std::vector<std::uint64_t> values;  // MalformedBypass slot plaintexts
  LogicalTime time = 0;
};

// Scenario file:
//   {"voters": [...],
//    "votes": [{"voter": "alice", "choice": 1 | "B", "time": 3}, ...],
//    "generate": {"voters": 100, "revotes": 10, "preferences": [..]},
//    "tamper": [{"kind": "modify_after_signing" | "unenrolled" | "malformed_bypass",
//                "voter": "...", "choice": .., "values": [..], "time": ..}]}
// "voters" defaults to every voter named in "votes", first appearance
// first. "generate" appends generated voters and votes, drawn from the seed.
struct Scenario {
  std::vector<std::string> voters;
  std::vector<VoteEvent> votes;
  std::vector<TamperEvent> tampers;
};

Scenario scenario_from_json(const json& j, const ElectionConfig& config, std::uint64_t seed);

// Simulation scenario for coin-sim; keys mirror coin::SimConfig, plus
// "mode": "stake" | "uniform".
coin::SimConfig sim_config_from_json(const json& j);
json to_json(const coin::SimReport& report, bool include_rounds);

}  // namespace evote::app
