#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "evote/app/config.hpp"
#include "evote/bulletin/audit.hpp"
#include "evote/registry/registry.hpp"

namespace evote::app {

struct RunArtifacts {
  PublicParams params;
  BulletinBoard board;
  std::optional<Registry> registry;
  ElectionResult result;
  // Homomorphic cross-check; empty if a malformed ballot pushed a slot sum
  // past the decode bound.
  std::optional<std::vector<std::uint64_t>> aggregate;
  std::vector<std::uint64_t> truth;  // last accepted choice per voter
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<Receipt> receipts;  // accepted casts, in order
  VerificationReport report;
};

// setup -> voting with receipts -> close -> tally -> universal verification,
// all in process. Every random draw comes from `seed`.
RunArtifacts run_election(const ElectionConfig& config, const Scenario& scenario, std::uint64_t seed);

// Trustee key generation only; what `setup` publishes.
PublicParams setup_election(const ElectionConfig& config, std::uint64_t seed);

json result_json(const RunArtifacts& run);
json report_json(const VerificationReport& report);

// Writes params.json, registry.tsv, board.jsonl, result.json, report.json and
// manifest.json into out_dir and returns the manifest.
json write_run(const RunArtifacts& run, const std::filesystem::path& out_dir, const Digest& config_digest,
               const Digest& scenario_digest, std::uint64_t seed);

std::string board_text(const BulletinBoard& board);
BulletinBoard load_board_file(const std::filesystem::path& path);

// SHA-256 of the compact JSON dump.
Digest json_digest(const json& j);

}  // namespace evote::app
