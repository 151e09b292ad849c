#include "evote/app/run.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "evote/common/errors.hpp"

namespace evote::app {

namespace {

struct Event {
  LogicalTime time = 0;
  bool is_vote = true;
  std::size_t index = 0;  // into votes or tampers
};

std::vector<Event> timeline(const Scenario& s) {
  std::vector<Event> ev;
  for (std::size_t i = 0; i < s.votes.size(); ++i) ev.push_back({s.votes[i].time, true, i});
  for (std::size_t i = 0; i < s.tampers.size(); ++i) {
    if (s.tampers[i].kind != TamperKind::MalformedBypass) ev.push_back({s.tampers[i].time, false, i});
  }
  std::stable_sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.time < b.time; });
  return ev;
}

ElectionKey make_key(const Group& group, const ElectionConfig& config, const Drbg& root,
                     std::vector<TrusteeKeyShare>* shares) {
  Drbg rng = root.fork("trustees");
  auto [key, s] = threshold_keygen(group, config.trustee_count, rng);
  if (shares != nullptr) *shares = std::move(s);
  return key;
}

}  // namespace

PublicParams setup_election(const ElectionConfig& config, std::uint64_t seed) {
  config.validate();
  const Group& group = Group::by_name(config.group);
  return {config, make_key(group, config, Drbg(seed, "evote/run"), nullptr)};
}

RunArtifacts run_election(const ElectionConfig& config, const Scenario& scenario, std::uint64_t seed) {
  config.validate();
  const Group& group = Group::by_name(config.group);
  const Drbg root(seed, "evote/run");
  RunArtifacts run;

  run.registry.emplace(group);
  std::map<std::string, VoterCredential> creds;
  {
    Drbg rng = root.fork("enroll");
    for (const auto& id : scenario.voters) creds.emplace(id, run.registry->enroll(id, rng));
  }

  std::vector<TrusteeKeyShare> shares;
  run.params = {config, make_key(group, config, root, &shares)};
  const ElectionKey& key = run.params.key;
  const std::size_t n = config.candidates.size();

  Election election(config, group, key, *run.registry, run.board);
  std::map<std::string, std::size_t> last_choice;
  for (const Event& ev : timeline(scenario)) {
    Drbg rng = root.fork(ev.is_vote ? "vote" : "tamper", ev.index);
    SignedBallot ballot;
    std::optional<std::size_t> choice;
    std::string voter;
    if (ev.is_vote) {
      const auto& v = scenario.votes[ev.index];
      ballot = compose_ballot(group, creds.at(v.voter), key.h, encode_choice(v.choice, n), v.time, rng);
      choice = v.choice;
      voter = v.voter;
    } else {
      const auto& t = scenario.tampers[ev.index];
      if (t.kind == TamperKind::ModifyAfterSigning) {
        ballot = compose_ballot(group, creds.at(t.voter), key.h, encode_choice(t.choice, n), t.time, rng);
        ballot.encrypted.slots.front().c2 = group.mul(ballot.encrypted.slots.front().c2, group.generator());
      } else {
        const KeyPair rogue = keygen(group, rng);
        const VoterCredential fake{t.voter, rogue.sk, rogue.pk};
        ballot = compose_ballot(group, fake, key.h, encode_choice(t.choice, n), t.time, rng);
      }
    }
    const CastOutcome out = election.cast(ballot, ballot.timestamp);
    if (out.accepted) {
      ++run.accepted;
      run.receipts.push_back(*out.receipt);
      if (choice) last_choice[voter] = *choice;
    } else {
      ++run.rejected;
    }
  }

  std::vector<SignedBallot> collected = election.close();
  for (std::size_t i = 0; i < scenario.tampers.size(); ++i) {
    const auto& t = scenario.tampers[i];
    if (t.kind != TamperKind::MalformedBypass) continue;
    Drbg rng = root.fork("bypass", i);
    collected.push_back(compose_raw_ballot(group, creds.at(t.voter), key.h, t.values, t.time, rng));
  }

  std::vector<std::unique_ptr<MixServer>> servers;
  std::vector<MixServer*> chain;
  for (std::size_t i = 0; i < config.mix_server_count; ++i) {
    servers.push_back(std::make_unique<HonestMixServer>(root.fork("mix", i)));
    chain.push_back(servers.back().get());
  }
  TallyOutcome tally = election.tally(collected, shares, chain);
  run.result = tally.result;
  try {
    run.aggregate = election.aggregate(tally.mixed, shares);
  } catch (const DecodeRangeError&) {
    run.aggregate.reset();
  }

  run.truth.assign(n, 0);
  for (const auto& [voter, c] : last_choice) ++run.truth[c];
  run.report = universal_verify(run.board, config, group, key);
  return run;
}

json result_json(const RunArtifacts& run) {
  const ElectionResult& r = run.result;
  json j{{"candidates", run.params.config.candidates},
         {"counts", r.counts},
         {"invalid", r.invalid_count},
         {"revoked", r.revoked_count},
         {"kept", r.kept_count},
         {"coercion",
          {{"revoked_fraction", r.coercion.revoked_fraction},
           {"threshold", r.coercion.threshold},
           {"flagged", r.coercion.flagged}}},
         {"final_batch_digest", to_hex(r.final_batch_digest)},
         {"board_head", to_hex(run.board.head())},
         {"accepted_ballots", run.accepted},
         {"rejected_ballots", run.rejected},
         {"scenario_truth", run.truth},
         {"verified", run.report.overall}};
  j["aggregate_counts"] = run.aggregate ? json(*run.aggregate) : json(nullptr);
  return j;
}

json report_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"overall", report.overall}, {"checks", checks}};
}

std::string board_text(const BulletinBoard& board) {
  std::ostringstream out;
  board.save(out);
  return out.str();
}

BulletinBoard load_board_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  try {
    return BulletinBoard::load(in);
  } catch (const Error& e) {
    throw UsageError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

Digest json_digest(const json& j) {
  const std::string s = j.dump();
  return sha256(as_bytes(s));
}

json write_run(const RunArtifacts& run, const std::filesystem::path& out_dir, const Digest& config_digest,
               const Digest& scenario_digest, std::uint64_t seed) {
  std::filesystem::create_directories(out_dir);
  const json files{{"params", "params.json"}, {"registry", "registry.tsv"}, {"board", "board.jsonl"},
                   {"result", "result.json"}, {"report", "report.json"}};
  write_text_file(out_dir / "params.json", to_json(run.params).dump(2) + "\n");
  std::ostringstream reg;
  run.registry->save(reg);
  write_text_file(out_dir / "registry.tsv", reg.str());
  write_text_file(out_dir / "board.jsonl", board_text(run.board));
  write_text_file(out_dir / "result.json", result_json(run).dump(2) + "\n");
  write_text_file(out_dir / "report.json", report_json(run.report).dump(2) + "\n");
  json manifest{{"seed", seed},
                {"config_digest", to_hex(config_digest)},
                {"scenario_digest", to_hex(scenario_digest)},
                {"board_head", to_hex(run.board.head())},
                {"files", files}};
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace evote::app
