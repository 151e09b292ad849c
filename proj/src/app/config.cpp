#include "evote/app/config.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "evote/common/errors.hpp"

namespace evote::app {

namespace {

void allow_keys(const json& j, std::initializer_list<std::string_view> keys, std::string_view what) {
  if (!j.is_object()) throw UsageError(std::string(what) + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw UsageError("unknown key '" + k + "' in " + std::string(what));
    }
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::size_t resolve_choice(const json& v, const ElectionConfig& config) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    auto it = std::find(config.candidates.begin(), config.candidates.end(), s);
    if (it == config.candidates.end()) throw UsageError("unknown candidate '" + s + "'");
    return static_cast<std::size_t>(it - config.candidates.begin());
  }
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  throw UsageError("choice must be a candidate name or index");
}

TamperKind tamper_kind_from_string(const std::string& s) {
  if (s == "modify_after_signing") return TamperKind::ModifyAfterSigning;
  if (s == "unenrolled") return TamperKind::Unenrolled;
  if (s == "malformed_bypass") return TamperKind::MalformedBypass;
  throw UsageError("unknown tamper kind '" + s + "'");
}

std::string hex_of(const GroupElement& e) { return element_hex(e); }

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

ElectionConfig election_config_from_json(const json& j) {
  allow_keys(j,
             {"candidates", "group", "trustees", "mix_servers", "proof_rounds", "revote_allowed",
              "coercion_threshold", "receipt_ttl"},
             "election config");
  if (!j.contains("candidates")) throw UsageError("election config needs 'candidates'");
  ElectionConfig c;
  c.candidates = get_or<std::vector<std::string>>(j, "candidates", {});
  c.group = get_or<std::string>(j, "group", c.group);
  c.trustee_count = get_or<std::size_t>(j, "trustees", c.trustee_count);
  c.mix_server_count = get_or<std::size_t>(j, "mix_servers", c.mix_server_count);
  c.proof_rounds = get_or<std::size_t>(j, "proof_rounds", c.proof_rounds);
  c.revote_allowed = get_or<bool>(j, "revote_allowed", c.revote_allowed);
  c.coercion_threshold = get_or<double>(j, "coercion_threshold", c.coercion_threshold);
  c.receipt_ttl = get_or<LogicalTime>(j, "receipt_ttl", c.receipt_ttl);
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return c;
}

json to_json(const ElectionConfig& c) {
  return json{{"candidates", c.candidates},
              {"group", c.group},
              {"trustees", c.trustee_count},
              {"mix_servers", c.mix_server_count},
              {"proof_rounds", c.proof_rounds},
              {"revote_allowed", c.revote_allowed},
              {"coercion_threshold", c.coercion_threshold},
              {"receipt_ttl", c.receipt_ttl}};
}

json to_json(const PublicParams& p) {
  json commitments = json::array();
  for (const auto& c : p.key.commitments) commitments.push_back(hex_of(c));
  return json{{"config", to_json(p.config)}, {"election_key", {{"h", hex_of(p.key.h)}, {"commitments", commitments}}}};
}

PublicParams public_params_from_json(const json& j) {
  allow_keys(j, {"config", "election_key"}, "params");
  if (!j.contains("config") || !j.contains("election_key")) throw UsageError("params need 'config' and 'election_key'");
  PublicParams p;
  p.config = election_config_from_json(j.at("config"));
  const Group& group = Group::by_name(p.config.group);
  const json& k = j.at("election_key");
  allow_keys(k, {"h", "commitments"}, "election_key");
  try {
    p.key.h = element_from_hex(k.at("h").get<std::string>(), group);
    for (const auto& c : k.at("commitments")) p.key.commitments.push_back(element_from_hex(c.get<std::string>(), group));
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad election_key: ") + e.what());
  } catch (const Error& e) {
    throw UsageError(std::string("bad election_key: ") + e.what());
  }
  return p;
}

Scenario scenario_from_json(const json& j, const ElectionConfig& config, std::uint64_t seed) {
  allow_keys(j, {"voters", "votes", "generate", "tamper"}, "scenario");
  Scenario s;
  s.voters = get_or<std::vector<std::string>>(j, "voters", {});
  const bool explicit_voters = j.contains("voters");
  std::set<std::string> known(s.voters.begin(), s.voters.end());
  if (known.size() != s.voters.size()) throw UsageError("scenario lists a voter twice");

  for (const auto& v : j.value("votes", json::array())) {
    allow_keys(v, {"voter", "choice", "time"}, "vote");
    if (!v.contains("voter") || !v.contains("choice")) throw UsageError("a vote needs 'voter' and 'choice'");
    VoteEvent e;
    e.voter = v.at("voter").get<std::string>();
    e.choice = resolve_choice(v.at("choice"), config);
    e.time = get_or<LogicalTime>(v, "time", s.votes.size());
    if (!known.contains(e.voter)) {
      if (explicit_voters) throw UsageError("vote by unlisted voter '" + e.voter + "'");
      known.insert(e.voter);
      s.voters.push_back(e.voter);
    }
    s.votes.push_back(e);
  }

  if (j.contains("generate")) {
    const json& g = j.at("generate");
    allow_keys(g, {"voters", "revotes", "preferences", "prefix"}, "generate");
    const auto n = get_or<std::size_t>(g, "voters", 0);
    const auto revotes = get_or<std::size_t>(g, "revotes", 0);
    const auto prefix = get_or<std::string>(g, "prefix", "voter-");
    auto weights = get_or<std::vector<double>>(g, "preferences", std::vector<double>(config.candidates.size(), 1.0));
    if (weights.size() != config.candidates.size()) throw UsageError("one preference weight per candidate");
    if (revotes > n) throw UsageError("more re-votes than generated voters");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) throw UsageError("preference weights sum to zero");

    Drbg rng = Drbg(seed, "evote/scenario/generate");
    auto draw = [&] {
      double x = rng.unit() * total;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (x < weights[i]) return i;
        x -= weights[i];
      }
      return weights.size() - 1;
    };
    const LogicalTime base = s.votes.empty() ? 0 : s.votes.back().time + 1;
    std::vector<std::string> generated;
    for (std::size_t i = 0; i < n; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "%03zu", i);
      std::string id = prefix + name;
      if (!known.insert(id).second) throw UsageError("generated voter '" + id + "' already exists");
      s.voters.push_back(id);
      generated.push_back(id);
      s.votes.push_back({id, draw(), base + i});
    }
    // Partial Fisher-Yates picks who re-votes.
    for (std::size_t k = 0; k < revotes; ++k) {
      std::swap(generated[k], generated[k + rng.below_u64(generated.size() - k)]);
      s.votes.push_back({generated[k], draw(), base + n + k});
    }
  }

  for (const auto& t : j.value("tamper", json::array())) {
    allow_keys(t, {"kind", "voter", "choice", "values", "time"}, "tamper");
    if (!t.contains("kind") || !t.contains("voter")) throw UsageError("a tamper entry needs 'kind' and 'voter'");
    TamperEvent e;
    e.kind = tamper_kind_from_string(t.at("kind").get<std::string>());
    e.voter = t.at("voter").get<std::string>();
    if (t.contains("choice")) e.choice = resolve_choice(t.at("choice"), config);
    e.values = get_or<std::vector<std::uint64_t>>(t, "values", {});
    e.time = get_or<LogicalTime>(t, "time", 0);
    if (e.kind == TamperKind::MalformedBypass && e.values.size() != config.candidates.size()) {
      throw UsageError("malformed_bypass needs one value per candidate");
    }
    if (e.kind != TamperKind::Unenrolled && !known.contains(e.voter)) {
      throw UsageError("tamper entry names unknown voter '" + e.voter + "'");
    }
    if (e.kind == TamperKind::Unenrolled && known.contains(e.voter)) {
      throw UsageError("unenrolled tamper entry names an enrolled voter '" + e.voter + "'");
    }
    s.tampers.push_back(e);
  }

  for (const auto& v : s.votes) {
    if (v.choice >= config.candidates.size()) throw UsageError("vote choice out of range");
  }
  for (const auto& t : s.tampers) {
    if (t.choice >= config.candidates.size()) throw UsageError("tamper choice out of range");
  }
  return s;
}

coin::SimConfig sim_config_from_json(const json& j) {
  allow_keys(j,
             {"group", "candidates", "nodes", "rounds", "online_probability", "malicious_fraction", "mode",
              "vote_window", "preferences"},
             "simulation scenario");
  coin::SimConfig c;
  c.group = get_or<std::string>(j, "group", c.group);
  c.candidates = get_or<std::size_t>(j, "candidates", c.candidates);
  c.nodes = get_or<std::size_t>(j, "nodes", c.nodes);
  c.rounds = get_or<std::size_t>(j, "rounds", c.rounds);
  c.online_probability = get_or<double>(j, "online_probability", c.online_probability);
  c.malicious_fraction = get_or<double>(j, "malicious_fraction", c.malicious_fraction);
  c.vote_window = get_or<std::size_t>(j, "vote_window", c.vote_window);
  c.preferences = get_or<std::vector<double>>(j, "preferences", {});
  try {
    if (j.contains("mode")) c.mode = coin::forger_mode_from_string(j.at("mode").get<std::string>());
    c.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return c;
}

json to_json(const coin::SimReport& r, bool include_rounds) {
  json out{{"tally", r.tally},
           {"ground_truth", r.ground_truth},
           {"votes_cast", r.votes_cast},
           {"best_height", r.best_height},
           {"best_tip", to_hex(r.best_tip)},
           {"fork_count", r.fork_count},
           {"skipped_rounds", r.skipped_rounds},
           {"forged_rounds", r.forged_rounds},
           {"malicious_forged", r.malicious_forged},
           {"malicious_frequency", r.malicious_frequency},
           {"pending_txs", r.pending_txs}};
  if (include_rounds) {
    json rounds = json::array();
    for (const auto& rr : r.rounds) {
      json x{{"round", rr.round}, {"skipped", rr.skipped}, {"best_height", rr.best_height}};
      if (!rr.skipped) {
        x["forger"] = rr.forger;
        x["malicious"] = rr.malicious;
        x["block_txs"] = rr.block_txs;
      }
      rounds.push_back(std::move(x));
    }
    out["rounds"] = std::move(rounds);
  }
  return out;
}

}  // namespace evote::app
