#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "evote/app/cli.hpp"
#include "evote/app/run.hpp"
#include "evote/tally/records.hpp"
#include "support.hpp"

using namespace evote;
using namespace evote::app;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("evote-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path write(const std::string& name, const json& j) const {
    write_text_file(path_ / name, j.dump());
    return path_ / name;
  }

 private:
  fs::path path_;
};

struct Cli {
  int code = 0;
  std::string out;
  std::string err;
};

Cli cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Cli r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const json kConfig = {{"candidates", {"A", "B", "C"}}, {"mix_servers", 2}, {"proof_rounds", 6}};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, RunWorkedExample) {
  TempDir t;
  const json scenario = {{"votes", {{{"voter", "alice"}, {"choice", "B"}},
                                    {{"voter", "bob"}, {"choice", "C"}},
                                    {{"voter", "carol"}, {"choice", 1}}}}};
  const auto r = cli({"run", "--config", t.write("c.json", kConfig).string(), "--scenario",
                      t.write("s.json", scenario).string(), "--seed", "42", "--out-dir", (t.path() / "out").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const json result = read_json_file(t.path() / "out" / "result.json");
  EXPECT_EQ(result["counts"], json({0, 2, 1}));
  EXPECT_EQ(result["aggregate_counts"], json({0, 2, 1}));
  EXPECT_TRUE(result["verified"].get<bool>());
  for (const char* f : {"params.json", "registry.tsv", "board.jsonl", "report.json", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(t.path() / "out" / f)) << f;
  }

  const auto v = cli({"verify", "--out-dir", (t.path() / "out").string()});
  EXPECT_EQ(v.code, kExitOk) << v.out << v.err;

  const auto vj = cli({"verify", "--out-dir", (t.path() / "out").string(), "--json"});
  EXPECT_EQ(vj.code, kExitOk);
  const json report = json::parse(vj.out);
  EXPECT_TRUE(report["overall"].get<bool>());
  EXPECT_EQ(report["checks"].size(), 8u);
  EXPECT_EQ(report["checks"][0]["name"], "chain_integrity");
}

TEST(Cli, DeterministicBoards) {
  TempDir t;
  const json scenario = {{"generate", {{"voters", 12}, {"revotes", 2}}}};
  const auto c = t.write("c.json", kConfig).string();
  const auto s = t.write("s.json", scenario).string();
  ASSERT_EQ(cli({"run", "--config", c, "--scenario", s, "--seed", "5", "--out-dir", (t.path() / "a").string()}).code, 0);
  ASSERT_EQ(cli({"run", "--config", c, "--scenario", s, "--seed", "5", "--out-dir", (t.path() / "b").string()}).code, 0);
  ASSERT_EQ(cli({"run", "--config", c, "--scenario", s, "--seed", "6", "--out-dir", (t.path() / "d").string()}).code, 0);
  EXPECT_EQ(slurp(t.path() / "a" / "board.jsonl"), slurp(t.path() / "b" / "board.jsonl"));
  EXPECT_EQ(slurp(t.path() / "a" / "manifest.json"), slurp(t.path() / "b" / "manifest.json"));
  EXPECT_NE(slurp(t.path() / "a" / "board.jsonl"), slurp(t.path() / "d" / "board.jsonl"));
}

TEST(Cli, CoercionFlagExitCode) {
  TempDir t;
  json config = kConfig;
  config["coercion_threshold"] = 0.05;
  config["proof_rounds"] = 2;
  const json flagged = {{"generate", {{"voters", 94}, {"revotes", 6}}}};
  const json quiet = {{"generate", {{"voters", 95}, {"revotes", 5}}}};
  const auto c = t.write("c.json", config).string();
  EXPECT_EQ(cli({"run", "--config", c, "--scenario", t.write("f.json", flagged).string(), "--seed", "1", "--out-dir",
                 (t.path() / "f").string()})
                .code,
            kExitCoercionFlagged);
  EXPECT_EQ(cli({"run", "--config", c, "--scenario", t.write("q.json", quiet).string(), "--seed", "1", "--out-dir",
                 (t.path() / "q").string()})
                .code,
            kExitOk);
}

TEST(Cli, VerifyFlagsEditedResult) {
  TempDir t;
  const json scenario = {{"generate", {{"voters", 6}}}};
  const auto out = t.path() / "out";
  ASSERT_EQ(cli({"run", "--config", t.write("c.json", kConfig).string(), "--scenario",
                 t.write("s.json", scenario).string(), "--seed", "3", "--out-dir", out.string()})
                .code,
            0);
  BulletinBoard board = load_board_file(out / "board.jsonl");
  auto entries = board.entries();
  for (auto& e : entries) {
    if (e.kind != EntryKind::Result) continue;
    ResultRecord r = decode_result(e.payload);
    r.counts[0] += 1;
    e.payload = encode_record(r);
  }
  write_text_file(out / "board.jsonl", board_text(evote::testing::reseal(entries)));
  const auto v = cli({"verify", "--board", (out / "board.jsonl").string(), "--params", (out / "params.json").string()});
  EXPECT_EQ(v.code, kExitVerificationFailed);
  EXPECT_NE(v.out.find("FAIL count_recomputation"), std::string::npos) << v.out;
}

TEST(Cli, UsageErrors) {
  TempDir t;
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--board", (t.path() / "missing.jsonl").string(), "--params",
                 (t.path() / "missing.json").string()})
                .code,
            kExitUsage);
  EXPECT_EQ(cli({"run", "--config", t.write("bad.json", json{{"candidates", {"A"}}, {"colour", 1}}).string(),
                 "--scenario", t.write("s.json", json::object()).string()})
                .code,
            kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, SetupWritesParams) {
  TempDir t;
  const auto r = cli({"setup", "--config", t.write("c.json", kConfig).string(), "--seed", "8", "--out-dir",
                      t.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const PublicParams p = public_params_from_json(read_json_file(t.path() / "params.json"));
  EXPECT_EQ(p.config.candidates.size(), 3u);
  EXPECT_EQ(p.key.trustee_count(), 3u);
  EXPECT_TRUE(is_consistent(Group::by_name(p.config.group), p.key));
}

TEST(Cli, Estimate) {
  const auto r = cli({"estimate"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("35,265,800 bytes (33.6 MiB)"), std::string::npos) << r.out;
  EXPECT_EQ(group_thousands(0), "0");
  EXPECT_EQ(group_thousands(999), "999");
  EXPECT_EQ(group_thousands(1000), "1,000");
}

TEST(Cli, CoinSim) {
  TempDir t;
  const json scenario = {{"nodes", 15}, {"rounds", 12}, {"vote_window", 5}};
  const auto r = cli({"coin-sim", "--scenario", t.write("s.json", scenario).string(), "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["tally"], j["ground_truth"]);
  EXPECT_EQ(j["fork_count"], 0);
}

TEST(Scenario, GenerateAndValidate) {
  const ElectionConfig config = election_config_from_json(kConfig);
  const Scenario s = scenario_from_json(json{{"generate", {{"voters", 10}, {"revotes", 3}}}}, config, 4);
  EXPECT_EQ(s.voters.size(), 10u);
  EXPECT_EQ(s.votes.size(), 13u);
  EXPECT_EQ(s.voters.front(), "voter-000");
  EXPECT_THROW(scenario_from_json(json{{"votes", {{{"voter", "x"}, {"choice", "Z"}}}}}, config, 1), UsageError);
  EXPECT_THROW(scenario_from_json(json{{"generate", {{"voters", 2}, {"revotes", 3}}}}, config, 1), UsageError);
  EXPECT_THROW(scenario_from_json(json{{"voters", {"a"}}, {"votes", {{{"voter", "b"}, {"choice", 0}}}}}, config, 1),
               UsageError);
}
