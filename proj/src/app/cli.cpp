#include "evote/app/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "evote/app/run.hpp"
#include "evote/common/errors.hpp"

namespace evote::app {

namespace {

namespace fs = std::filesystem;

void print_report(const VerificationReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  out << (report.overall ? "verification passed" : "verification FAILED") << "\n";
}

std::string join_counts(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::string group_thousands(std::uint64_t v) {
  std::string digits = std::to_string(v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verifiable e-voting protocol and BallotCoin simulator", "evote"};
  app.require_subcommand(1);

  std::string config_path, scenario_path, out_dir, board_path, params_path, mode;
  std::uint64_t seed = 1;
  std::size_t rounds = 0;
  std::uint64_t n_tx = 176329, bytes_per_tx = 200;
  bool timeline = false;
  bool as_json = false;

  auto* setup = app.add_subcommand("setup", "generate the trustees' election key and write params.json");
  setup->add_option("--config", config_path, "election config (JSON)")->required();
  setup->add_option("--seed", seed, "random seed");
  setup->add_option("--out-dir", out_dir, "output directory")->required();

  auto* run = app.add_subcommand("run", "run an election scenario end to end");
  run->add_option("--config", config_path, "election config (JSON)")->required();
  run->add_option("--scenario", scenario_path, "voting scenario (JSON)")->required();
  run->add_option("--seed", seed, "random seed");
  run->add_option("--out-dir", out_dir, "output directory")->required();

  auto* verify = app.add_subcommand("verify", "universal verification of a published board");
  verify->add_option("--board", board_path, "board.jsonl");
  verify->add_option("--params", params_path, "params.json");
  verify->add_option("--out-dir", out_dir, "directory holding board.jsonl and params.json");
  verify->add_flag("--json", as_json, "print the report as JSON");

  auto* coin_sim = app.add_subcommand("coin-sim", "run the BallotCoin network simulation");
  coin_sim->add_option("--scenario", scenario_path, "simulation scenario (JSON)")->required();
  coin_sim->add_option("--seed", seed, "random seed");
  coin_sim->add_option("--rounds", rounds, "override the number of rounds");
  coin_sim->add_option("--mode", mode, "override the forger lottery")->check(CLI::IsMember({"stake", "uniform"}));
  coin_sim->add_option("--out-dir", out_dir, "also write sim_report.json here");
  coin_sim->add_flag("--timeline", timeline, "include per-round records");

  auto* estimate = app.add_subcommand("estimate", "BallotCoin chain storage estimate");
  estimate->add_option("--transactions", n_tx, "number of transactions");
  estimate->add_option("--bytes-per-tx", bytes_per_tx, "bytes per transaction");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (setup->parsed()) {
      const json cfg = read_json_file(config_path);
      const PublicParams params = setup_election(election_config_from_json(cfg), seed);
      fs::create_directories(out_dir);
      write_text_file(fs::path(out_dir) / "params.json", to_json(params).dump(2) + "\n");
      out << "election key h = " << element_hex(params.key.h) << "\n";
      return kExitOk;
    }

    if (run->parsed()) {
      const json cfg_json = read_json_file(config_path);
      const json scn_json = read_json_file(scenario_path);
      const ElectionConfig config = election_config_from_json(cfg_json);
      const Scenario scenario = scenario_from_json(scn_json, config, seed);
      const RunArtifacts result = run_election(config, scenario, seed);
      const json manifest = write_run(result, out_dir, json_digest(to_json(config)), json_digest(scn_json), seed);
      out << "counts " << join_counts(result.result.counts) << " (" << group_thousands(result.result.invalid_count)
          << " invalid, " << result.result.revoked_count << " revoked)\n";
      out << "board head " << manifest.at("board_head").get<std::string>() << "\n";
      print_report(result.report, out);
      if (!result.report.overall) return kExitVerificationFailed;
      if (result.result.coercion.flagged) {
        out << "coercion flagged: revoked fraction " << result.result.coercion.revoked_fraction << " > "
            << result.result.coercion.threshold << "\n";
        return kExitCoercionFlagged;
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      if (board_path.empty() && !out_dir.empty()) board_path = (fs::path(out_dir) / "board.jsonl").string();
      if (params_path.empty() && !out_dir.empty()) params_path = (fs::path(out_dir) / "params.json").string();
      if (board_path.empty() || params_path.empty()) throw UsageError("verify needs --board and --params, or --out-dir");
      const PublicParams params = public_params_from_json(read_json_file(params_path));
      const BulletinBoard board = load_board_file(board_path);
      const VerificationReport report =
          universal_verify(board, params.config, Group::by_name(params.config.group), params.key);
      if (as_json) {
        out << report_json(report).dump(2) << "\n";
      } else {
        print_report(report, out);
      }
      return report.overall ? kExitOk : kExitVerificationFailed;
    }

    if (coin_sim->parsed()) {
      coin::SimConfig cfg = sim_config_from_json(read_json_file(scenario_path));
      if (rounds > 0) cfg.rounds = rounds;
      if (!mode.empty()) cfg.mode = coin::forger_mode_from_string(mode);
      const coin::SimReport report = coin::simulate(cfg, seed);
      const json j = to_json(report, timeline);
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_text_file(fs::path(out_dir) / "sim_report.json", j.dump(2) + "\n");
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (estimate->parsed()) {
      const coin::StorageEstimate e = coin::estimate_storage(n_tx, bytes_per_tx);
      out << group_thousands(e.bytes) << " bytes (" << e.mib_string() << " MiB)\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace evote::app
