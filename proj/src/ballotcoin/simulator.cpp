#include "evote/ballotcoin/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "evote/common/errors.hpp"

namespace evote::coin {

namespace {

std::size_t draw_candidate(RandomSource& rng, const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double x = rng.unit() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

constexpr std::uint64_t kStaleDepth = 6;

struct Voter {
  WalletKeys keys;
  std::uint64_t vote_round = 0;
  std::size_t choice = 0;
};

}  // namespace

void SimConfig::validate() const {
  if (candidates == 0) throw InvalidArgument("simulation needs at least one candidate");
  if (rounds == 0) throw InvalidArgument("simulation needs at least one round");
  if (!(online_probability >= 0.0 && online_probability <= 1.0)) {
    throw InvalidArgument("online_probability must lie in [0, 1]");
  }
  if (!(malicious_fraction >= 0.0 && malicious_fraction <= 1.0)) {
    throw InvalidArgument("malicious_fraction must lie in [0, 1]");
  }
  if (!preferences.empty()) {
    if (preferences.size() != candidates) throw InvalidArgument("one preference weight per candidate");
    double total = 0.0;
    for (double w : preferences) {
      if (!(w >= 0.0)) throw InvalidArgument("preference weights must be non-negative");
      total += w;
    }
    if (!(total > 0.0)) throw InvalidArgument("preference weights sum to zero");
  }
  Group::by_name(group);
}

SimReport simulate(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  const Group& group = Group::by_name(config.group);
  const Drbg root(seed, "evote/ballotcoin/sim");

  std::vector<Address> candidate_addrs;
  for (std::size_t c = 0; c < config.candidates; ++c) {
    Drbg rng = root.fork("candidate", c);
    candidate_addrs.push_back(make_wallet(group, rng).address);
  }

  const std::vector<double> weights =
      config.preferences.empty() ? std::vector<double>(config.candidates, 1.0) : config.preferences;
  const std::size_t window = config.vote_window == 0 ? config.rounds : config.vote_window;
  std::vector<Voter> voters(config.nodes);
  std::vector<NodeState> nodes(config.nodes);
  Drbg plan = root.fork("plan");
  for (std::size_t i = 0; i < config.nodes; ++i) {
    Drbg rng = root.fork("wallet", i);
    voters[i].keys = make_wallet(group, rng);
    voters[i].vote_round = plan.below_u64(window);
    voters[i].choice = draw_candidate(plan, weights);
    nodes[i].node_id = static_cast<std::uint32_t>(i);
    nodes[i].wallet = {voters[i].keys.address, 1, false};
  }

  // Partial Fisher-Yates picks the malicious set.
  const auto n_malicious =
      static_cast<std::size_t>(std::llround(config.malicious_fraction * static_cast<double>(config.nodes)));
  {
    std::vector<std::size_t> order(config.nodes);
    std::iota(order.begin(), order.end(), 0);
    Drbg rng = root.fork("malicious");
    for (std::size_t i = 0; i < n_malicious; ++i) {
      std::swap(order[i], order[i + rng.below_u64(config.nodes - i)]);
      nodes[order[i]].malicious = true;
    }
  }

  std::vector<Address> voter_addrs;
  for (const auto& v : voters) voter_addrs.push_back(v.keys.address);

  SimReport report;
  report.ground_truth.assign(config.candidates, 0);
  for (const auto& v : voters) ++report.ground_truth[v.choice];

  std::map<Digest, Chain> by_tip;
  std::vector<Digest> tips;
  std::set<Digest> has_child;
  const Chain genesis = Chain::genesis(candidate_addrs, voter_addrs);
  by_tip.emplace(genesis.tip().digest, genesis);
  tips.push_back(genesis.tip().digest);
  Digest best = genesis.tip().digest;
  std::vector<CoinTransaction> pool;

  for (std::uint64_t r = 0; r < config.rounds; ++r) {
    Drbg churn = root.fork("churn", r);
    for (auto& n : nodes) n.online = churn.unit() < config.online_probability;

    for (const auto& v : voters) {
      if (v.vote_round == r) {
        pool.push_back(make_transaction(group, v.keys, candidate_addrs[v.choice], r));
        ++report.votes_cast;
      }
    }

    const Chain& best_chain = by_tip.at(best);
    for (auto& n : nodes) n.wallet.balance = best_chain.balance(n.wallet.address);

    RoundRecord rec;
    rec.round = r;
    std::uint32_t forger = 0;
    try {
      forger = select_forger(nodes, config.mode, seed, r);
    } catch (const NoOnlineNodes&) {
      rec.skipped = true;
      rec.best_height = best_chain.height();
      ++report.skipped_rounds;
      report.rounds.push_back(rec);
      continue;
    }
    rec.forger = forger;
    rec.malicious = nodes[forger].malicious;
    ++report.forged_rounds;
    if (rec.malicious) ++report.malicious_forged;

    const Chain* parent = &best_chain;
    std::span<const CoinTransaction> offered(pool);
    if (rec.malicious) {
      offered = {};
      if (best_chain.height() > 0) parent = &by_tip.at(best_chain.tip().prev_digest);
    }
    Block block = forge_block(group, forger, voters[forger].keys, offered, *parent);
    rec.block_txs = block.txs.size();
    const Digest parent_tip = parent->tip().digest;
    Chain next = parent->extended(group, std::move(block));
    const Digest new_tip = next.tip().digest;

    if (!has_child.insert(parent_tip).second) ++report.fork_count;
    std::erase(tips, parent_tip);
    tips.push_back(new_tip);
    by_tip.emplace(new_tip, std::move(next));

    std::vector<const Chain*> contenders;
    for (const auto& t : tips) contenders.push_back(&by_tip.at(t));
    best = fork_choice(contenders).tip().digest;

    const Chain& chosen = by_tip.at(best);
    // Tips this far behind can no longer win; forget them with every chain
    // that is neither a tip nor the parent of the best tip.
    std::erase_if(tips, [&](const Digest& t) { return by_tip.at(t).height() + kStaleDepth < chosen.height(); });
    const Digest keep_parent = chosen.tip().prev_digest;
    std::erase_if(by_tip, [&](const auto& kv) {
      return kv.first != keep_parent && std::find(tips.begin(), tips.end(), kv.first) == tips.end();
    });
    rec.best_height = chosen.height();
    report.rounds.push_back(rec);
  }

  const Chain& final_chain = by_tip.at(best);
  report.pending_txs = static_cast<std::size_t>(std::count_if(
      pool.begin(), pool.end(), [&](const CoinTransaction& tx) { return !final_chain.contains_tx(tx_digest(tx)); }));
  report.tally = tally_chain(final_chain);
  report.best_height = final_chain.height();
  report.best_tip = best;
  report.malicious_frequency = report.forged_rounds == 0 ? 0.0
                                                        : static_cast<double>(report.malicious_forged) /
                                                              static_cast<double>(report.forged_rounds);
  report.best_chain = final_chain;
  return report;
}

}  // namespace evote::coin
