#include <gtest/gtest.h>

#include <numeric>

#include "evote/ballotcoin/simulator.hpp"
#include "evote/common/errors.hpp"

using namespace evote;
using namespace evote::coin;

namespace {

const Group& G() { return Group::test256(); }

struct Env {
  std::vector<WalletKeys> cands;
  std::vector<WalletKeys> voters;
  Chain chain;

  static Env make(std::size_t nc, std::size_t nv, std::uint64_t seed) {
    Drbg rng(seed, "coin-test");
    std::vector<WalletKeys> c, v;
    std::vector<Address> ca, va;
    for (std::size_t i = 0; i < nc; ++i) {
      c.push_back(make_wallet(G(), rng));
      ca.push_back(c.back().address);
    }
    for (std::size_t i = 0; i < nv; ++i) {
      v.push_back(make_wallet(G(), rng));
      va.push_back(v.back().address);
    }
    return {c, v, Chain::genesis(ca, va)};
  }
};

}  // namespace

TEST(Chain, GenesisAllocation) {
  auto s = Env::make(3, 5, 1);
  EXPECT_EQ(s.chain.length(), 1u);
  EXPECT_EQ(s.chain.height(), 0u);
  EXPECT_EQ(s.chain.tip().prev_digest, s.chain.allocation().digest());
  for (const auto& v : s.voters) EXPECT_EQ(s.chain.balance(v.address), 1u);
  for (const auto& c : s.cands) {
    EXPECT_EQ(s.chain.balance(c.address), 0u);
    EXPECT_TRUE(s.chain.is_candidate(c.address));
  }
  EXPECT_EQ(tally_chain(s.chain), (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_THROW(Chain::genesis({}, {s.voters[0].address}), InvalidArgument);
  EXPECT_THROW(Chain::genesis({s.cands[0].address}, {s.cands[0].address}), InvalidArgument);
}

TEST(Chain, AddressIsKeyDigest) {
  Drbg rng(2);
  const auto w = make_wallet(G(), rng);
  EXPECT_EQ(w.address, address_of(w.verify_key));
  EXPECT_EQ(w.verify_key, G().g_pow(w.signing_key));
}

TEST(Chain, TransactionValidation) {
  auto s = Env::make(2, 3, 3);
  const auto tx = make_transaction(G(), s.voters[0], s.cands[1].address, 0);
  EXPECT_TRUE(validate_tx(G(), s.chain, {}, tx));

  auto bad = tx;
  bad.amount = 2;
  EXPECT_FALSE(validate_tx(G(), s.chain, {}, bad));
  bad = tx;
  bad.to = s.voters[1].address;
  EXPECT_FALSE(validate_tx(G(), s.chain, {}, bad));
  bad = tx;
  bad.timestamp = 7;
  EXPECT_FALSE(validate_tx(G(), s.chain, {}, bad));
  bad = tx;
  bad.sender_key = s.voters[1].verify_key;
  EXPECT_FALSE(validate_tx(G(), s.chain, {}, bad));

  // A candidate has nothing to give and is not a voter anyway.
  EXPECT_FALSE(validate_tx(G(), s.chain, {}, make_transaction(G(), s.cands[0], s.cands[1].address, 0)));
  // The same coin twice.
  const auto again = make_transaction(G(), s.voters[0], s.cands[0].address, 1);
  const std::vector<CoinTransaction> earlier{tx};
  EXPECT_FALSE(validate_tx(G(), s.chain, earlier, again));
}

TEST(Chain, ForgeDropsDoubleSpendAndExtends) {
  auto s = Env::make(2, 3, 4);
  const std::vector<CoinTransaction> pool{
      make_transaction(G(), s.voters[0], s.cands[0].address, 0),
      make_transaction(G(), s.voters[0], s.cands[1].address, 0),
      make_transaction(G(), s.voters[1], s.cands[1].address, 0),
  };
  const Block b = forge_block(G(), 2, s.voters[2], pool, s.chain);
  EXPECT_EQ(b.txs.size(), 2u);
  EXPECT_TRUE(validate_block(G(), s.chain, b));
  const Chain next = s.chain.extended(G(), b);
  EXPECT_EQ(next.height(), 1u);
  EXPECT_EQ(tally_chain(next), (std::vector<std::uint64_t>{1, 1}));
  EXPECT_EQ(next.balance(s.voters[0].address), 0u);
  EXPECT_TRUE(next.contains_tx(tx_digest(pool[0])));
  // Earlier snapshot untouched.
  EXPECT_EQ(tally_chain(s.chain), (std::vector<std::uint64_t>{0, 0}));
  // A tx already on the chain cannot be replayed.
  const Block replay = forge_block(G(), 2, s.voters[2], pool, next);
  EXPECT_TRUE(replay.txs.empty());

  std::uint64_t supply = 0;
  for (const auto& w : next.wallets()) supply += w.balance;
  EXPECT_EQ(supply, 3u);
}

TEST(Chain, BlockValidationRejectsTampering) {
  auto s = Env::make(2, 3, 5);
  const std::vector<CoinTransaction> pool{make_transaction(G(), s.voters[0], s.cands[0].address, 0)};
  const Block good = forge_block(G(), 1, s.voters[1], pool, s.chain);

  Block b = good;
  b.prev_digest[0] ^= 1;
  b.digest = compute_block_digest(b);
  EXPECT_FALSE(validate_block(G(), s.chain, b));

  b = good;
  b.height = 2;
  EXPECT_FALSE(validate_block(G(), s.chain, b));

  b = good;
  b.digest[0] ^= 1;
  EXPECT_FALSE(validate_block(G(), s.chain, b));

  b = good;
  b.txs.clear();
  b.digest = compute_block_digest(b);
  EXPECT_FALSE(validate_block(G(), s.chain, b));  // signature no longer covers the body

  b = good;
  b.txs.push_back(b.txs[0]);
  b.signature = sign(G(), s.voters[1].signing_key, block_signed_message(b));
  b.digest = compute_block_digest(b);
  EXPECT_FALSE(validate_block(G(), s.chain, b));

  // Candidates cannot forge.
  const Block by_candidate = forge_block(G(), 9, s.cands[0], pool, s.chain);
  EXPECT_FALSE(validate_block(G(), s.chain, by_candidate));
  EXPECT_THROW(s.chain.extended(G(), by_candidate), InvalidArgument);
}

TEST(Chain, ForkChoicePrefersLongerThenSmallerTip) {
  auto s = Env::make(1, 4, 6);
  Chain a = s.chain, b = s.chain;
  for (int i = 0; i < 3; ++i) a = a.extended(G(), forge_block(G(), 0, s.voters[0], {}, a));
  for (int i = 0; i < 5; ++i) b = b.extended(G(), forge_block(G(), 1, s.voters[1], {}, b));
  std::vector<Chain> chains{a, b};
  EXPECT_EQ(fork_choice(chains).tip().digest, b.tip().digest);
  std::vector<Chain> reversed{b, a};
  EXPECT_EQ(fork_choice(reversed).tip().digest, b.tip().digest);

  Chain c = s.chain.extended(G(), forge_block(G(), 2, s.voters[2], {}, s.chain));
  Chain d = s.chain.extended(G(), forge_block(G(), 3, s.voters[3], {}, s.chain));
  const Digest smaller = std::min(c.tip().digest, d.tip().digest);
  std::vector<Chain> tie1{c, d}, tie2{d, c};
  EXPECT_EQ(fork_choice(tie1).tip().digest, smaller);
  EXPECT_EQ(fork_choice(tie2).tip().digest, smaller);
  EXPECT_THROW(fork_choice(std::span<const Chain>{}), InvalidArgument);
}

TEST(Storage, WorkedExample) {
  const auto e = estimate_storage(176329, 200);
  EXPECT_EQ(e.bytes, 35265800u);
  EXPECT_EQ(e.mib_string(), "33.6");
  EXPECT_EQ(estimate_storage(0, 200).bytes, 0u);
  EXPECT_THROW(estimate_storage(~0ull, 2), InvalidArgument);
}

TEST(Forger, DeterministicAndOnlineOnly) {
  std::vector<NodeState> nodes(5);
  for (std::uint32_t i = 0; i < 5; ++i) {
    nodes[i].node_id = i;
    nodes[i].wallet.balance = 1;
  }
  EXPECT_EQ(select_forger(nodes, ForgerMode::Uniform, 1, 7), select_forger(nodes, ForgerMode::Uniform, 1, 7));
  nodes[0].online = nodes[1].online = nodes[2].online = nodes[3].online = false;
  for (int r = 0; r < 50; ++r) EXPECT_EQ(select_forger(nodes, ForgerMode::StakeWeighted, 1, r), 4u);
  nodes[4].online = false;
  EXPECT_THROW(select_forger(nodes, ForgerMode::Uniform, 1, 0), NoOnlineNodes);
  nodes[4].online = true;
  nodes[4].wallet.balance = 0;
  EXPECT_THROW(select_forger(nodes, ForgerMode::StakeWeighted, 1, 0), NoOnlineNodes);
  EXPECT_EQ(select_forger(nodes, ForgerMode::Uniform, 1, 0), 4u);
}

TEST(Forger, StakeProportional) {
  std::vector<NodeState> nodes(4);
  const std::uint64_t stake[] = {1, 2, 3, 4};
  for (std::uint32_t i = 0; i < 4; ++i) {
    nodes[i].node_id = i;
    nodes[i].wallet.balance = stake[i];
  }
  std::vector<int> hits(4);
  const int draws = 20000;
  for (int r = 0; r < draws; ++r) ++hits[select_forger(nodes, ForgerMode::StakeWeighted, 11, r)];
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(hits[i] / double(draws), stake[i] / 10.0, 0.015) << i;
}

TEST(Forger, UniformIgnoresBalances) {
  std::vector<NodeState> a(4), b(4);
  for (std::uint32_t i = 0; i < 4; ++i) {
    a[i].node_id = b[i].node_id = i;
    a[i].wallet.balance = 1;
    b[i].wallet.balance = 100 * i;
  }
  for (int r = 0; r < 200; ++r) {
    EXPECT_EQ(select_forger(a, ForgerMode::Uniform, 3, r), select_forger(b, ForgerMode::Uniform, 3, r));
  }
}

TEST(Simulator, HonestRunCountsEveryVote) {
  SimConfig c;
  c.nodes = 30;
  c.rounds = 20;
  c.vote_window = 10;
  const auto r = simulate(c, 7);
  EXPECT_EQ(r.fork_count, 0u);
  EXPECT_EQ(r.votes_cast, 30u);
  EXPECT_EQ(r.tally, r.ground_truth);
  EXPECT_EQ(r.pending_txs, 0u);
  EXPECT_EQ(std::accumulate(r.tally.begin(), r.tally.end(), std::uint64_t{0}), 30u);
  EXPECT_EQ(r.best_height, r.forged_rounds);
}

TEST(Simulator, Deterministic) {
  SimConfig c;
  c.nodes = 20;
  c.rounds = 15;
  c.malicious_fraction = 0.2;
  c.online_probability = 0.8;
  const auto a = simulate(c, 9), b = simulate(c, 9);
  EXPECT_EQ(a.best_tip, b.best_tip);
  EXPECT_EQ(a.tally, b.tally);
  EXPECT_EQ(a.fork_count, b.fork_count);
}

TEST(Simulator, MaliciousFrequencyTracksFraction) {
  SimConfig c;
  c.nodes = 100;
  c.rounds = 1000;
  c.malicious_fraction = 0.1;
  c.vote_window = 10;
  const auto r = simulate(c, 13);
  EXPECT_NEAR(r.malicious_frequency, 0.1, 0.03);
  EXPECT_GT(r.fork_count, 0u);
  EXPECT_EQ(r.tally, r.ground_truth);  // honest blocks keep the chain live
}

TEST(Simulator, AllOfflineSkipsEveryRound) {
  SimConfig c;
  c.nodes = 10;
  c.rounds = 8;
  c.online_probability = 0.0;
  const auto r = simulate(c, 1);
  EXPECT_EQ(r.skipped_rounds, 8u);
  EXPECT_EQ(r.best_height, 0u);
  EXPECT_EQ(r.tally, (std::vector<std::uint64_t>{0, 0, 0}));
}

TEST(Simulator, SupplyConserved) {
  SimConfig c;
  c.nodes = 25;
  c.rounds = 30;
  c.online_probability = 0.7;
  c.malicious_fraction = 0.2;
  const auto r = simulate(c, 21);
  ASSERT_TRUE(r.best_chain.has_value());
  std::uint64_t supply = 0;
  for (const auto& w : r.best_chain->wallets()) supply += w.balance;
  EXPECT_EQ(supply, 25u);
  for (std::size_t h = 0; h <= r.best_chain->height(); ++h) {
    EXPECT_EQ(r.best_chain->block(h).height, h);
  }
}

TEST(Simulator, ConfigValidation) {
  SimConfig c;
  c.candidates = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SimConfig{};
  c.online_probability = 1.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SimConfig{};
  c.preferences = {1.0};
  EXPECT_THROW(c.validate(), InvalidArgument);
}
