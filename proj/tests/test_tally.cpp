#include <gtest/gtest.h>

#include <array>
#include <numeric>

#include "evote/common/errors.hpp"
#include "evote/tally/records.hpp"
#include "support.hpp"

using namespace evote;
using evote::testing::Harness;
using evote::testing::small_config;

TEST(Coercion, Examples) {
  auto v = coercion_evidence(0, 100, 0.05);
  EXPECT_EQ(v.revoked_fraction, 0.0);
  EXPECT_FALSE(v.flagged);
  v = coercion_evidence(6, 94, 0.05);
  EXPECT_DOUBLE_EQ(v.revoked_fraction, 0.06);
  EXPECT_TRUE(v.flagged);
  v = coercion_evidence(5, 95, 0.05);
  EXPECT_DOUBLE_EQ(v.revoked_fraction, 0.05);
  EXPECT_FALSE(v.flagged);
  EXPECT_FALSE(coercion_evidence(0, 0, 0.0).flagged);
}

TEST(Config, Validation) {
  ElectionConfig c = small_config();
  EXPECT_NO_THROW(c.validate());
  c.coercion_threshold = 1.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.candidates.clear();
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.trustee_count = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Tally, WorkedExample021) {
  Harness h(small_config(), 3, 1);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  EXPECT_TRUE(e.cast(h.vote("v0", 1, 1), 1).accepted);
  EXPECT_TRUE(e.cast(h.vote("v1", 2, 2), 2).accepted);
  EXPECT_TRUE(e.cast(h.vote("v2", 1, 3), 3).accepted);
  const auto collected = e.close();
  const TallyOutcome out = e.tally(collected, h.shares, h.chain);
  EXPECT_EQ(out.result.counts, (std::vector<std::uint64_t>{0, 2, 1}));
  EXPECT_EQ(out.result.invalid_count, 0u);
  EXPECT_EQ(e.aggregate(out.mixed, h.shares), out.result.counts);
  EXPECT_EQ(e.phase(), ElectionPhase::Tallied);
  EXPECT_FALSE(out.result.proof_bundle.empty());
}

TEST(Tally, EmptyElection) {
  Harness h(small_config(), 0, 2);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  const auto collected = e.close();
  EXPECT_TRUE(collected.empty());
  const TallyOutcome out = e.tally(collected, h.shares, h.chain);
  EXPECT_EQ(out.result.counts, (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_EQ(out.result.invalid_count, 0u);
  EXPECT_EQ(e.aggregate(out.mixed, h.shares), (std::vector<std::uint64_t>{0, 0, 0}));
}

TEST(Tally, SeededVotesMatchGroundTruth) {
  Harness h(small_config(), 100, 3);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  std::array<std::uint64_t, 3> truth{};
  for (int i = 0; i < 100; ++i) {
    const auto c = h.rng.below_u64(3);
    ++truth[c];
    ASSERT_TRUE(e.cast(h.vote("v" + std::to_string(i), c, i), i).accepted);
  }
  const auto collected = e.close();
  const TallyOutcome out = e.tally(collected, h.shares, h.chain);
  EXPECT_EQ(out.result.counts, std::vector<std::uint64_t>(truth.begin(), truth.end()));
  EXPECT_EQ(e.aggregate(out.mixed, h.shares), out.result.counts);
  const auto sum = std::accumulate(out.result.counts.begin(), out.result.counts.end(), std::uint64_t{0});
  EXPECT_EQ(sum + out.result.invalid_count, out.mixed.size());
}

TEST(Tally, MalformedBypassCountedInvalidAndAggregateDiffers) {
  Harness h(small_config(), 3, 4);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  e.cast(h.vote("v0", 0, 1), 1);
  e.cast(h.vote("v1", 1, 1), 1);
  const SignedBallot bad = h.raw("v2", {0, 2, 0}, 1);
  EXPECT_FALSE(e.cast(bad, 1).accepted);
  auto collected = e.close();
  collected.push_back(bad);  // slipped past the ballot box
  const TallyOutcome out = e.tally(collected, h.shares, h.chain);
  EXPECT_EQ(out.result.counts, (std::vector<std::uint64_t>{1, 1, 0}));
  EXPECT_EQ(out.result.invalid_count, 1u);
  const auto agg = e.aggregate(out.mixed, h.shares);
  EXPECT_EQ(agg, (std::vector<std::uint64_t>{1, 3, 0}));
}

TEST(Tally, RevotesFilteredAndCounted) {
  ElectionConfig cfg = small_config();
  cfg.coercion_threshold = 0.2;
  Harness h(cfg, 4, 5);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  e.cast(h.vote("v0", 0, 1), 1);
  e.cast(h.vote("v1", 0, 2), 2);
  e.cast(h.vote("v0", 2, 3), 3);
  const auto collected = e.close();
  const TallyOutcome out = e.tally(collected, h.shares, h.chain);
  EXPECT_EQ(out.result.counts, (std::vector<std::uint64_t>{1, 0, 1}));
  EXPECT_EQ(out.result.revoked_count, 1u);
  EXPECT_EQ(out.result.kept_count, 2u);
  EXPECT_EQ(out.result.kept_count + out.result.revoked_count, collected.size());
  EXPECT_TRUE(out.result.coercion.flagged);  // 1/3 > 0.2
}

TEST(Tally, RevotingDisabledRejectsSecondBallot) {
  ElectionConfig cfg = small_config();
  cfg.revote_allowed = false;
  Harness h(cfg, 1, 6);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  EXPECT_TRUE(e.cast(h.vote("v0", 0, 1), 1).accepted);
  EXPECT_FALSE(e.cast(h.vote("v0", 1, 2), 2).accepted);
}

TEST(Tally, EveryTrusteeIsNecessary) {
  Harness h(small_config(), 2, 7);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  e.cast(h.vote("v0", 0, 1), 1);
  const auto collected = e.close();
  for (std::size_t drop = 0; drop < h.shares.size(); ++drop) {
    auto partial = h.shares;
    partial.erase(partial.begin() + static_cast<std::ptrdiff_t>(drop));
    BulletinBoard scratch;
    EXPECT_THROW(run_tally(h.config, h.group, h.key, collected, partial, h.chain, scratch), MissingShareError);
    EXPECT_TRUE(scratch.empty());
  }
}

TEST(Tally, CheatingMixServerAborts) {
  class Cheater : public MixServer {
   public:
    MixOutcome mix(const Group& g, const GroupElement& pk, const MixBatch& in, std::size_t rounds) override {
      Drbg rng(1, "cheat");
      MixOutcome out = mix_once(g, pk, in, rounds, rng);
      if (!out.output.empty()) {
        out.output.items[0][0].c2 = g.mul(out.output.items[0][0].c2, g.generator());
        out.proof = prove_shuffle(g, pk, in, out.output, out.state, rounds, rng);
      }
      return out;
    }
  };
  ElectionConfig cfg = small_config(3, 20);
  Harness h(cfg, 2, 8);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  e.cast(h.vote("v0", 0, 1), 1);
  e.cast(h.vote("v1", 1, 1), 1);
  const auto collected = e.close();
  Cheater cheat;
  std::vector<MixServer*> chain{h.chain[0], &cheat};
  EXPECT_THROW(e.tally(collected, h.shares, chain), MixRejected);
}

TEST(Lifecycle, Gates) {
  Harness h(small_config(), 2, 9);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  EXPECT_THROW(e.tally({}, h.shares, h.chain), FairnessViolation);
  EXPECT_THROW(e.aggregate(MixBatch{}, h.shares), FairnessViolation);
  e.close();
  EXPECT_THROW(e.close(), AlreadyClosed);
  EXPECT_THROW(e.cast(h.vote("v0", 0, 1), 1), ElectionClosed);
}

TEST(Lifecycle, RejectedCastsAreLoggedNotStored) {
  Harness h(small_config(), 1, 10);
  Election e(h.config, h.group, h.key, h.registry, h.board);
  SignedBallot sb = h.vote("v0", 0, 1);
  sb.encrypted.slots[0].c2 = h.group.mul(sb.encrypted.slots[0].c2, h.group.generator());
  const CastOutcome out = e.cast(sb, 1);
  EXPECT_FALSE(out.accepted);
  EXPECT_FALSE(out.receipt.has_value());
  ASSERT_EQ(h.board.size(), 1u);
  EXPECT_EQ(h.board.entries()[0].kind, EntryKind::Login);
  EXPECT_FALSE(decode_login(h.board.entries()[0].payload).accepted);
  EXPECT_TRUE(e.close().empty());
}

TEST(Records, RoundTrip) {
  ResultRecord r;
  r.counts = {1, 2, 3};
  r.invalid_count = 4;
  r.revoked_count = 5;
  r.kept_count = 6;
  r.coercion_threshold = format_threshold(0.05);
  r.coercion_flagged = true;
  r.final_batch_digest[3] = 9;
  const ResultRecord back = decode_result(encode_record(r));
  EXPECT_EQ(back.counts, r.counts);
  EXPECT_EQ(back.coercion_threshold, "0.05");
  EXPECT_EQ(back.final_batch_digest, r.final_batch_digest);

  Bytes payload = encode_record(TransferRecord{"a->b", 3, {}});
  EXPECT_EQ(decode_transfer(payload).route, "a->b");
  payload.push_back(0);
  EXPECT_THROW(decode_transfer(payload), FormatError);
}
