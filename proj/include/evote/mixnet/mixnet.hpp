#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "evote/ballot/ballot.hpp"
#include "evote/group/elgamal.hpp"

namespace evote {

inline constexpr std::size_t kDefaultProofRounds = 20;

// One ciphertext per candidate.
using SlotTuple = std::vector<Ciphertext>;

struct MixBatch {
  std::vector<SlotTuple> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  // Width shared by all items, 0 for an empty batch. Throws InvalidArgument
  // if items differ in width.
  std::size_t width() const;
  Digest digest() const;

  friend bool operator==(const MixBatch&, const MixBatch&) = default;
};

// Drops identity, timestamp and signature; keeps bulletin order.
MixBatch strip_signatures(std::span<const SignedBallot> ballots);

// Secret witness of one mix server: output[j] = reencrypt(input[permutation[j]],
// randomness[j]) slotwise.
struct MixServerState {
  std::vector<std::uint32_t> permutation;
  std::vector<std::vector<Scalar>> randomness;
};

// One opened link of a hidden middle-layer item. An In opening shows
// mid[i] = reencrypt(input[index], randomness); an Out opening shows
// output[index] = reencrypt(mid[i], randomness).
struct LinkOpening {
  enum class Side : std::uint8_t { In = 0, Out = 1 };
  Side side = Side::In;
  std::uint32_t index = 0;
  std::vector<Scalar> randomness;

  friend bool operator==(const LinkOpening&, const LinkOpening&) = default;
};

// Each round routes input -> mid -> output through its own freshly shuffled
// middle layer and opens exactly one side of every middle item.
struct ShuffleRound {
  std::vector<SlotTuple> mid;
  std::vector<LinkOpening> openings;  // openings[i] belongs to mid[i]

  friend bool operator==(const ShuffleRound&, const ShuffleRound&) = default;
};

struct ShuffleProof {
  Digest mid_commit{};  // digest over every round's middle layer
  std::vector<ShuffleRound> rounds;

  friend bool operator==(const ShuffleProof&, const ShuffleProof&) = default;
};

struct MixOutcome {
  MixBatch output;
  ShuffleProof proof;
  MixServerState state;
};

// Shuffle and re-encrypt with fresh nonzero randomness per slot, then prove
// it with `rounds` challenge rounds (rounds >= 1).
MixOutcome mix_once(const Group& group, const GroupElement& pk, const MixBatch& input, std::size_t rounds,
                    RandomSource& rng);

// Proof generation from an explicit witness. A witness that does not match
// (input, output) produces a proof that is rejected with probability
// 1 - 2^-rounds per broken link.
ShuffleProof prove_shuffle(const Group& group, const GroupElement& pk, const MixBatch& input, const MixBatch& output,
                           const MixServerState& state, std::size_t rounds, RandomSource& rng);

// Public check. required_rounds = 0 accepts any positive round count.
bool verify_mix(const Group& group, const GroupElement& pk, const MixBatch& input, const MixBatch& output,
                const ShuffleProof& proof, std::size_t required_rounds = 0);

// A mix server in the chain. Tests subclass this to model cheating servers.
class MixServer {
 public:
  virtual ~MixServer() = default;
  virtual MixOutcome mix(const Group& group, const GroupElement& pk, const MixBatch& input, std::size_t rounds) = 0;
};

class HonestMixServer final : public MixServer {
 public:
  explicit HonestMixServer(Drbg rng) : rng_(std::move(rng)) {}
  MixOutcome mix(const Group& group, const GroupElement& pk, const MixBatch& input, std::size_t rounds) override;

 private:
  Drbg rng_;
};

struct MixStage {
  MixBatch input;
  MixBatch output;
  ShuffleProof proof;
};

struct MixnetRun {
  MixBatch final_batch;
  std::vector<MixStage> stages;
};

// Servers run in order, each consuming its predecessor's output. Stage
// proofs are not checked here; callers decide how to react to a bad stage.
MixnetRun run_mixnet(const Group& group, const GroupElement& pk, std::span<MixServer* const> servers,
                     const MixBatch& batch, std::size_t rounds);

void encode(Encoder& enc, const MixBatch& batch);
void encode(Encoder& enc, const ShuffleProof& proof);
MixBatch decode_mix_batch(Decoder& dec, const Group& group);
ShuffleProof decode_shuffle_proof(Decoder& dec, const Group& group);

Bytes serialize(const ShuffleProof& proof);
ShuffleProof parse_shuffle_proof(std::span<const std::uint8_t> bytes, const Group& group);

}  // namespace evote
