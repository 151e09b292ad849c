#include "evote/mixnet/mixnet.hpp"

#include <numeric>
#include <set>

#include "evote/common/errors.hpp"
#include "evote/zkp/transcript.hpp"

namespace evote {

namespace {

constexpr const char* kBatchTag = "evote/mix/batch/v1";
constexpr const char* kMidTag = "evote/mix/mid-layers/v1";
constexpr const char* kChallengeTag = "evote/mix/challenge/v1";

void encode_items(Encoder& enc, std::span<const SlotTuple> items) {
  enc.put_uint(items.size());
  for (const auto& tuple : items) {
    enc.put_uint(tuple.size());
    for (const auto& ct : tuple) put_ciphertext(enc, ct);
  }
}

std::vector<SlotTuple> decode_items(Decoder& dec, const Group& group) {
  std::uint64_t n = dec.get_uint();
  if (n > (1u << 24)) throw FormatError("implausible batch size");
  std::vector<SlotTuple> items;
  items.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t w = dec.get_uint();
    if (w > (1u << 16)) throw FormatError("implausible tuple width");
    SlotTuple tuple;
    tuple.reserve(w);
    for (std::uint64_t k = 0; k < w; ++k) tuple.push_back(get_ciphertext(dec, group));
    items.push_back(std::move(tuple));
  }
  return items;
}

SlotTuple reencrypt_tuple(const Group& group, const GroupElement& pk, const SlotTuple& tuple,
                          std::span<const Scalar> r) {
  SlotTuple out;
  out.reserve(tuple.size());
  for (std::size_t k = 0; k < tuple.size(); ++k) out.push_back(reencrypt(group, pk, tuple[k], r[k]));
  return out;
}

std::vector<std::uint32_t> random_permutation(std::size_t n, RandomSource& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = rng.below_u64(i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

Digest mid_commitment(const std::vector<ShuffleRound>& rounds) {
  Encoder enc;
  enc.put_string(kMidTag).put_uint(rounds.size());
  for (const auto& r : rounds) encode_items(enc, r.mid);
  return sha256(enc);
}

// One bit per (round, middle item): 0 opens the In side, 1 the Out side.
std::vector<std::vector<std::uint8_t>> challenge_bits(const Group& group, const GroupElement& pk,
                                                      const MixBatch& input, const MixBatch& output,
                                                      const Digest& mid_commit, std::size_t rounds) {
  zkp::Transcript t(kChallengeTag);
  t.append_group(group).append_element(pk);
  t.append(input.digest()).append(mid_commit).append(output.digest()).append_uint(rounds);
  Digest seed = t.digest();
  Drbg bits(seed, kChallengeTag);
  std::vector<std::vector<std::uint8_t>> out(rounds, std::vector<std::uint8_t>(input.size()));
  for (auto& round : out) {
    for (auto& b : round) b = static_cast<std::uint8_t>(bits.below_u64(2));
  }
  return out;
}

}  // namespace

std::size_t MixBatch::width() const {
  if (items.empty()) return 0;
  std::size_t w = items.front().size();
  for (const auto& t : items) {
    if (t.size() != w) throw InvalidArgument("mix batch items differ in width");
  }
  return w;
}

Digest MixBatch::digest() const {
  Encoder enc;
  enc.put_string(kBatchTag);
  encode_items(enc, items);
  return sha256(enc);
}

MixBatch strip_signatures(std::span<const SignedBallot> ballots) {
  MixBatch batch;
  batch.items.reserve(ballots.size());
  for (const auto& b : ballots) batch.items.push_back(b.encrypted.slots);
  batch.width();
  return batch;
}

ShuffleProof prove_shuffle(const Group& group, const GroupElement& pk, const MixBatch& input, const MixBatch& output,
                           const MixServerState& state, std::size_t rounds, RandomSource& rng) {
  if (rounds == 0) throw InvalidArgument("shuffle proof needs at least one round");
  const std::size_t n = input.size();
  const std::size_t width = input.width();
  if (output.size() != n || state.permutation.size() != n || state.randomness.size() != n) {
    throw InvalidArgument("mix witness does not match the batch size");
  }
  std::vector<std::uint32_t> output_of(n);  // input index -> output index
  for (std::size_t j = 0; j < n; ++j) output_of[state.permutation[j]] = static_cast<std::uint32_t>(j);

  ShuffleProof proof;
  proof.rounds.resize(rounds);
  // Per round: which input feeds mid[i] and with what randomness.
  std::vector<std::vector<std::uint32_t>> sources(rounds);
  std::vector<std::vector<std::vector<Scalar>>> mid_randomness(rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    sources[r] = random_permutation(n, rng);
    mid_randomness[r].resize(n);
    auto& mid = proof.rounds[r].mid;
    mid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = mid_randomness[r][i];
      for (std::size_t k = 0; k < width; ++k) s.push_back(group.random_nonzero_scalar(rng));
      mid.push_back(reencrypt_tuple(group, pk, input.items[sources[r][i]], s));
    }
  }
  proof.mid_commit = mid_commitment(proof.rounds);

  auto bits = challenge_bits(group, pk, input, output, proof.mid_commit, rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    auto& openings = proof.rounds[r].openings;
    openings.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      LinkOpening open;
      if (bits[r][i] == 0) {
        open.side = LinkOpening::Side::In;
        open.index = sources[r][i];
        open.randomness = mid_randomness[r][i];
      } else {
        open.side = LinkOpening::Side::Out;
        std::uint32_t j = output_of[sources[r][i]];
        open.index = j;
        for (std::size_t k = 0; k < width; ++k) {
          open.randomness.push_back(group.sub(state.randomness[j][k], mid_randomness[r][i][k]));
        }
      }
      openings.push_back(std::move(open));
    }
  }
  return proof;
}

MixOutcome mix_once(const Group& group, const GroupElement& pk, const MixBatch& input, std::size_t rounds,
                    RandomSource& rng) {
  if (rounds == 0) throw InvalidArgument("shuffle proof needs at least one round");
  const std::size_t n = input.size();
  const std::size_t width = input.width();
  MixOutcome out;
  out.state.permutation = random_permutation(n, rng);
  out.state.randomness.resize(n);
  out.output.items.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& t = out.state.randomness[j];
    for (std::size_t k = 0; k < width; ++k) t.push_back(group.random_nonzero_scalar(rng));
    out.output.items.push_back(reencrypt_tuple(group, pk, input.items[out.state.permutation[j]], t));
  }
  out.proof = prove_shuffle(group, pk, input, out.output, out.state, rounds, rng);
  return out;
}

bool verify_mix(const Group& group, const GroupElement& pk, const MixBatch& input, const MixBatch& output,
                const ShuffleProof& proof, std::size_t required_rounds) {
  const std::size_t n = input.size();
  if (output.size() != n) return false;
  std::size_t width = 0;
  try {
    width = input.width();
    if (n > 0 && output.width() != width) return false;
  } catch (const InvalidArgument&) {
    return false;
  }
  const std::size_t rounds = proof.rounds.size();
  if (rounds == 0 || rounds < required_rounds) return false;
  for (const auto& round : proof.rounds) {
    if (round.mid.size() != n || round.openings.size() != n) return false;
    for (const auto& t : round.mid) {
      if (t.size() != width) return false;
    }
  }
  if (mid_commitment(proof.rounds) != proof.mid_commit) return false;

  auto bits = challenge_bits(group, pk, input, output, proof.mid_commit, rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto& round = proof.rounds[r];
    std::vector<bool> in_used(n, false), out_used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& open = round.openings[i];
      const bool out_side = open.side == LinkOpening::Side::Out;
      if (static_cast<std::uint8_t>(out_side) != bits[r][i]) return false;
      if (open.index >= n || open.randomness.size() != width) return false;
      for (const auto& s : open.randomness) {
        if (sgn(s.value) < 0 || s.value >= group.q()) return false;
      }
      auto& used = out_side ? out_used : in_used;
      if (used[open.index]) return false;
      used[open.index] = true;
      if (out_side) {
        if (reencrypt_tuple(group, pk, round.mid[i], open.randomness) != output.items[open.index]) return false;
      } else {
        if (reencrypt_tuple(group, pk, input.items[open.index], open.randomness) != round.mid[i]) return false;
      }
    }
  }
  return true;
}

MixOutcome HonestMixServer::mix(const Group& group, const GroupElement& pk, const MixBatch& input,
                                std::size_t rounds) {
  return mix_once(group, pk, input, rounds, rng_);
}

MixnetRun run_mixnet(const Group& group, const GroupElement& pk, std::span<MixServer* const> servers,
                     const MixBatch& batch, std::size_t rounds) {
  if (servers.empty()) throw InvalidArgument("mixnet needs at least one server");
  MixnetRun run;
  MixBatch current = batch;
  for (auto* server : servers) {
    MixOutcome outcome = server->mix(group, pk, current, rounds);
    run.stages.push_back({current, outcome.output, std::move(outcome.proof)});
    current = std::move(outcome.output);
  }
  run.final_batch = std::move(current);
  return run;
}

void encode(Encoder& enc, const MixBatch& batch) { encode_items(enc, batch.items); }

void encode(Encoder& enc, const ShuffleProof& proof) {
  put_digest(enc, proof.mid_commit);
  enc.put_uint(proof.rounds.size());
  for (const auto& round : proof.rounds) {
    encode_items(enc, round.mid);
    enc.put_uint(round.openings.size());
    for (const auto& open : round.openings) {
      enc.put_uint(static_cast<std::uint64_t>(open.side)).put_uint(open.index).put_uint(open.randomness.size());
      for (const auto& s : open.randomness) put_scalar(enc, s);
    }
  }
}

MixBatch decode_mix_batch(Decoder& dec, const Group& group) { return {decode_items(dec, group)}; }

ShuffleProof decode_shuffle_proof(Decoder& dec, const Group& group) {
  ShuffleProof proof;
  proof.mid_commit = get_digest(dec);
  std::uint64_t rounds = dec.get_uint();
  if (rounds > 4096) throw FormatError("implausible round count");
  proof.rounds.resize(rounds);
  for (auto& round : proof.rounds) {
    round.mid = decode_items(dec, group);
    std::uint64_t n = dec.get_uint();
    if (n > (1u << 24)) throw FormatError("implausible opening count");
    round.openings.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      LinkOpening open;
      std::uint64_t side = dec.get_uint();
      if (side > 1) throw FormatError("invalid link side");
      open.side = static_cast<LinkOpening::Side>(side);
      std::uint64_t index = dec.get_uint();
      if (index > 0xffffffffu) throw FormatError("link index out of range");
      open.index = static_cast<std::uint32_t>(index);
      std::uint64_t w = dec.get_uint();
      if (w > (1u << 16)) throw FormatError("implausible tuple width");
      for (std::uint64_t k = 0; k < w; ++k) open.randomness.push_back(get_scalar(dec, group));
      round.openings.push_back(std::move(open));
    }
  }
  return proof;
}

Bytes serialize(const ShuffleProof& proof) {
  Encoder enc;
  encode(enc, proof);
  return enc.take();
}

ShuffleProof parse_shuffle_proof(std::span<const std::uint8_t> bytes, const Group& group) {
  Decoder dec(bytes);
  auto p = decode_shuffle_proof(dec, group);
  dec.expect_done();
  return p;
}

}  // namespace evote
