#include "evote/group/threshold.hpp"

#include <string>

#include "evote/common/errors.hpp"

namespace evote {

std::pair<ElectionKey, std::vector<TrusteeKeyShare>> threshold_keygen(const Group& group, std::size_t n,
                                                                      RandomSource& rng) {
  if (n == 0) throw InvalidArgument("threshold key generation needs at least one trustee");
  std::vector<Scalar> secrets;
  secrets.reserve(n);
  Scalar sum{0};
  for (std::size_t i = 0; i < n; ++i) {
    secrets.push_back(group.random_nonzero_scalar(rng));
    sum = group.add(sum, secrets.back());
  }
  while (sgn(sum.value) == 0) {
    sum = group.sub(sum, secrets.back());
    secrets.back() = group.random_nonzero_scalar(rng);
    sum = group.add(sum, secrets.back());
  }
  return threshold_keygen_from_secrets(group, secrets);
}

std::pair<ElectionKey, std::vector<TrusteeKeyShare>> threshold_keygen_from_secrets(const Group& group,
                                                                                   std::span<const Scalar> secrets) {
  if (secrets.empty()) throw InvalidArgument("threshold key generation needs at least one trustee");
  ElectionKey key{group.identity(), {}};
  std::vector<TrusteeKeyShare> shares;
  shares.reserve(secrets.size());
  for (std::size_t i = 0; i < secrets.size(); ++i) {
    if (sgn(secrets[i].value) <= 0 || secrets[i].value >= group.q()) {
      throw InvalidArgument("trustee share outside [1, q-1]");
    }
    GroupElement h_i = group.g_pow(secrets[i]);
    shares.push_back({static_cast<std::uint32_t>(i + 1), secrets[i], h_i});
    key.commitments.push_back(h_i);
    key.h = group.mul(key.h, h_i);
  }
  return {std::move(key), std::move(shares)};
}

bool is_consistent(const Group& group, const ElectionKey& key) {
  if (key.commitments.empty() || !group.contains(key.h)) return false;
  GroupElement acc = group.identity();
  for (const auto& h_i : key.commitments) {
    if (!group.contains(h_i)) return false;
    acc = group.mul(acc, h_i);
  }
  return acc == key.h;
}

PartialDecryption partial_decrypt(const Group& group, const TrusteeKeyShare& share, const Ciphertext& ct) {
  GroupElement d = group.pow(ct.c1, share.secret);
  return {share.index, d, zkp::prove_correct_decryption(group, share.secret, ct, d)};
}

bool verify_partial(const Group& group, const ElectionKey& key, const Ciphertext& ct, const PartialDecryption& pd) {
  if (pd.index == 0 || pd.index > key.trustee_count()) return false;
  return zkp::verify_correct_decryption(group, key.commitments[pd.index - 1], ct, pd.share, pd.proof);
}

GroupElement threshold_unblind(const Group& group, const ElectionKey& key, const Ciphertext& ct,
                               std::span<const PartialDecryption> partials) {
  const std::size_t n = key.trustee_count();
  std::vector<const PartialDecryption*> by_index(n + 1, nullptr);
  for (const auto& pd : partials) {
    if (pd.index == 0 || pd.index > n) {
      throw MissingShareError("partial decryption from unknown trustee " + std::to_string(pd.index));
    }
    if (by_index[pd.index] != nullptr) {
      throw DuplicateShareError("two partial decryptions from trustee " + std::to_string(pd.index));
    }
    by_index[pd.index] = &pd;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    if (by_index[i] == nullptr) {
      throw MissingShareError("no partial decryption from trustee " + std::to_string(i));
    }
  }
  GroupElement blinding = group.identity();
  for (std::size_t i = 1; i <= n; ++i) {
    if (!verify_partial(group, key, ct, *by_index[i])) {
      throw InvalidPartialProof("proof of correct decryption rejected for trustee " + std::to_string(i));
    }
    blinding = group.mul(blinding, by_index[i]->share);
  }
  return group.div(ct.c2, blinding);
}

std::uint64_t threshold_decrypt(const Group& group, const ElectionKey& key, const Ciphertext& ct,
                                std::span<const PartialDecryption> partials, std::uint64_t decode_bound) {
  return decode_exponent(group, threshold_unblind(group, key, ct, partials), decode_bound);
}

void encode(Encoder& enc, const PartialDecryption& pd) {
  enc.put_uint(pd.index);
  put_element(enc, pd.share);
  zkp::encode(enc, pd.proof);
}

PartialDecryption decode_partial(Decoder& dec, const Group& group) {
  PartialDecryption pd;
  std::uint64_t index = dec.get_uint();
  if (index > 0xffffffffu) throw FormatError("trustee index out of range");
  pd.index = static_cast<std::uint32_t>(index);
  pd.share = get_element(dec, group);
  pd.proof = zkp::decode_decryption_proof(dec, group);
  return pd;
}

}  // namespace evote
