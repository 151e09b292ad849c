#include "evote/zkp/proofs.hpp"

#include "evote/common/errors.hpp"

namespace evote::zkp {

namespace {

constexpr const char* kDecryptionTag = "evote/zkp/correct-decryption/v1";
constexpr const char* kBitTag = "evote/zkp/slot-bit/v1";
constexpr const char* kSumTag = "evote/zkp/ballot-sum/v1";
constexpr const char* kWellformedNonceTag = "evote/zkp/wellformed-nonce/v1";

Transcript& append_ciphertext(Transcript& t, const Ciphertext& ct) {
  Encoder enc;
  put_ciphertext(enc, ct);
  return t.append(enc);
}

// Proves log_{base_a}(value_a) = log_{base_b}(value_b) = witness. The
// statement transcript must already hold everything the proof is about.
DecryptionProof prove_dleq(const Group& group, Transcript statement, const GroupElement& base_a,
                           const GroupElement& base_b, const Scalar& witness, RandomSource& nonces) {
  Scalar w = group.random_nonzero_scalar(nonces);
  DecryptionProof proof;
  proof.commit_g = group.pow(base_a, w);
  proof.commit_c1 = group.pow(base_b, w);
  statement.append_element(proof.commit_g).append_element(proof.commit_c1);
  proof.challenge = fiat_shamir(group, statement);
  proof.response = group.add(w, group.mul(proof.challenge, witness));
  return proof;
}

bool verify_dleq(const Group& group, Transcript statement, const GroupElement& base_a, const GroupElement& base_b,
                 const GroupElement& value_a, const GroupElement& value_b, const DecryptionProof& proof) {
  if (!group.contains(proof.commit_g) || !group.contains(proof.commit_c1)) return false;
  if (proof.challenge.value >= group.q() || proof.response.value >= group.q()) return false;
  statement.append_element(proof.commit_g).append_element(proof.commit_c1);
  if (fiat_shamir(group, statement) != proof.challenge) return false;
  if (group.pow(base_a, proof.response) != group.mul(proof.commit_g, group.pow(value_a, proof.challenge))) {
    return false;
  }
  return group.pow(base_b, proof.response) == group.mul(proof.commit_c1, group.pow(value_b, proof.challenge));
}

Transcript decryption_statement(const Group& group, const GroupElement& pk_component, const Ciphertext& ct,
                                const GroupElement& d) {
  Transcript t(kDecryptionTag);
  t.append_group(group).append_element(pk_component);
  append_ciphertext(t, ct);
  t.append_element(d);
  return t;
}

Transcript bit_statement(const Group& group, const GroupElement& pk, std::size_t index, const Ciphertext& slot) {
  Transcript t(kBitTag);
  t.append_group(group).append_element(pk).append_uint(index);
  append_ciphertext(t, slot);
  return t;
}

Transcript sum_statement(const Group& group, const GroupElement& pk, std::span<const Ciphertext> slots,
                         const Ciphertext& product) {
  Transcript t(kSumTag);
  t.append_group(group).append_element(pk).append_uint(slots.size());
  for (const auto& s : slots) append_ciphertext(t, s);
  append_ciphertext(t, product);
  return t;
}

// c2 / g^k: the value whose discrete log to base pk equals log_g(c1) when the
// slot encrypts k.
GroupElement shifted(const Group& group, const Ciphertext& ct, int k) {
  return k == 0 ? ct.c2 : group.div(ct.c2, group.generator());
}

BitProof prove_bit(const Group& group, const GroupElement& pk, std::size_t index, const Ciphertext& slot,
                   const Scalar& r, std::uint64_t bit, RandomSource& nonces) {
  BitProof p;
  Transcript t = bit_statement(group, pk, index, slot);
  // Simulate branch k with a chosen challenge/response pair.
  auto simulate = [&](int k, Scalar& e, Scalar& z, GroupElement& a, GroupElement& b) {
    e = group.random_scalar(nonces);
    z = group.random_scalar(nonces);
    a = group.div(group.g_pow(z), group.pow(slot.c1, e));
    b = group.div(group.pow(pk, z), group.pow(shifted(group, slot, k), e));
  };

  if (bit > 1) {
    // No witness for either branch; both are simulated and the challenge
    // split cannot match.
    simulate(0, p.e0, p.z0, p.a0, p.b0);
    simulate(1, p.e1, p.z1, p.a1, p.b1);
    return p;
  }

  const int real = static_cast<int>(bit);
  Scalar w = group.random_nonzero_scalar(nonces);
  GroupElement a_real = group.g_pow(w);
  GroupElement b_real = group.pow(pk, w);
  Scalar e_fake, z_fake;
  GroupElement a_fake, b_fake;
  simulate(1 - real, e_fake, z_fake, a_fake, b_fake);

  if (real == 0) {
    p.a0 = a_real, p.b0 = b_real, p.a1 = a_fake, p.b1 = b_fake;
  } else {
    p.a0 = a_fake, p.b0 = b_fake, p.a1 = a_real, p.b1 = b_real;
  }
  t.append_element(p.a0).append_element(p.b0).append_element(p.a1).append_element(p.b1);
  Scalar e = fiat_shamir(group, t);
  Scalar e_real = group.sub(e, e_fake);
  Scalar z_real = group.add(w, group.mul(e_real, r));
  if (real == 0) {
    p.e0 = e_real, p.z0 = z_real, p.e1 = e_fake, p.z1 = z_fake;
  } else {
    p.e0 = e_fake, p.z0 = z_fake, p.e1 = e_real, p.z1 = z_real;
  }
  return p;
}

bool verify_bit(const Group& group, const GroupElement& pk, std::size_t index, const Ciphertext& slot,
                const BitProof& p) {
  for (const auto* x : {&p.a0, &p.b0, &p.a1, &p.b1}) {
    if (!group.contains(*x)) return false;
  }
  for (const auto* s : {&p.e0, &p.e1, &p.z0, &p.z1}) {
    if (s->value >= group.q()) return false;
  }
  Transcript t = bit_statement(group, pk, index, slot);
  t.append_element(p.a0).append_element(p.b0).append_element(p.a1).append_element(p.b1);
  if (group.add(p.e0, p.e1) != fiat_shamir(group, t)) return false;
  auto branch_ok = [&](int k, const Scalar& e, const Scalar& z, const GroupElement& a, const GroupElement& b) {
    return group.g_pow(z) == group.mul(a, group.pow(slot.c1, e)) &&
           group.pow(pk, z) == group.mul(b, group.pow(shifted(group, slot, k), e));
  };
  return branch_ok(0, p.e0, p.z0, p.a0, p.b0) && branch_ok(1, p.e1, p.z1, p.a1, p.b1);
}

void encode_bit(Encoder& enc, const BitProof& p) {
  for (const auto* x : {&p.a0, &p.b0, &p.a1, &p.b1}) put_element(enc, *x);
  for (const auto* s : {&p.e0, &p.e1, &p.z0, &p.z1}) put_scalar(enc, *s);
}

BitProof decode_bit(Decoder& dec, const Group& group) {
  BitProof p;
  for (auto* x : {&p.a0, &p.b0, &p.a1, &p.b1}) *x = get_element(dec, group);
  for (auto* s : {&p.e0, &p.e1, &p.z0, &p.z1}) *s = get_scalar(dec, group);
  return p;
}

}  // namespace

DecryptionProof prove_correct_decryption(const Group& group, const Scalar& x, const Ciphertext& ct,
                                         const GroupElement& d) {
  GroupElement pk_component = group.g_pow(x);
  Transcript statement = decryption_statement(group, pk_component, ct, d);
  Drbg nonces = nonce_source(kDecryptionTag, x, statement.serialize());
  return prove_dleq(group, std::move(statement), group.generator(), ct.c1, x, nonces);
}

bool verify_correct_decryption(const Group& group, const GroupElement& pk_component, const Ciphertext& ct,
                               const GroupElement& d, const DecryptionProof& proof) {
  if (!group.contains(pk_component) || !contains(group, ct) || !group.contains(d)) return false;
  return verify_dleq(group, decryption_statement(group, pk_component, ct, d), group.generator(), ct.c1,
                     pk_component, d, proof);
}

WellformedProof prove_wellformed(const Group& group, const GroupElement& pk, std::span<const Ciphertext> slots,
                                 std::span<const Scalar> randomness, std::size_t choice_index) {
  if (choice_index >= slots.size()) throw IndexOutOfRange("choice index outside the ballot");
  std::vector<std::uint64_t> bits(slots.size(), 0);
  bits[choice_index] = 1;
  return prove_wellformed_bits(group, pk, slots, randomness, bits);
}

WellformedProof prove_wellformed_bits(const Group& group, const GroupElement& pk, std::span<const Ciphertext> slots,
                                      std::span<const Scalar> randomness, std::span<const std::uint64_t> bits) {
  if (slots.size() != randomness.size() || slots.size() != bits.size()) {
    throw InvalidArgument("slot, randomness and bit counts differ");
  }
  Encoder seed;
  group.encode(seed);
  put_element(seed, pk);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    put_ciphertext(seed, slots[i]);
    put_scalar(seed, randomness[i]);
  }
  Drbg nonces(seed.bytes(), kWellformedNonceTag);

  WellformedProof proof;
  proof.slots.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    proof.slots.push_back(prove_bit(group, pk, i, slots[i], randomness[i], bits[i], nonces));
  }
  Ciphertext product = combine_all(group, slots);
  Scalar total{0};
  for (const auto& r : randomness) total = group.add(total, r);
  proof.sum_proof = prove_dleq(group, sum_statement(group, pk, slots, product), group.generator(), pk, total, nonces);
  return proof;
}

bool verify_wellformed(const Group& group, const GroupElement& pk, std::span<const Ciphertext> slots,
                       const WellformedProof& proof) {
  if (slots.empty() || proof.slots.size() != slots.size()) return false;
  if (!group.contains(pk)) return false;
  for (const auto& s : slots) {
    if (!contains(group, s)) return false;
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!verify_bit(group, pk, i, slots[i], proof.slots[i])) return false;
  }
  Ciphertext product = combine_all(group, slots);
  GroupElement c2_minus_one = group.div(product.c2, group.generator());
  return verify_dleq(group, sum_statement(group, pk, slots, product), group.generator(), pk, product.c1,
                     c2_minus_one, proof.sum_proof);
}

void encode(Encoder& enc, const DecryptionProof& proof) {
  put_element(enc, proof.commit_g);
  put_element(enc, proof.commit_c1);
  put_scalar(enc, proof.challenge);
  put_scalar(enc, proof.response);
}

void encode(Encoder& enc, const WellformedProof& proof) {
  enc.put_uint(proof.slots.size());
  for (const auto& p : proof.slots) encode_bit(enc, p);
  encode(enc, proof.sum_proof);
}

DecryptionProof decode_decryption_proof(Decoder& dec, const Group& group) {
  DecryptionProof p;
  p.commit_g = get_element(dec, group);
  p.commit_c1 = get_element(dec, group);
  p.challenge = get_scalar(dec, group);
  p.response = get_scalar(dec, group);
  return p;
}

WellformedProof decode_wellformed_proof(Decoder& dec, const Group& group) {
  WellformedProof proof;
  std::uint64_t n = dec.get_uint();
  if (n > (1u << 16)) throw FormatError("implausible slot count");
  proof.slots.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) proof.slots.push_back(decode_bit(dec, group));
  proof.sum_proof = decode_decryption_proof(dec, group);
  return proof;
}

Bytes serialize(const DecryptionProof& proof) {
  Encoder enc;
  encode(enc, proof);
  return enc.take();
}

Bytes serialize(const WellformedProof& proof) {
  Encoder enc;
  encode(enc, proof);
  return enc.take();
}

DecryptionProof parse_decryption_proof(std::span<const std::uint8_t> bytes, const Group& group) {
  Decoder dec(bytes);
  auto p = decode_decryption_proof(dec, group);
  dec.expect_done();
  return p;
}

WellformedProof parse_wellformed_proof(std::span<const std::uint8_t> bytes, const Group& group) {
  Decoder dec(bytes);
  auto p = decode_wellformed_proof(dec, group);
  dec.expect_done();
  return p;
}

}  // namespace evote::zkp
